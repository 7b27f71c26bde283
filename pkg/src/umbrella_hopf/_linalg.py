"""Exact sparse Gaussian elimination over the rationals.

Vectors are dicts ``key -> Fraction`` with arbitrary hashable keys (words,
tuples of words, matrix positions), which is the shape every solve in this
package naturally has.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

Vec = Dict[Hashable, Fraction]


def _axpy(acc: Vec, vec: Vec, a: Fraction) -> None:
    for k, c in vec.items():
        v = acc.get(k, 0) + a * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


class Echelon:
    """Incrementally built echelon basis of a subspace.

    Each stored row has a pivot key with coefficient 1 that is absent from
    every row stored after it, so a single ordered sweep reduces a vector.
    """

    def __init__(self, track: bool = False):
        self.rows: List[Tuple[Hashable, Vec, Optional[Vec]]] = []
        self.track = track

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: Vec, combo: Optional[Vec] = None):
        v = dict(vec)
        for pivot, row, rcombo in self.rows:
            a = v.get(pivot)
            if a:
                _axpy(v, row, -a)
                if combo is not None:
                    _axpy(combo, rcombo, -a)
        return v

    def add(self, vec: Vec, combo: Optional[Vec] = None) -> bool:
        """Insert ``vec``; return False (and leave the basis unchanged) if dependent."""
        v = self.reduce(vec, combo)
        if not v:
            return False
        pivot = next(iter(v))
        inv = 1 / v[pivot]
        row = {k: c * inv for k, c in v.items()}
        rcombo = {k: c * inv for k, c in combo.items()} if combo is not None else None
        self.rows.append((pivot, row, rcombo))
        return True

    def contains(self, vec: Vec) -> bool:
        return not self.reduce(vec)


def kernel(columns: Sequence[Vec]) -> List[Dict[int, Fraction]]:
    """Basis of ``{c : sum_i c_i columns[i] = 0}`` as sparse index maps."""
    ech = Echelon(track=True)
    out = []
    for i, col in enumerate(columns):
        combo: Vec = {i: Fraction(1)}
        rem = ech.reduce(col, combo)
        if rem:
            pivot = next(iter(rem))
            inv = 1 / rem[pivot]
            ech.rows.append((pivot, {k: c * inv for k, c in rem.items()},
                             {k: c * inv for k, c in combo.items()}))
        else:
            out.append(combo)
    return out


def rank(vectors: Sequence[Vec]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return len(ech)


def rref_basis(vectors: Sequence[Vec], order: Sequence[Hashable]) -> List[Vec]:
    """Reduced row echelon basis of the span, pivots chosen along ``order``."""
    pos = {k: n for n, k in enumerate(order)}
    rows: List[Vec] = []
    for v in vectors:
        v = {k: Fraction(c) for k, c in v.items() if c}
        for r in rows:
            p = min(r, key=pos.__getitem__)
            a = v.get(p)
            if a:
                _axpy(v, r, -a)
        if not v:
            continue
        p = min(v, key=pos.__getitem__)
        inv = 1 / v[p]
        v = {k: c * inv for k, c in v.items()}
        for r in rows:
            a = r.get(p)
            if a:
                _axpy(r, v, -a)
        rows.append(v)
    rows.sort(key=lambda r: pos[min(r, key=pos.__getitem__)])
    return rows


def solve_in_span(basis: Sequence[Vec], target: Vec) -> Optional[List[Fraction]]:
    """Coordinates of ``target`` in the (independent) ``basis``, or None."""
    ech = Echelon(track=True)
    for i, b in enumerate(basis):
        if not ech.add(b, {i: Fraction(1)}):
            raise ValueError("basis vectors are linearly dependent")
    combo: Vec = {}
    rem = ech.reduce(target, combo)
    if rem:
        return None
    # target - sum(-combo_i b_i) = 0
    return [-combo.get(i, Fraction(0)) for i in range(len(basis))]
