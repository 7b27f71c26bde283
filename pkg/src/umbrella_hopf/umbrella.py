"""Presentations and Hopf data of the umbrella algebras UM(A) and UM(r, 2s).

Generator order is ``x0 < x1 < ... < xr < X1 < ... < Xd < y1 < ... < yr``
with weights 1 on the ``x`` and ``X`` generators and 2 on the ``y``.  The
``X`` generators are the canonical basis of so(A) from :mod:`.liealg`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from .freealg import GeneratorSet, NCPoly
from .hopf import TensorPoly
from .liealg import (LieData, Matrix, as_matrix, block_matrix, inverse, is_antisymmetric,
                     mat_equal, matrix_to_json, so_basis)
from .rewrite import Presentation, ReductionSystem


@dataclass
class HopfData:
    """Coproduct, counit and antipode on the generators (ids as keys)."""

    delta: Dict[int, TensorPoly]
    counit: Dict[int, Fraction]
    antipode: Dict[int, NCPoly]

    @classmethod
    def primitive(cls, n: int) -> "HopfData":
        return cls({i: TensorPoly.primitive(i) for i in range(n)},
                   {i: Fraction(0) for i in range(n)},
                   {i: -NCPoly.word((i,)) for i in range(n)})


@dataclass
class UmbrellaSpec:
    r: int
    s: int
    A: Matrix
    lie: LieData
    names: List[str] = field(default_factory=list)

    @property
    def d(self) -> int:
        return self.lie.dim

    def x(self, i: int) -> int:
        return i

    def X(self, a: int) -> int:
        """Id of the Lie generator ``X_a`` (1-based ``a``)."""
        return self.r + a

    def y(self, i: int) -> int:
        return self.r + self.d + i


def roster(A) -> UmbrellaSpec:
    A = as_matrix(A) if not isinstance(A, np.ndarray) else A
    lie = so_basis(A)
    r = A.shape[0]
    roll = UmbrellaSpec(r, lie.rank_s, A, lie)
    roll.names = ([f"x{i}" for i in range(r + 1)] + [f"X{a}" for a in range(1, lie.dim + 1)]
                  + [f"y{i}" for i in range(1, r + 1)])
    return roll


def _generators(roll: UmbrellaSpec) -> GeneratorSet:
    return GeneratorSet.from_pairs(
        [(n, 2 if n.startswith("y") else 1) for n in roll.names])


def build_presentation(A, yy_coefficient=Fraction(1, 3)) -> Presentation:
    """Commutator-form presentation of UM(A).

    ``yy_coefficient`` is the factor in ``[y_i, y_j] = c A_ij x0^3``; anything
    other than 1/3 gives an algebra whose ideal is not a Hopf ideal.
    """
    roll = roster(A)
    A, lie, r = roll.A, roll.lie, roll.r
    c = Fraction(yy_coefficient)
    x0 = NCPoly.word((0,))
    f: Dict[Tuple[int, int], NCPoly] = {}
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            if A[i - 1, j - 1]:
                f[(i, j)] = x0.scale(A[i - 1, j - 1])
                f[(roll.y(i), roll.y(j))] = (x0 ** 3).scale(c * A[i - 1, j - 1])
    for a, M in enumerate(lie.basis, start=1):
        for i in range(1, r + 1):
            # [x_i, M] = sum_k M_ik x_k and [M, y_i] = -sum_k M_ik y_k
            f[(i, roll.X(a))] = NCPoly({(k,): M[i - 1, k - 1] for k in range(1, r + 1)})
            f[(roll.X(a), roll.y(i))] = NCPoly({(roll.y(k),): -M[i - 1, k - 1]
                                                for k in range(1, r + 1)})
    for a in range(lie.dim):
        for b in range(a + 1, lie.dim):
            f[(roll.X(a + 1), roll.X(b + 1))] = NCPoly(
                {(roll.X(e + 1),): v for e, v in enumerate(lie.structure_constants[(a, b)])})
    meta = {"family": "UM" if lie.block_form else "UM(A)", "r": r, "s": roll.s,
            "A": matrix_to_json(A)}
    if c != Fraction(1, 3):
        meta["yy_coefficient"] = str(c)
    return Presentation(_generators(roll), f, meta)


def build_umbrella(r: int, s: int, yy_coefficient=Fraction(1, 3)) -> Presentation:
    """UM(r, 2s): UM(B) for the block normal form ``B`` of rank ``2s``."""
    return build_presentation(block_matrix(r, s), yy_coefficient)


def build_hopf_data(A) -> HopfData:
    """x's and Lie generators primitive; ``Δ y_i = y_i⊗1 + 1⊗y_i + x0⊗x_i - x_i⊗x0``."""
    roll = roster(A)
    n = len(roll.names)
    data = HopfData.primitive(n)
    for i in range(1, roll.r + 1):
        yi = roll.y(i)
        data.delta[yi] = TensorPoly.primitive(yi) + TensorPoly(
            2, {(((0,), (i,))): 1, (((i,), (0,))): -1})
    return data


def umbrella_hopf_data(p: Presentation) -> HopfData:
    return build_hopf_data(as_matrix(p.meta["A"]))


def gkdim(r: int, s: int) -> int:
    """``(r - 2s) r + 2 s^2 + s + 2r + 1``."""
    if r < 0 or s < 0 or 2 * s > r:
        raise ValueError(f"need r >= 2s >= 0, got r={r}, s={s}")
    return (r - 2 * s) * r + 2 * s * s + s + 2 * r + 1


# -- congruence isomorphism -------------------------------------------------

@dataclass
class IsoReport:
    verified: bool
    failures: List[Tuple[str, NCPoly]]
    substitution: Dict[int, NCPoly]
    source: Presentation
    target: Presentation

    def to_dict(self) -> dict:
        src, tgt = self.source.generators, self.target.generators
        return {
            "verified": self.verified,
            "substitution": {src.names[i]: tgt.format(p) for i, p in self.substitution.items()},
            "failures": [{"relation": name, "residue": tgt.format(res)}
                         for name, res in self.failures],
        }


def substitute(f: NCPoly, images: Dict[int, NCPoly], R: ReductionSystem) -> NCPoly:
    """Image of ``f`` under the algebra map given on generators, reduced in ``R``."""
    out = NCPoly.zero()
    for word, c in f.terms.items():
        acc = NCPoly.one()
        for g in word:
            acc = R.multiply(acc, images[g])
        out = out + acc.scale(c)
    return out


def iso_map(A, A_target, P) -> Tuple[Dict[int, NCPoly], IsoReport]:
    """Substitution UM(A) -> UM(A_target) induced by ``P A P^T = A_target``.

    With ``Q = P^{-T}``: ``x0 -> x0'``, ``x_i -> sum_j Q_ji x_j'`` (same for
    ``y``) and ``M -> P M P^{-1}`` on so(A).  For orthogonal ``P`` this is the
    plain ``x_i -> sum_j P_ji x_j'``, ``M -> P M P^T``.  Every relation image is
    reduced in UM(A_target) rather than trusted.
    """
    A = as_matrix(A) if not isinstance(A, np.ndarray) else A
    A_target = as_matrix(A_target) if not isinstance(A_target, np.ndarray) else A_target
    P = as_matrix(P) if not isinstance(P, np.ndarray) else P
    if not (is_antisymmetric(A) and is_antisymmetric(A_target)):
        raise ValueError("both structure matrices must be antisymmetric")
    try:
        P_inv = inverse(P)
    except ValueError:
        raise ValueError("congruence precondition violated: P is singular") from None
    if not mat_equal(P @ A @ P.T, A_target):
        raise ValueError("congruence precondition violated: P A P^T != A_target")
    src_roll, tgt_roll = roster(A), roster(A_target)
    source, target = build_presentation(A), build_presentation(A_target)
    R = ReductionSystem(target)
    Q = P_inv.T
    r = src_roll.r
    images: Dict[int, NCPoly] = {0: NCPoly.word((0,))}
    for i in range(1, r + 1):
        images[src_roll.x(i)] = NCPoly({(tgt_roll.x(j),): Q[j - 1, i - 1] for j in range(1, r + 1)})
        images[src_roll.y(i)] = NCPoly({(tgt_roll.y(j),): Q[j - 1, i - 1] for j in range(1, r + 1)})
    for a, M in enumerate(src_roll.lie.basis, start=1):
        coords = tgt_roll.lie.coordinates(P @ M @ P_inv)
        images[src_roll.X(a)] = NCPoly({(tgt_roll.X(e),): v for e, v in enumerate(coords, start=1)})
    failures = []
    for pair, g in source.relations():
        res = substitute(g, images, R)
        if res:
            failures.append((source.pair_name(pair), res))
    return images, IsoReport(not failures, failures, images, source, target)


# -- a small independent fixture --------------------------------------------

def build_wzz_example(lam=0) -> Tuple[Presentation, HopfData]:
    """``[x,y] = y``, ``[z,y] = 0``, ``[z,x] = -z + λy`` with ``δz = x⊗y - y⊗x``.

    Ordered ``y < x < z`` with weights 1, 1, 2.
    """
    lam = Fraction(lam)
    gens = GeneratorSet.from_pairs([("y", 1), ("x", 1), ("z", 2)])
    y, x, z = 0, 1, 2
    f = {
        (y, x): NCPoly({(y,): -1}),
        (y, z): NCPoly.zero(),
        (x, z): NCPoly({(z,): 1, (y,): -lam}),
    }
    pres = Presentation(gens, f, {"family": "WZZ", "lambda": str(lam)})
    data = HopfData.primitive(3)
    data.delta[z] = TensorPoly.primitive(z) + TensorPoly(2, {((x,), (y,)): 1, ((y,), (x,)): -1})
    # m(S⊗id)Δz = 0 forces S(z) = -z + xy - yx
    data.antipode[z] = NCPoly({(z,): -1, (x, y): 1, (y, x): -1})
    return pres, data
