"""Exact linear algebra for antisymmetric forms and the Lie algebras so(A).

Matrices are numpy object arrays holding :class:`fractions.Fraction`
entries, so ``@``, ``.T`` and slicing behave as usual while every entry stays
exact.  ``so(A) = {M : M A = -A M^T}``, equivalently ``M A`` symmetric.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ._linalg import Echelon, kernel, rank as _rank, rref_basis

Matrix = np.ndarray


def as_matrix(data) -> Matrix:
    """Build an exact matrix from nested lists of ints, Fractions or ``"p/q"`` strings."""
    rows = [list(row) for row in data]
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("matrix rows must have equal length")
    m = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if isinstance(x, float):
                raise TypeError("floating point entries are not allowed")
            m[i, j] = x if isinstance(x, Fraction) else Fraction(x)
    return m


def zeros(r: int, c: Optional[int] = None) -> Matrix:
    return as_matrix([[0] * (r if c is None else c) for _ in range(r)])


def identity(r: int) -> Matrix:
    m = zeros(r)
    for i in range(r):
        m[i, i] = Fraction(1)
    return m


def unit(r: int, i: int, j: int) -> Matrix:
    """Matrix unit ``e_ij`` (0-based indices)."""
    m = zeros(r)
    m[i, j] = Fraction(1)
    return m


def mat_equal(a: Matrix, b: Matrix) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for x in a.flat)


def trace(a: Matrix) -> Fraction:
    return sum((a[i, i] for i in range(a.shape[0])), Fraction(0))


def bracket(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def is_antisymmetric(a: Matrix) -> bool:
    return a.shape[0] == a.shape[1] and is_zero(a + a.T)


def _vec(m: Matrix) -> Dict[Tuple[int, int], Fraction]:
    r, c = m.shape
    return {(i, j): m[i, j] for i in range(r) for j in range(c) if m[i, j] != 0}


def _from_vec(v, r: int) -> Matrix:
    m = zeros(r)
    for (i, j), x in v.items():
        m[i, j] = x
    return m


def matrix_rank(a: Matrix) -> int:
    return _rank([{j: a[i, j] for j in range(a.shape[1]) if a[i, j] != 0}
                  for i in range(a.shape[0])])


def inverse(a: Matrix) -> Matrix:
    n = a.shape[0]
    aug = [{**{j: a[i, j] for j in range(n) if a[i, j] != 0}, ("I", i): Fraction(1)}
           for i in range(n)]
    order = list(range(n)) + [("I", i) for i in range(n)]
    pos = {k: t for t, k in enumerate(order)}
    rows = rref_basis(aug, order)
    if len(rows) != n or any(min(row, key=pos.__getitem__) != i for i, row in enumerate(rows)):
        raise ValueError("matrix is singular")
    out = zeros(n)
    for i, row in enumerate(rows):
        for k, x in row.items():
            if isinstance(k, tuple):
                out[i, k[1]] = x
    return out


def block_matrix(r: int, s: int) -> Matrix:
    """The normal form: ``s`` diagonal blocks ``[[0,1],[-1,0]]`` then zeros."""
    if not 0 <= 2 * s <= r:
        raise ValueError(f"need 0 <= 2s <= r, got r={r}, s={s}")
    b = zeros(r)
    for k in range(s):
        b[2 * k, 2 * k + 1] = Fraction(1)
        b[2 * k + 1, 2 * k] = Fraction(-1)
    return b


def block_rank_s(a: Matrix) -> Optional[int]:
    """``s`` if ``a`` is exactly the block normal form, else None."""
    r = a.shape[0]
    s = matrix_rank(a) // 2
    return s if 2 * s <= r and mat_equal(a, block_matrix(r, s)) else None


# -- so(A) -------------------------------------------------------------------

def _symplectic_standard(r: int, s: int) -> List[Matrix]:
    # S @ B' is in so(B') for every symmetric S; run over S = E_pp, E_pq + E_qp (p < q)
    bp = block_matrix(2 * s, s)
    out = []
    for p in range(2 * s):
        for q in range(p, 2 * s):
            sym = zeros(2 * s)
            sym[p, q] = Fraction(1)
            sym[q, p] = Fraction(1)
            m = sym @ bp
            lead = next(x for x in m.flat if x != 0)
            if lead < 0:
                m = -m
            full = zeros(r)
            full[:2 * s, :2 * s] = m
            out.append(full)
    return out


def _so_solution_space(a: Matrix) -> List[Dict[Tuple[int, int], Fraction]]:
    r = a.shape[0]
    cols = []
    for p in range(r):
        for q in range(r):
            x = unit(r, p, q) @ a
            d = x - x.T
            cols.append({(i, j): d[i, j] for i in range(r) for j in range(i + 1, r) if d[i, j] != 0})
    positions = [(p, q) for p in range(r) for q in range(r)]
    sols = [{positions[k]: c for k, c in combo.items()} for combo in kernel(cols)]
    return rref_basis(sols, positions)


@dataclass
class LieData:
    A: Matrix
    basis: List[Matrix]
    rank_s: int
    block_form: bool
    structure_constants: Dict[Tuple[int, int], Tuple[Fraction, ...]] = field(default_factory=dict)

    def __post_init__(self):
        self._coord = Echelon(track=True)
        for i, m in enumerate(self.basis):
            if not self._coord.add(_vec(m), {i: Fraction(1)}):
                raise ValueError("so(A) basis is linearly dependent")

    @property
    def r(self) -> int:
        return self.A.shape[0]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, m: Matrix) -> Tuple[Fraction, ...]:
        combo: dict = {}
        if self._coord.reduce(_vec(m), combo):
            raise ValueError("matrix is not in the span of the so(A) basis")
        return tuple(-combo.get(i, Fraction(0)) for i in range(self.dim))

    def combine(self, coords: Sequence[Fraction]) -> Matrix:
        out = zeros(self.r)
        for c, m in zip(coords, self.basis):
            if c:
                out = out + c * m
        return out

    def bracket_coords(self, a: int, b: int) -> Tuple[Fraction, ...]:
        if a == b:
            return (Fraction(0),) * self.dim
        if a < b:
            return self.structure_constants[(a, b)]
        return tuple(-c for c in self.structure_constants[(b, a)])


def so_basis(A) -> LieData:
    """Solve ``M A - (M A)^T = 0`` over Q and fix a canonical basis.

    For the block normal form the basis is the symplectic-standard basis of
    the top-left ``2s x 2s`` block (``S @ B'`` for ``S`` running over
    ``E_pp`` and ``E_pq + E_qp``, sign-normalised) followed by the matrix
    units ``e_ij`` with column ``j >= 2s`` in row-major order.  Otherwise it
    is the reduced row echelon basis of the solution space.
    """
    A = as_matrix(A) if not isinstance(A, np.ndarray) else A
    if not is_antisymmetric(A):
        raise ValueError("A must be antisymmetric")
    r = A.shape[0]
    space = _so_solution_space(A)
    s = matrix_rank(A) // 2
    block = block_rank_s(A) is not None
    if block:
        basis = _symplectic_standard(r, s)
        basis += [unit(r, i, j) for i in range(r) for j in range(2 * s, r)]
        ech = Echelon()
        for v in space:
            ech.add(v)
        if len(basis) != len(space) or not all(ech.contains(_vec(m)) for m in basis):
            raise AssertionError("canonical basis does not match the solved so(A)")
    else:
        basis = [_from_vec(v, r) for v in space]
    lie = LieData(A, basis, s, block)
    lie.structure_constants = structure_constants(lie)
    return lie


def structure_constants(L: LieData) -> Dict[Tuple[int, int], Tuple[Fraction, ...]]:
    """Coordinates of ``[X_a, X_b]`` (matrix commutator) for every ``a < b``."""
    table = {}
    for a in range(L.dim):
        for b in range(a + 1, L.dim):
            c = bracket(L.basis[a], L.basis[b])
            try:
                table[(a, b)] = L.coordinates(c)
            except ValueError:
                raise ValueError("not a subalgebra: commutator left the span") from None
    return table


def congruence_normalize(A) -> Tuple[Matrix, Matrix, int]:
    """Skew Gram-Schmidt: return ``(P, B, s)`` with ``P A P^T = B`` in block form."""
    A = as_matrix(A) if not isinstance(A, np.ndarray) else A
    if not is_antisymmetric(A):
        raise ValueError("A must be antisymmetric")
    r = A.shape[0]

    def form(u, v):
        return sum((u[i] * A[i, j] * v[j] for i in range(r) for j in range(r)
                    if u[i] and v[j]), Fraction(0))

    rest = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    pairs = []
    while True:
        hit = next(((p, q) for p in range(len(rest)) for q in range(p + 1, len(rest))
                    if form(rest[p], rest[q]) != 0), None)
        if hit is None:
            break
        p, q = hit
        w = form(rest[p], rest[q])
        e = rest[p]
        f = [x / w for x in rest[q]]
        others = [v for k, v in enumerate(rest) if k not in (p, q)]
        rest = []
        for v in others:
            a, b = form(v, f), form(v, e)
            rest.append([vi - a * ei + b * fi for vi, ei, fi in zip(v, e, f)])
        pairs += [e, f]
    P = as_matrix(pairs + rest)
    s = len(pairs) // 2
    B = P @ A @ P.T
    if not mat_equal(B, block_matrix(r, s)):
        raise AssertionError("skew Gram-Schmidt did not reach the block form")
    return P, B, s


# -- traces ------------------------------------------------------------------

def ad_trace(L: LieData, M) -> Fraction:
    """Trace of ``ad M`` on so(A), from the structure constants."""
    m = L.coordinates(M)
    total = Fraction(0)
    for b in range(L.dim):
        for a, ma in enumerate(m):
            if ma and a != b:
                total += ma * L.bracket_coords(a, b)[b]
    return total


def ad_trace_closed_form(M: Matrix, r: int, s: int) -> Fraction:
    """``(r - 2s) tr(M) - r tr(M22)`` with ``M22`` the trailing ``(r-2s)`` block."""
    return (r - 2 * s) * trace(M) - r * trace(M[2 * s:, 2 * s:])


def generator_matrix(L: LieData, generator: Union[str, Matrix]) -> Optional[Matrix]:
    """Matrix of a Lie generator name ``"X<k>"`` (1-based); None for ``x``/``y`` names."""
    if isinstance(generator, np.ndarray):
        return generator
    if generator.startswith("X"):
        return L.basis[int(generator[1:]) - 1]
    if generator[:1] in ("x", "y"):
        return None
    raise ValueError(f"unknown generator {generator!r}")


def phi_eta(L: LieData, generator: Union[str, Matrix]) -> Fraction:
    """The modular character: 0 on ``x_i``, ``y_i`` and ``2 tr(M) + tr(ad M)`` on so(B)."""
    M = generator_matrix(L, generator)
    if M is None:
        return Fraction(0)
    return 2 * trace(M) + ad_trace(L, M)


# -- JSON --------------------------------------------------------------------

def matrix_to_json(m: Matrix) -> List[List[str]]:
    return [[str(x) for x in row] for row in m]


def matrix_from_json(data, antisymmetric: bool = True) -> Matrix:
    m = as_matrix(data)
    if m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if antisymmetric and not is_antisymmetric(m):
        raise ValueError("matrix is not antisymmetric")
    return m
