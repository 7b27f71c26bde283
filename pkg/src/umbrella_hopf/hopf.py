"""Coalgebra structure on quotients ``k<G>/I`` presented by a reduction system.

The coproduct is extended from the generators as an algebra map, one letter
at a time, keeping every tensor component in normal form.  All checks are
exact over Q.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ._linalg import Echelon, kernel, rref_basis
from .freealg import EMPTY, GeneratorSet, NCPoly, Terms, Word, add_into, format_scalar
from .rewrite import Presentation, ReductionSystem, check_confluence, normal_words

Tensor = Dict[Tuple[Word, ...], Fraction]

DEFAULT_SEED = 20240917


class RefusedError(ValueError):
    """Raised when a question has no meaningful answer in the current state."""


# -- tensors -----------------------------------------------------------------

class TensorPoly:
    """Element of the ``arity``-fold tensor power, as tuples of words -> Fraction."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms=None):
        if arity < 2:
            raise ValueError("tensor arity must be >= 2")
        self.arity = arity
        clean: Tensor = {}
        for k, c in (terms or {}).items():
            c = Fraction(c)
            k = tuple(tuple(w) for w in k)
            if len(k) != arity:
                raise ValueError(f"tensor key {k} does not have arity {arity}")
            if c:
                clean[k] = clean.get(k, 0) + c
                if not clean[k]:
                    del clean[k]
        self.terms = clean

    @classmethod
    def _raw(cls, arity: int, terms: Tensor) -> "TensorPoly":
        obj = cls.__new__(cls)
        obj.arity, obj.terms = arity, terms
        return obj

    @classmethod
    def primitive(cls, g: int) -> "TensorPoly":
        return cls._raw(2, {((g,), EMPTY): Fraction(1), (EMPTY, (g,)): Fraction(1)})

    @classmethod
    def pure(cls, *factors: NCPoly) -> "TensorPoly":
        out: Tensor = {}
        for combo in itertools.product(*(f.terms.items() for f in factors)):
            c = Fraction(1)
            for _, a in combo:
                c *= a
            out[tuple(w for w, _ in combo)] = c
        return cls._raw(len(factors), out)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, TensorPoly) and self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def _check(self, other: "TensorPoly"):
        if not isinstance(other, TensorPoly) or other.arity != self.arity:
            raise TypeError("tensor arity mismatch")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        add_into(acc, other.terms)
        return TensorPoly._raw(self.arity, acc)

    def __sub__(self, other):
        self._check(other)
        acc = dict(self.terms)
        add_into(acc, other.terms, Fraction(-1))
        return TensorPoly._raw(self.arity, acc)

    def __neg__(self):
        return TensorPoly._raw(self.arity, {k: -c for k, c in self.terms.items()})

    def scale(self, c) -> "TensorPoly":
        c = Fraction(c)
        if not c:
            return TensorPoly._raw(self.arity, {})
        return TensorPoly._raw(self.arity, {k: c * v for k, v in self.terms.items()})

    def __repr__(self):
        return f"TensorPoly({self.arity}, {len(self.terms)} terms)"

    def format(self, gens: GeneratorSet) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(),
                       key=lambda t: tuple(gens.key(w) for w in t[0]), reverse=True)
        parts = []
        for n, (k, c) in enumerate(items):
            body = " ⊗ ".join(gens.format_word(w) for w in k)
            a = abs(c)
            if a != 1:
                body = f"{format_scalar(a)} {body}"
            if n == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


# -- reports -----------------------------------------------------------------

@dataclass
class Report:
    """Shared JSON envelope for every verification."""

    check: str
    target: dict
    verdict: str
    failures: List[dict] = field(default_factory=list)
    elapsed_ms: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self, timing: bool = True) -> dict:
        out = {"check": self.check, "target": self.target, "verdict": self.verdict,
               "failures": self.failures, "details": self.details}
        if timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def target_of(p: Presentation) -> dict:
    m = p.meta
    return {"family": m.get("family", "custom"), "r": m.get("r"), "s": m.get("s")}


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = round((time.perf_counter() - self.t0) * 1000, 3)


# -- the quotient coalgebra --------------------------------------------------

class QuotientHopf:
    """Presentation + reduction system + generator Hopf data.

    With ``verify=True`` (the default) construction runs confluence and the
    Hopf-ideal check and raises :class:`RefusedError` if either fails, so a
    constructed object always answers questions about an honest Hopf algebra.
    """

    def __init__(self, presentation: Presentation, data, R: Optional[ReductionSystem] = None,
                 verify: bool = True):
        self.presentation = presentation
        self.generators = presentation.generators
        self.R = R or ReductionSystem(presentation)
        self.data = data
        self.weights = self.generators.weights
        n = len(self.generators)
        missing = [self.generators.names[g] for g in range(n)
                   if g not in data.delta or g not in data.counit or g not in data.antipode]
        if missing:
            raise ValueError(f"Hopf data missing for generators {missing}")
        self._counit = {g: Fraction(data.counit[g]) for g in range(n)}
        self._gen_delta = {g: self._nf_tensor(data.delta[g].terms) for g in range(n)}
        self._gen_antipode = {g: self.R.normal_form(data.antipode[g]) for g in range(n)}
        self._delta_cache: Dict[Word, Tensor] = {EMPTY: {(EMPTY, EMPTY): Fraction(1)}}
        self._reduced_cache: Dict[Word, Tensor] = {}
        self._antipode_cache: Dict[Word, Terms] = {EMPTY: {EMPTY: Fraction(1)}}
        self.verified = False
        if verify:
            conf = check_confluence(self.R) if self.R.confluent is None else None
            if not self.R.confluent:
                raise RefusedError("reduction system is not confluent")
            rep = check_hopf_ideal(presentation, data, R=self.R, _engine=self)
            if not rep.passed:
                raise RefusedError("relation ideal is not a Hopf ideal: "
                                   + ", ".join(f["relation"] for f in rep.failures))
            self.confluence_report = conf
            self.verified = True

    # tensor helpers

    def _nf_tensor(self, terms: Tensor) -> Tensor:
        out: Tensor = {}
        nf = self.R.nf_word
        for k, c in terms.items():
            for combo in itertools.product(*(nf(w).items() for w in k)):
                a = c
                for _, x in combo:
                    a *= x
                key = tuple(w for w, _ in combo)
                v = out.get(key, 0) + a
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    def _tmul(self, s: Tensor, t: Tensor) -> Tensor:
        out: Tensor = {}
        for k1, a in s.items():
            for k2, b in t.items():
                add_into(out, self._nf_tensor({tuple(u + v for u, v in zip(k1, k2)): a * b}))
        return out

    # coproduct, counit, antipode

    def delta_word(self, word: Word) -> Tensor:
        """``Δ(word)`` in normal form (memoised; callers must not mutate)."""
        hit = self._delta_cache.get(word)
        if hit is None:
            hit = self._tmul(self.delta_word(word[:-1]), self._gen_delta[word[-1]])
            self._delta_cache[word] = hit
        return hit

    def coproduct(self, f: NCPoly) -> TensorPoly:
        out: Tensor = {}
        for w, c in f.terms.items():
            add_into(out, self.delta_word(w), c)
        return TensorPoly._raw(2, out)

    def counit_word(self, word: Word) -> Fraction:
        c = Fraction(1)
        for g in word:
            c *= self._counit[g]
        return c

    def counit(self, f: NCPoly) -> Fraction:
        return sum((c * self.counit_word(w) for w, c in f.terms.items()), Fraction(0))

    def antipode_word(self, word: Word) -> Terms:
        hit = self._antipode_cache.get(word)
        if hit is None:
            # S is an anti-homomorphism: S(w g) = S(g) S(w)
            hit = self.R.multiply(self._gen_antipode[word[-1]],
                                  NCPoly._raw(self.antipode_word(word[:-1]))).terms
            self._antipode_cache[word] = hit
        return hit

    def antipode(self, f: NCPoly) -> NCPoly:
        out: Terms = {}
        for w, c in f.terms.items():
            add_into(out, self.antipode_word(w), c)
        return NCPoly._raw(out)

    def nf(self, f: NCPoly) -> NCPoly:
        return self.R.normal_form(f)

    # reduced coproducts and orders

    def _reduced_word(self, word: Word) -> Tensor:
        hit = self._reduced_cache.get(word)
        if hit is None:
            hit = dict(self.delta_word(word))
            add_into(hit, {(word, EMPTY): Fraction(1), (EMPTY, word): Fraction(1)}, Fraction(-1))
            self._reduced_cache[word] = hit
        return hit

    def delta_reduced(self, f: NCPoly) -> TensorPoly:
        """``δf = Δf - f⊗1 - 1⊗f`` for ``f`` in the augmentation ideal."""
        f = self.nf(f)
        if self.counit(f):
            raise ValueError(f"delta_reduced needs counit 0, got {self.counit(f)}")
        out: Tensor = {}
        for w, c in f.terms.items():
            add_into(out, self._reduced_word(w), c)
        return TensorPoly._raw(2, out)

    def _delta_first(self, t: Tensor) -> Tensor:
        out: Tensor = {}
        for k, c in t.items():
            if not k[0]:
                raise AssertionError("iterated coproduct met a scalar component")
            for (p, q), d in self._reduced_word(k[0]).items():
                key = (p, q) + k[1:]
                v = out.get(key, 0) + c * d
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    def iterated_reduced(self, f: NCPoly, m: int) -> TensorPoly:
        """``δ^(m) f`` in the ``(m+1)``-fold tensor power; ``δ^(1) = δ``."""
        if m < 1:
            raise ValueError("m must be >= 1")
        t = self.delta_reduced(f).terms
        for _ in range(m - 1):
            t = self._delta_first(t)
        return TensorPoly._raw(m + 1, t)

    def order(self, f: NCPoly, cutoff: int = 32) -> int:
        """Coradical order: 0 on scalars, else least ``m`` with ``δ^(m) f⁺ = 0``."""
        f = self.nf(f)
        if not f:
            raise ValueError("order of the zero element is undefined")
        plus = NCPoly._raw({w: c for w, c in f.terms.items() if w})
        if not plus:
            return 0
        t = self.delta_reduced(plus).terms
        m = 1
        while t:
            m += 1
            if m > cutoff:
                raise ValueError(f"order > cutoff ({cutoff})")
            t = self._delta_first(t)
        if m > cutoff:
            raise ValueError(f"order > cutoff ({cutoff})")
        return m

    def normal_words(self, weight_cutoff: int) -> List[Word]:
        return normal_words(self.weights, weight_cutoff)

    def primitive_space(self, weight_cutoff: int) -> List[NCPoly]:
        """Basis (reduced echelon, wlex-greatest pivot first) of the primitives of weight <= cutoff."""
        words = [w for w in self.normal_words(weight_cutoff) if w]
        ker = kernel([self._reduced_word(w) for w in words])
        vecs = [{words[i]: c for i, c in v.items()} for v in ker]
        order = sorted(words, key=self.generators.key, reverse=True)
        return [NCPoly._raw(v) for v in rref_basis(vecs, order)]


# -- Hopf ideal ----------------------------------------------------------------

def _free_eval(engine: QuotientHopf, g: NCPoly):
    """``(NF⊗NF)Δ(g)``, ``ε(g)`` and ``NF(S(g))`` for a free-algebra element ``g``."""
    delta: Tensor = {}
    anti: Terms = {}
    eps = Fraction(0)
    for w, c in g.terms.items():
        add_into(delta, engine.delta_word(w), c)
        add_into(anti, engine.antipode_word(w), c)
        eps += c * engine.counit_word(w)
    return TensorPoly._raw(2, delta), eps, NCPoly._raw(anti)


def check_hopf_ideal(presentation: Presentation, data, R: Optional[ReductionSystem] = None,
                     _engine: Optional[QuotientHopf] = None) -> Report:
    """Check ``Δ``, ``ε`` and ``S`` of every relation vanish in the quotient.

    Relies on ``ker(NF⊗NF) = I⊗F + F⊗I``, which holds only for a confluent
    system; a non-confluent one is refused.
    """
    with _Timer() as clock:
        R = R or ReductionSystem(presentation)
        if R.confluent is None:
            check_confluence(R)
        if not R.confluent:
            raise RefusedError("check_hopf_ideal needs a confluent reduction system")
        engine = _engine or QuotientHopf(presentation, data, R=R, verify=False)
        gens = presentation.generators
        failures = []
        for pair, g in presentation.relations():
            delta, eps, anti = _free_eval(engine, g)
            name = presentation.pair_name(pair)
            if delta:
                failures.append({"relation": name, "map": "coproduct", "residue": delta.format(gens)})
            if eps:
                failures.append({"relation": name, "map": "counit", "residue": format_scalar(eps)})
            if anti:
                failures.append({"relation": name, "map": "antipode", "residue": gens.format(anti)})
    return Report("hopf_ideal", target_of(presentation), "fail" if failures else "pass",
                  failures, clock.ms, {"relations": len(presentation.pairs)})


# -- coalgebra axioms ----------------------------------------------------------

def sample_monomials(H: QuotientHopf, count: int, max_weight: int, seed: int) -> List[Word]:
    pool = [w for w in H.normal_words(max_weight) if w]
    rng = random.Random(seed)
    return pool if len(pool) <= count else rng.sample(pool, count)


def _axiom_failures(H: QuotientHopf, word: Word) -> List[str]:
    bad = []
    d = H.delta_word(word)
    # coassociativity
    left: Tensor = {}
    right: Tensor = {}
    for (a, b), c in d.items():
        for (p, q), e in H.delta_word(a).items():
            add_into(left, {(p, q, b): c * e})
        for (p, q), e in H.delta_word(b).items():
            add_into(right, {(a, p, q): c * e})
    if left != right:
        bad.append("coassociativity")
    # counit on both sides
    target = {word: Fraction(1)}
    el: Terms = {}
    er: Terms = {}
    for (a, b), c in d.items():
        add_into(el, {b: c * H.counit_word(a)})
        add_into(er, {a: c * H.counit_word(b)})
    if el != target or er != target:
        bad.append("counit")
    # antipode on both sides
    eps = H.counit_word(word)
    unit = {EMPTY: eps} if eps else {}
    sl: Terms = {}
    sr: Terms = {}
    for (a, b), c in d.items():
        add_into(sl, H.R.multiply(NCPoly._raw(H.antipode_word(a)), NCPoly.word(b)).terms, c)
        add_into(sr, H.R.multiply(NCPoly.word(a), NCPoly._raw(H.antipode_word(b))).terms, c)
    if sl != unit or sr != unit:
        bad.append("antipode")
    return bad


def check_coalgebra_axioms(H: QuotientHopf, samples: int = 50, max_weight: int = 4,
                           seed: int = DEFAULT_SEED) -> Report:
    """Coassociativity, counit and antipode axioms on generators plus random monomials."""
    with _Timer() as clock:
        words = [(g,) for g in range(len(H.generators))]
        extra = [w for w in sample_monomials(H, samples, max_weight, seed) if len(w) > 1]
        failures = []
        for w in words + extra:
            for axiom in _axiom_failures(H, w):
                failures.append({"monomial": H.generators.format_word(w), "axiom": axiom})
    return Report("coalgebra_axioms", target_of(H.presentation), "fail" if failures else "pass",
                  failures, clock.ms,
                  {"generators": len(words), "random_monomials": len(extra), "seed": seed,
                   "max_weight": max_weight})


# -- filtrations ---------------------------------------------------------------

def check_commutator_filtration(H: QuotientHopf, k: int, bound: int) -> Report:
    """``order([u,v]) <= order(u) + order(v) - k`` over PBW monomial pairs.

    Candidates are the normal words of weight <= ``bound``; pairs with
    ``order(u) + order(v) > bound`` are skipped.  ``details`` records whether
    every candidate had order equal to its weight, the condition under which
    this enumeration reaches every monomial of small order.
    """
    with _Timer() as clock:
        words = [w for w in H.normal_words(bound) if w]
        orders = {w: H.order(NCPoly.word(w), cutoff=bound + 1) for w in words}
        gens = H.generators
        failures = []
        worst = None
        checked = 0
        for i, u in enumerate(words):
            for v in words[i + 1:]:
                ou, ov = orders[u], orders[v]
                if ou + ov > bound:
                    continue
                checked += 1
                c = H.R.multiply(NCPoly.word(u), NCPoly.word(v)) - H.R.multiply(
                    NCPoly.word(v), NCPoly.word(u))
                if not c:
                    continue
                oc = H.order(c, cutoff=ou + ov + 1)
                slack = ou + ov - k - oc
                worst = slack if worst is None else min(worst, slack)
                if slack < 0:
                    failures.append({"u": gens.format_word(u), "v": gens.format_word(v),
                                     "commutator": gens.format(c), "order_u": ou,
                                     "order_v": ov, "order_commutator": oc})
    failures.sort(key=lambda f: (f["order_u"] + f["order_v"], f["u"], f["v"]))
    details = {"k": k, "bound": bound, "pairs_checked": checked, "worst_slack": worst,
               "order_equals_weight": all(orders[w] == gens.weight(w) for w in words)}
    return Report("commutator_filtration", target_of(H.presentation),
                  "fail" if failures else "pass", failures, clock.ms, details)


def _span_key(H: QuotientHopf):
    return lambda w: H.generators.key(w)


def _same_span(a: Sequence[Dict], b: Sequence[Dict]) -> bool:
    ea, eb = Echelon(), Echelon()
    for v in a:
        ea.add(v)
    for v in b:
        eb.add(v)
    return len(ea) == len(eb) and all(ea.contains(v) for v in b)


def filtration_by_preimage(H: QuotientHopf, max_order: int, weight_cutoff: int) -> List[List[Dict]]:
    """``F̃_0 = k``, ``F̃_{i+1} = Δ^{-1}(H⊗F̃_i + F̃_0⊗H)``, each intersected with
    the span ``V`` of normal words of weight <= ``weight_cutoff``.

    Membership of ``u`` in ``F̃_{i+1}`` is ``(π⊗q_i)Δu = 0`` with ``π`` killing
    the empty word and ``q_i`` the quotient by ``F̃_i ∩ V``; all tensor
    components of ``Δu`` already lie in ``V``.
    """
    words = H.normal_words(weight_cutoff)
    levels: List[List[Dict]] = [[{EMPTY: Fraction(1)}]]
    for _ in range(max_order):
        ech = Echelon()
        for v in levels[-1]:
            ech.add(v)
        cols = []
        for w in words:
            groups: Dict[Word, Terms] = {}
            for (a, b), c in H.delta_word(w).items():
                if a:
                    add_into(groups.setdefault(a, {}), {b: c})
            col = {}
            for a, vec in groups.items():
                for b, c in ech.reduce(vec).items():
                    col[(a, b)] = c
            cols.append(col)
        levels.append([{words[i]: c for i, c in v.items()} for v in kernel(cols)])
    return levels


def filtration_by_reduced_coproduct(H: QuotientHopf, max_order: int,
                                    weight_cutoff: int) -> List[List[Dict]]:
    """``D_0 = k`` and ``D_m = k + ker δ^(m)`` on ``V⁺``."""
    words = [w for w in H.normal_words(weight_cutoff) if w]
    levels: List[List[Dict]] = [[{EMPTY: Fraction(1)}]]
    cols = [H._reduced_word(w) for w in words]
    for m in range(1, max_order + 1):
        if m > 1:
            cols = [H._delta_first(c) for c in cols]
        ker = [{words[i]: c for i, c in v.items()} for v in kernel(cols)]
        levels.append([{EMPTY: Fraction(1)}] + ker)
    return levels


def cross_validate_filtrations(H: QuotientHopf, max_order: int = 3, weight_cutoff: int = 4) -> Report:
    """Compare the two filtration characterisations level by level."""
    with _Timer() as clock:
        pre = filtration_by_preimage(H, max_order, weight_cutoff)
        red = filtration_by_reduced_coproduct(H, max_order, weight_cutoff)
        failures = []
        dims = []
        for m, (a, b) in enumerate(zip(pre, red)):
            dims.append({"order": m, "preimage_dim": len(a), "reduced_dim": len(b)})
            if not _same_span(a, b):
                failures.append({"order": m, "preimage_dim": len(a), "reduced_dim": len(b)})
    return Report("filtration_cross_validation", target_of(H.presentation),
                  "fail" if failures else "pass", failures, clock.ms,
                  {"weight_cutoff": weight_cutoff, "levels": dims})


# -- Nakayama automorphism -----------------------------------------------------

@dataclass
class AutomorphismData:
    images: Dict[int, NCPoly]


def _lie(H: QuotientHopf):
    from .liealg import matrix_from_json, so_basis
    meta = H.presentation.meta
    if "A" not in meta:
        raise ValueError("presentation carries no structure matrix")
    return so_basis(matrix_from_json(meta["A"]))


def _lie_ids(H: QuotientHopf, lie) -> List[int]:
    r = lie.r
    return [r + a for a in range(1, lie.dim + 1)]


def nakayama_automorphism(H: QuotientHopf, shift: Optional[Dict[int, Fraction]] = None) -> AutomorphismData:
    """``x_i, y_i`` fixed and ``M -> M + (2 - 2s) tr(M)`` on the Lie generators.

    ``shift`` overrides the scalar added to chosen Lie generators (by id).
    """
    from .liealg import trace
    lie = _lie(H)
    images = {g: NCPoly.word((g,)) for g in range(len(H.generators))}
    for gid, M in zip(_lie_ids(H, lie), lie.basis):
        c = (2 - 2 * lie.rank_s) * trace(M)
        if shift and gid in shift:
            c = Fraction(shift[gid])
        images[gid] = NCPoly.word((gid,)) + c
    return AutomorphismData(images)


def _substitute(H: QuotientHopf, g: NCPoly, images: Dict[int, NCPoly]) -> NCPoly:
    out = NCPoly.zero()
    for w, c in g.terms.items():
        acc = NCPoly.one()
        for letter in w:
            acc = H.R.multiply(acc, images[letter])
        out = out + acc.scale(c)
    return out


def hamiltonian_trace(H: QuotientHopf, gid: int) -> Fraction:
    """Trace of ``[z_gid, -]`` on the associated graded span of the generators.

    For each generator ``z`` take the coefficient of ``z`` in the weight
    ``w(z_gid) + w(z) - 1`` part of ``NF([z_gid, z])``.
    """
    w = H.weights
    total = Fraction(0)
    for z in range(len(H.generators)):
        part = H.presentation.bracket(gid, z).homogeneous_part(w, w[gid] + w[z] - 1)
        total += part.coefficient((z,))
    return total


def verify_nakayama(H: QuotientHopf, sigma: AutomorphismData) -> Report:
    """(a) sigma respects every relation, (b) ``sigma(M) - M = φ_η(M)``, (c) identity when r = 2s."""
    from .liealg import phi_eta
    with _Timer() as clock:
        lie = _lie(H)
        gens = H.generators
        n = len(gens)
        if set(sigma.images) != set(range(n)):
            raise ValueError("sigma must be given on every generator")
        failures = []
        for pair, g in H.presentation.relations():
            res = _substitute(H, g, sigma.images)
            if res:
                failures.append({"check": "automorphism", "relation": H.presentation.pair_name(pair),
                                 "residue": gens.format(res)})
        lie_ids = dict(zip(_lie_ids(H, lie), lie.basis))
        graded = {}
        for gid in range(n):
            shift = H.nf(sigma.images[gid] - NCPoly.word((gid,)))
            expected = phi_eta(lie, lie_ids[gid]) if gid in lie_ids else Fraction(0)
            if shift != NCPoly.scalar(expected):
                failures.append({"check": "agreement", "generator": gens.names[gid],
                                 "expected_shift": format_scalar(expected),
                                 "actual_shift": gens.format(shift)})
            if gid in lie_ids:
                graded[gens.names[gid]] = format_scalar(hamiltonian_trace(H, gid))
        calabi_yau = lie.r == 2 * lie.rank_s
        if calabi_yau:
            for gid in range(n):
                if H.nf(sigma.images[gid]) != NCPoly.word((gid,)):
                    failures.append({"check": "calabi_yau_identity", "generator": gens.names[gid]})
    return Report("nakayama", target_of(H.presentation), "fail" if failures else "pass",
                  failures, clock.ms,
                  {"calabi_yau": calabi_yau,
                   "phi_eta": {gens.names[g]: format_scalar(phi_eta(lie, M)) for g, M in lie_ids.items()},
                   "graded_commutator_trace": graded})


# -- crossed product -----------------------------------------------------------

def _exponents(r: int, max_degree: int) -> List[Tuple[int, ...]]:
    out = []
    for d in range(max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(r), d):
            a = [0] * r
            for i in combo:
                a[i] += 1
            out.append(tuple(a))
    return out


def _split(alpha: Tuple[int, ...]):
    """Binomial coproduct of a monomial in primitive commuting variables."""
    for beta in itertools.product(*(range(a + 1) for a in alpha)):
        c = 1
        for a, b in zip(alpha, beta):
            c *= comb(a, b)
        yield c, beta, tuple(a - b for a, b in zip(alpha, beta))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class _Crossed:
    def __init__(self, H: QuotientHopf, r: int, d: int):
        self.H, self.r = H, r
        self.y = [r + d + i for i in range(1, r + 1)]
        self._chi: Dict[tuple, NCPoly] = {}
        self._chip: Dict[tuple, NCPoly] = {}
        self._sigma: Dict[tuple, NCPoly] = {}

    def chi(self, alpha) -> NCPoly:
        if alpha not in self._chi:
            w = tuple(itertools.chain.from_iterable([g] * a for g, a in zip(self.y, alpha)))
            self._chi[alpha] = NCPoly.word(w)
        return self._chi[alpha]

    def chi_prime(self, alpha) -> NCPoly:
        if alpha not in self._chip:
            w = tuple(itertools.chain.from_iterable(
                [g] * a for g, a in reversed(list(zip(self.y, alpha)))))
            self._chip[alpha] = self.H.nf(NCPoly.word(w, (-1) ** sum(alpha)))
        return self._chip[alpha]

    def mul(self, *fs: NCPoly) -> NCPoly:
        out = NCPoly.one()
        for f in fs:
            out = self.H.R.multiply(out, f)
        return out

    def sigma(self, a, b) -> NCPoly:
        key = (a, b)
        if key not in self._sigma:
            out = NCPoly.zero()
            for ca, a1, a2 in _split(a):
                for cb, b1, b2 in _split(b):
                    out = out + self.mul(self.chi(a1), self.chi(b1),
                                         self.chi_prime(_add(a2, b2))).scale(ca * cb)
            self._sigma[key] = out
        return self._sigma[key]

    def convolution(self, alpha, first, second) -> NCPoly:
        out = NCPoly.zero()
        for c, b1, b2 in _split(alpha):
            out = out + self.mul(first(b1), second(b2)).scale(c)
        return out


def verify_crossed_product(H: QuotientHopf, degree_cutoff: int = 4) -> Report:
    """Six identity families for the crossed-product decomposition of UM(r, 2s)."""
    from .liealg import matrix_from_json
    with _Timer() as clock:
        lie = _lie(H)
        A = matrix_from_json(H.presentation.meta["A"])
        r, d = lie.r, lie.dim
        gens = H.generators
        C = _Crossed(H, r, d)
        fmt = gens.format
        failures: List[dict] = []
        counts = {}
        exps = _exponents(r, degree_cutoff)
        zero = tuple([0] * r)
        x_ids = set(range(r + 1))

        def in_K(f: NCPoly) -> bool:
            return all(set(w) <= x_ids for w in f.terms)

        def ydeg(a):
            return sum(a)

        # (i) normalisation, values in K, cocycle identity (trivial action)
        n = 0
        for a in exps:
            eps = NCPoly.one() if a == zero else NCPoly.zero()
            for label, val in (("sigma(1,a)", C.sigma(zero, a)), ("sigma(a,1)", C.sigma(a, zero))):
                n += 1
                if val != eps:
                    failures.append({"check": "i", "identity": label, "a": list(a), "residue": fmt(val - eps)})
        for a in exps:
            for b in exps:
                if ydeg(a) + ydeg(b) > degree_cutoff:
                    continue
                n += 1
                if not in_K(C.sigma(a, b)):
                    failures.append({"check": "i", "identity": "sigma in K", "a": list(a), "b": list(b)})
                for c in exps:
                    if ydeg(a) + ydeg(b) + ydeg(c) > degree_cutoff:
                        continue
                    n += 1
                    lhs = NCPoly.zero()
                    for cb, b1, b2 in _split(b):
                        for cc, c1, c2 in _split(c):
                            lhs = lhs + C.mul(C.sigma(b1, c1), C.sigma(a, _add(b2, c2))).scale(cb * cc)
                    rhs = NCPoly.zero()
                    for ca, a1, a2 in _split(a):
                        for cb, b1, b2 in _split(b):
                            rhs = rhs + C.mul(C.sigma(a1, b1), C.sigma(_add(a2, b2), c)).scale(ca * cb)
                    if lhs != rhs:
                        failures.append({"check": "i", "identity": "cocycle", "a": list(a),
                                         "b": list(b), "c": list(c), "residue": fmt(lhs - rhs)})
        counts["i"] = n

        # (ii) the two cocycle values on each symplectic pair
        n = 0
        x0cube = NCPoly.word((0, 0, 0))
        for i in range(r):
            for j in range(r):
                if i == j:
                    continue
                ei = tuple(int(t == i) for t in range(r))
                ej = tuple(int(t == j) for t in range(r))
                # sigma(ybar_j, ybar_i) = -(1/3) A_ij x0^3 for i < j, and 0 for i > j
                expected = x0cube.scale(-Fraction(1, 3) * A[i, j]) if i < j else NCPoly.zero()
                got = C.sigma(ej, ei)
                n += 1
                if got != expected:
                    failures.append({"check": "ii", "pair": [gens.names[C.y[j]], gens.names[C.y[i]]],
                                     "expected": fmt(expected), "got": fmt(got)})
        counts["ii"] = n

        # (iii) chi and chi' are convolution inverse
        n = 0
        for a in exps:
            if a == zero:
                continue
            for label, val in (("chi*chi'", C.convolution(a, C.chi, C.chi_prime)),
                               ("chi'*chi", C.convolution(a, C.chi_prime, C.chi))):
                n += 1
                if val:
                    failures.append({"check": "iii", "identity": label, "a": list(a), "residue": fmt(val)})
        counts["iii"] = n

        # (iv) (h#a)(g#b) = sum h g sigma(a1,b1) # a2 b2
        n = 0
        hs = [NCPoly.one()] + [NCPoly.word((i,)) for i in range(r + 1)]
        for a in exps:
            for b in exps:
                if ydeg(a) + ydeg(b) > degree_cutoff:
                    continue
                rhs_core = NCPoly.zero()
                for ca, a1, a2 in _split(a):
                    for cb, b1, b2 in _split(b):
                        rhs_core = rhs_core + C.mul(C.sigma(a1, b1), C.chi(_add(a2, b2))).scale(ca * cb)
                for h in hs:
                    for g in hs:
                        n += 1
                        lhs = C.mul(h, C.chi(a), g, C.chi(b))
                        rhs = C.mul(h, g, rhs_core)
                        if lhs != rhs:
                            failures.append({"check": "iv", "a": list(a), "b": list(b),
                                             "h": fmt(h), "g": fmt(g), "residue": fmt(lhs - rhs)})
        counts["iv"] = n

        # (v) tau(ybar_i) = x0⊗x_i - x_i⊗x0 equals δ(y_i)
        n = 0
        for i in range(1, r + 1):
            tau = TensorPoly._raw(2, {((0,), (i,)): Fraction(1), ((i,), (0,)): Fraction(-1)})
            got = H.delta_reduced(NCPoly.word((C.y[i - 1],)))
            n += 1
            if got != tau:
                failures.append({"check": "v", "generator": gens.names[C.y[i - 1]],
                                 "expected": tau.format(gens), "got": got.format(gens)})
        counts["v"] = n

        # (vi) action table against commutators, both orientations
        n = 0
        matches = {"[M,-]": 0, "[-,M]": 0}
        for a, M in enumerate(lie.basis, start=1):
            Mg = NCPoly.word((r + a,))
            for i in range(1, r + 1):
                for j in range(1, r + 1):
                    xy = NCPoly.word((i, C.y[j - 1]))
                    shown = NCPoly.zero()
                    for k in range(1, r + 1):
                        shown = shown - NCPoly.word((k, C.y[j - 1]), M[i - 1, k - 1]) \
                            - NCPoly.word((i, C.y[k - 1]), M[j - 1, k - 1])
                    shown = H.nf(shown)
                    left = C.mul(Mg, xy) - C.mul(xy, Mg)
                    n += 1
                    if left == shown:
                        matches["[M,-]"] += 1
                    if -left == shown:
                        matches["[-,M]"] += 1
                    if left != shown:
                        failures.append({"check": "vi", "M": gens.names[r + a],
                                         "x": gens.names[i], "y": gens.names[C.y[j - 1]],
                                         "commutator": fmt(left), "table": fmt(shown)})
        counts["vi"] = n
    return Report("crossed_product", target_of(H.presentation), "fail" if failures else "pass",
                  failures, clock.ms,
                  {"degree_cutoff": degree_cutoff, "identities_checked": counts,
                   "action_orientation_matches": matches})
