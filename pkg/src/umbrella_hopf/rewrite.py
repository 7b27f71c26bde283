"""Commutator-form reduction systems, normal forms and Diamond Lemma checks.

A presentation gives, for every pair of generators ``z_i < z_j``, the
polynomial ``f_ij`` with ``[z_i, z_j] = f_ij``.  The reduction system rewrites
``z_j z_i -> z_i z_j - f_ij``; normal words are the nondecreasing words.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .freealg import (EMPTY, GeneratorSet, NCPoly, Terms, Word, add_into,
                      commutator, is_sorted_word, leading_word)

Pair = Tuple[int, int]


class PresentationError(ValueError):
    pass


@dataclass
class Presentation:
    """Generators plus ``f_ij`` for every pair ``i < j`` (missing pairs mean 0)."""

    generators: GeneratorSet
    brackets: Dict[Pair, NCPoly]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.generators)
        full = {}
        for (i, j), f in self.brackets.items():
            if not 0 <= i < j < n:
                raise PresentationError(f"relation index ({i},{j}) must satisfy 0 <= i < j < {n}")
            full[(i, j)] = f
        for pair in itertools.combinations(range(n), 2):
            full.setdefault(pair, NCPoly.zero())
        self.brackets = dict(sorted(full.items()))

    @property
    def pairs(self) -> List[Pair]:
        return list(self.brackets)

    def bracket(self, i: int, j: int) -> NCPoly:
        """``f_ij`` with the convention ``f_ji = -f_ij`` and ``f_ii = 0``."""
        if i == j:
            return NCPoly.zero()
        return self.brackets[(i, j)] if i < j else -self.brackets[(j, i)]

    def relation(self, i: int, j: int) -> NCPoly:
        """The ideal generator ``z_j z_i - z_i z_j + f_ij``."""
        zi, zj = NCPoly.word((i,)), NCPoly.word((j,))
        return zj * zi - zi * zj + self.brackets[(i, j)]

    def relations(self):
        for (i, j) in self.brackets:
            yield (i, j), self.relation(i, j)

    def pair_name(self, pair: Pair) -> str:
        return f"{self.generators.names[pair[0]]},{self.generators.names[pair[1]]}"


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: NCPoly


class ReductionSystem:
    """Rules ``z_j z_i -> z_i z_j - f_ij`` validated against the weight conditions.

    ``confluent`` is None until :func:`check_confluence` runs.
    """

    def __init__(self, presentation: Presentation):
        gens = presentation.generators
        w = gens.weights
        for i in range(len(gens) - 1):
            if w[i] > w[i + 1]:
                raise PresentationError(f"condition (1) failed at ({i},{i + 1}): "
                                        f"weights must be nondecreasing along the order")
        self.presentation = presentation
        self.generators = gens
        self.weights = w
        self.rules: Dict[Pair, Rule] = {}
        self._rhs: Dict[Pair, Terms] = {}
        for (i, j), f in presentation.brackets.items():
            if f and f.max_weight(w) >= w[i] + w[j]:
                lw = leading_word(f, w)
                raise PresentationError(
                    f"condition (2) failed at ({i},{j}): leading word "
                    f"{gens.format_word(lw)} has weight {gens.weight(lw)} >= {w[i] + w[j]}")
            rhs = NCPoly.word((i, j)) - f
            self.rules[(i, j)] = Rule((j, i), rhs)
            self._rhs[(i, j)] = rhs.terms
        self.confluent: Optional[bool] = None
        self._caches: Dict[str, Dict[Word, Terms]] = {"leftmost": {}, "rightmost": {}}

    def __len__(self):
        return len(self.rules)

    # -- normal forms --------------------------------------------------------

    def nf_word(self, word: Word, strategy: str = "leftmost") -> Terms:
        """Normal form of one word; results are memoised and must not be mutated."""
        cache = self._caches[strategy]
        hit = cache.get(word)
        if hit is not None:
            return hit
        n = len(word)
        if strategy == "leftmost":
            p = next((k for k in range(n - 1) if word[k] > word[k + 1]), None)
        else:
            p = next((k for k in range(n - 2, -1, -1) if word[k] > word[k + 1]), None)
        if p is None:
            out = {word: Fraction(1)}
        else:
            pre, post = word[:p], word[p + 2:]
            out = {}
            for m, c in self._rhs[(word[p + 1], word[p])].items():
                add_into(out, self.nf_word(pre + m + post, strategy), c)
        cache[word] = out
        return out

    def nf_terms(self, terms: Terms, strategy: str = "leftmost") -> Terms:
        out: Terms = {}
        for w, c in terms.items():
            add_into(out, self.nf_word(w, strategy), c)
        return out

    def normal_form(self, f: NCPoly, strategy: str = "leftmost") -> NCPoly:
        return NCPoly._raw(self.nf_terms(f.terms, strategy))

    def reduce_stepwise(self, f: NCPoly, strategy: str = "leftmost",
                        max_steps: Optional[int] = None) -> Tuple[NCPoly, int]:
        """Reduce by single rewrites, always inside the wlex-greatest reducible word.

        Returns the fixpoint and the number of rewrites; independent of the
        memoised word cache used by :meth:`normal_form`.
        """
        key = self.generators.key
        acc = dict(f.terms)
        steps = 0
        while True:
            reducible = [w for w in acc if not is_sorted_word(w)]
            if not reducible:
                return NCPoly._raw(acc), steps
            w = max(reducible, key=key)
            n = len(w)
            if strategy == "leftmost":
                p = next(k for k in range(n - 1) if w[k] > w[k + 1])
            else:
                p = next(k for k in range(n - 2, -1, -1) if w[k] > w[k + 1])
            c = acc.pop(w)
            rhs = self._rhs[(w[p + 1], w[p])]
            add_into(acc, {w[:p] + m + w[p + 2:]: a for m, a in rhs.items()}, c)
            steps += 1
            if max_steps is not None and steps > max_steps:
                raise RuntimeError(f"reduction exceeded {max_steps} steps")

    def multiply(self, f: NCPoly, g: NCPoly) -> NCPoly:
        """Product in the quotient, in normal form."""
        out: Terms = {}
        for u, a in f.terms.items():
            for v, b in g.terms.items():
                add_into(out, self.nf_word(u + v), a * b)
        return NCPoly._raw(out)


def build_reduction_system(p: Presentation) -> ReductionSystem:
    return ReductionSystem(p)


def normal_form(f: NCPoly, R: ReductionSystem, strategy: str = "leftmost") -> NCPoly:
    return R.normal_form(f, strategy)


def overlap_ambiguities(R: ReductionSystem) -> List[Tuple[int, int, int]]:
    return list(itertools.combinations(range(len(R.generators)), 3))


@dataclass
class TripleFailure:
    i: int
    j: int
    k: int
    residue: NCPoly


@dataclass
class ConfluenceReport:
    triples_total: int
    failures: List[TripleFailure]
    elapsed_ms: float
    generators: GeneratorSet

    @property
    def confluent(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        fmt = self.generators.format
        return {
            "triples_total": self.triples_total,
            "triples_failed": [{"i": t.i, "j": t.j, "k": t.k, "residue": fmt(t.residue)}
                               for t in self.failures],
            "confluent": self.confluent,
            "elapsed_ms": self.elapsed_ms,
        }


def check_confluence(R: ReductionSystem) -> ConfluenceReport:
    """Resolve every overlap ``z_k z_j z_i`` both ways and via the bracket sum.

    The residue of a triple is ``NF(path through z_j z_k) - NF(path through
    z_i z_j)``; the bracket sum ``[f_ij,z_k] + [f_jk,z_i] + [f_ki,z_j]`` must
    reduce to exactly its negative, which is asserted.
    """
    t0 = time.perf_counter()
    p = R.presentation
    z = [NCPoly.word((i,)) for i in range(len(R.generators))]
    failures = []
    triples = overlap_ambiguities(R)
    for i, j, k in triples:
        left = (z[j] * z[k] - p.bracket(j, k)) * z[i]
        right = z[k] * (z[i] * z[j] - p.bracket(i, j))
        residue = R.normal_form(left) - R.normal_form(right)
        jacobi = (commutator(p.bracket(i, j), z[k]) + commutator(p.bracket(j, k), z[i])
                  + commutator(p.bracket(k, i), z[j]))
        if R.normal_form(jacobi) != -residue:
            raise AssertionError(f"two-path and bracket-sum checks disagree on ({i},{j},{k})")
        if residue:
            failures.append(TripleFailure(i, j, k, residue))
    R.confluent = not failures
    return ConfluenceReport(len(triples), failures,
                            round((time.perf_counter() - t0) * 1000, 3), R.generators)


def is_pbw(R: ReductionSystem) -> bool:
    # construction already enforced conditions (1) and (2)
    if R.confluent is None:
        check_confluence(R)
    return bool(R.confluent)


def normal_words(weights: Sequence[int], cutoff: int) -> List[Word]:
    """Nondecreasing words of weight <= cutoff, by depth-first extension."""
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    out: List[Word] = []

    def grow(word: Word, start: int, budget: int):
        out.append(word)
        for g in range(start, len(weights)):
            if weights[g] <= budget:
                grow(word + (g,), g, budget - weights[g])

    grow(EMPTY, 0, cutoff)
    return out


def enumerate_normal_words(R: ReductionSystem, weight_cutoff: int, return_words: bool = False):
    if R.confluent is False:
        raise ValueError("normal words only form a basis for a confluent system")
    words = normal_words(R.weights, weight_cutoff)
    return (len(words), words) if return_words else len(words)


def pbw_monomial_count(weights: Sequence[int], cutoff: int) -> int:
    """Number of exponent vectors ``d`` with ``sum(d_i * w_i) <= cutoff``."""
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    # ways[t] = number of exponent vectors of exact weighted degree t
    ways = [1] + [0] * cutoff
    for w in weights:
        for t in range(w, cutoff + 1):
            ways[t] += ways[t - w]
    return sum(ways)
