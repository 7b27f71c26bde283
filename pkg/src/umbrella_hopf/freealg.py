"""Words, word orders and noncommutative polynomials over the rationals.

A word is a tuple of generator ids.  Ids follow the declared total order of
the generators, so the plain tuple comparison of Python *is* the
lexicographic order with the prefix rule (a proper prefix is smaller).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple, Union

Word = Tuple[int, ...]
Scalar = Fraction
Terms = Dict[Word, Fraction]

EMPTY: Word = ()

LESS, EQUAL, GREATER = -1, 0, 1


def to_scalar(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(value)


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class Generator:
    id: int
    name: str
    weight: int = 1

    def __post_init__(self):
        if self.weight < 1:
            raise ValueError(f"generator {self.name!r} has weight {self.weight} < 1")


class GeneratorSet:
    """An ordered, weighted list of generators ``z_0 < z_1 < ... < z_{n-1}``."""

    def __init__(self, generators: Iterable[Generator]):
        gens = tuple(generators)
        for pos, g in enumerate(gens):
            if g.id != pos:
                raise ValueError(f"generator ids must be 0..n-1 in order, got {g.id} at {pos}")
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self.generators = gens
        self.weights = tuple(g.weight for g in gens)
        self.names = tuple(names)
        self._index = {name: g.id for name, g in zip(names, gens)}

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[str, int]]) -> "GeneratorSet":
        return cls(Generator(i, name, w) for i, (name, w) in enumerate(pairs))

    def __len__(self):
        return len(self.generators)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.generators)

    def __getitem__(self, i: int) -> Generator:
        return self.generators[i]

    def __eq__(self, other):
        return isinstance(other, GeneratorSet) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"GeneratorSet({', '.join(f'{n}:{w}' for n, w in zip(self.names, self.weights))})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def weight(self, word: Word) -> int:
        w = self.weights
        return sum(w[i] for i in word)

    def key(self, word: Word):
        """Sort key realising the weighted lexicographic order."""
        return (self.weight(word), word)

    def gen(self, name_or_id: Union[str, int]) -> "NCPoly":
        i = self.index(name_or_id) if isinstance(name_or_id, str) else name_or_id
        return NCPoly.word((i,))

    def format_word(self, word: Word) -> str:
        return " ".join(self.names[i] for i in word) if word else "1"

    def sorted_terms(self, f: "NCPoly") -> List[Tuple[Word, Fraction]]:
        """Terms of ``f`` from the wlex-greatest word down."""
        return sorted(f.terms.items(), key=lambda t: self.key(t[0]), reverse=True)

    def format(self, f: "NCPoly") -> str:
        return format_terms(self.sorted_terms(f), self.format_word)

    def parse(self, text: str) -> "NCPoly":
        return parse_poly(text, self)


# -- orders -----------------------------------------------------------------

def lex_compare(u: Word, v: Word) -> int:
    """Lexicographic order: a prefix is smaller, else the first differing letter decides."""
    for a, b in zip(u, v):
        if a != b:
            return LESS if a < b else GREATER
    if len(u) == len(v):
        return EQUAL
    return LESS if len(u) < len(v) else GREATER


def wlex_compare(u: Word, v: Word, weights: Sequence[int]) -> int:
    """Compare total weight first, then break ties with :func:`lex_compare`."""
    wu = sum(weights[i] for i in u)
    wv = sum(weights[i] for i in v)
    if wu != wv:
        return LESS if wu < wv else GREATER
    return lex_compare(u, v)


def is_sorted_word(word: Word) -> bool:
    return all(word[p] <= word[p + 1] for p in range(len(word) - 1))


# -- polynomials ------------------------------------------------------------

def add_into(acc: Terms, terms: Terms, scale: Fraction = Fraction(1)) -> None:
    """``acc += scale * terms`` in place, dropping zeros."""
    for w, c in terms.items():
        v = acc.get(w, 0) + scale * c
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)


class NCPoly:
    """A finite map from words to nonzero rationals.

    Instances are treated as immutable; arithmetic always builds new maps.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: Terms = {}
        if terms:
            for w, c in dict(terms).items():
                c = to_scalar(c)
                if c:
                    clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms: Terms) -> "NCPoly":
        # caller guarantees Fraction coefficients and no zeros
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "NCPoly":
        return cls._raw({EMPTY: Fraction(1)})

    @classmethod
    def word(cls, word: Word, coef=1) -> "NCPoly":
        return cls({tuple(word): coef})

    @classmethod
    def scalar(cls, c) -> "NCPoly":
        return cls({EMPTY: c})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == NCPoly.scalar(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        body = " + ".join(f"{format_scalar(c)}*{list(w)}" for w, c in sorted(self.terms.items()))
        return f"NCPoly({body or '0'})"

    def coefficient(self, word: Word) -> Fraction:
        return self.terms.get(tuple(word), Fraction(0))

    def constant(self) -> Fraction:
        return self.coefficient(EMPTY)

    def words(self) -> List[Word]:
        return list(self.terms)

    def _coerce(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return NCPoly.scalar(other)
        raise TypeError(f"cannot combine NCPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self.terms)
        add_into(acc, other.terms)
        return NCPoly._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        acc = dict(self.terms)
        add_into(acc, other.terms, Fraction(-1))
        return NCPoly._raw(acc)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return mul(self, self._coerce(other))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return mul(self._coerce(other), self)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = NCPoly.one()
        for _ in range(n):
            out = mul(out, self)
        return out

    def scale(self, c) -> "NCPoly":
        c = to_scalar(c)
        if not c:
            return NCPoly.zero()
        return NCPoly._raw({w: c * v for w, v in self.terms.items()})

    def max_weight(self, weights: Sequence[int]) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no weight")
        return max(sum(weights[i] for i in w) for w in self.terms)

    def homogeneous_part(self, weights: Sequence[int], weight: int) -> "NCPoly":
        return NCPoly._raw({w: c for w, c in self.terms.items()
                            if sum(weights[i] for i in w) == weight})


def mul(f: NCPoly, g: NCPoly) -> NCPoly:
    """Product in the free algebra: bilinear extension of concatenation."""
    acc: Terms = {}
    for u, a in f.terms.items():
        for v, b in g.terms.items():
            w = u + v
            c = acc.get(w, 0) + a * b
            if c:
                acc[w] = c
            else:
                acc.pop(w, None)
    return NCPoly._raw(acc)


def commutator(f: NCPoly, g: NCPoly) -> NCPoly:
    return mul(f, g) - mul(g, f)


def leading_word(f: NCPoly, weights: Sequence[int]) -> Word:
    """The wlex-maximal word of ``f``."""
    if not f.terms:
        raise ValueError("no leading word: zero polynomial")
    return max(f.terms, key=lambda w: (sum(weights[i] for i in w), w))


# -- literal syntax ---------------------------------------------------------

def format_terms(terms, format_word) -> str:
    if not terms:
        return "0"
    parts = []
    for k, (w, c) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        body = format_word(w)
        if a != 1:
            body = format_scalar(a) if not w else f"{format_scalar(a)} {body}"
        if k == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|([+\-−*]))")


def _tokens(text: str):
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial literal at {text[pos:]!r}")
        pos = m.end()
        num, name, op = m.groups()
        if num is not None:
            yield "num", num
        elif name is not None:
            yield "name", name
        else:
            yield "op", "-" if op == "−" else op


def parse_poly(text: str, gens: GeneratorSet) -> NCPoly:
    """Parse literals such as ``"1/3 * x0 x0 x0 - y1 y2"``.

    A term is an optional rational coefficient followed by generator names
    (juxtaposed or joined by ``*``); the bare literal ``1`` is the empty word.
    Names are matched case-sensitively.
    """
    acc: Terms = {}
    sign = 1
    coef = Fraction(1)
    word: List[int] = []
    have_factor = False
    expect_term = True

    def flush():
        nonlocal coef, word, have_factor, sign
        if not have_factor:
            raise ValueError(f"empty term in {text!r}")
        add_into(acc, {tuple(word): sign * coef})
        coef, word, have_factor, sign = Fraction(1), [], False, 1

    for kind, tok in _tokens(text):
        if kind == "op" and tok in "+-":
            if have_factor:
                flush()
            elif not expect_term:
                raise ValueError(f"dangling operator in {text!r}")
            if tok == "-":
                sign = -sign
            expect_term = True
        elif kind == "op":  # '*'
            if not have_factor:
                raise ValueError(f"'*' without left operand in {text!r}")
        elif kind == "num":
            coef *= Fraction(tok)
            have_factor = True
            expect_term = False
        else:
            if tok not in gens.names:
                raise ValueError(f"unknown generator {tok!r}")
            word.append(gens.index(tok))
            have_factor = True
            expect_term = False
    if have_factor:
        flush()
    elif text.strip():
        raise ValueError(f"dangling operator in {text!r}")
    return NCPoly(acc)
