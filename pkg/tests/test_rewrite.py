import pytest
from hypothesis import given, strategies as st

from umbrella_hopf.freealg import GeneratorSet, NCPoly, is_sorted_word
from umbrella_hopf.rewrite import (Presentation, PresentationError, ReductionSystem,
                                   check_confluence, enumerate_normal_words, is_pbw,
                                   normal_words, overlap_ambiguities, pbw_monomial_count)
from umbrella_hopf.umbrella import build_umbrella

UM22 = build_umbrella(2, 1)
R22 = ReductionSystem(UM22)
check_confluence(R22)
G = UM22.generators

um_words = st.lists(st.integers(0, len(G) - 1), max_size=6).map(tuple)
um_polys = st.dictionaries(um_words, st.fractions(-3, 3, max_denominator=3), max_size=3).map(NCPoly)


def three(names_weights, brackets):
    gens = GeneratorSet.from_pairs(names_weights)
    return Presentation(gens, {k: gens.parse(v) for k, v in brackets.items()})


def test_rules_orient_descending_pairs():
    rule = R22.rules[(G.index("y1"), G.index("y2"))]
    assert rule.lhs == (G.index("y2"), G.index("y1"))
    assert G.format(rule.rhs) == "y1 y2 - 1/3 x0 x0 x0"


def test_normal_form_examples():
    assert G.format(R22.normal_form(G.parse("y2 y1"))) == "y1 y2 - 1/3 x0 x0 x0"
    assert G.format(R22.normal_form(G.parse("x2 x1"))) == "x1 x2 - x0"
    assert R22.normal_form(G.parse("x1 x0")) == G.parse("x0 x1")
    assert R22.normal_form(NCPoly.zero()) == NCPoly.zero()


def test_condition_one_rejected():
    p = three([("a", 2), ("b", 1)], {})
    with pytest.raises(PresentationError, match=r"condition \(1\)"):
        ReductionSystem(p)


def test_condition_two_rejected():
    p = three([("a", 1), ("b", 1), ("c", 2)], {(0, 1): "c"})
    with pytest.raises(PresentationError, match=r"condition \(2\)"):
        ReductionSystem(p)


def test_bad_pair_index():
    gens = GeneratorSet.from_pairs([("a", 1), ("b", 1)])
    with pytest.raises(PresentationError):
        Presentation(gens, {(1, 0): NCPoly.zero()})


def test_non_confluent_residue():
    # [a,b] = c, [b,c] = b, [a,c] = 0 breaks the Jacobi identity;
    # bracket sum = [c,c] + [b,a] + 0 = -c, so the residue is +c
    p = three([("a", 1), ("b", 1), ("c", 1)], {(0, 1): "c", (1, 2): "b"})
    R = ReductionSystem(p)
    rep = check_confluence(R)
    assert not rep.confluent and R.confluent is False
    assert [(f.i, f.j, f.k) for f in rep.failures] == [(0, 1, 2)]
    assert rep.failures[0].residue == p.generators.parse("c")
    with pytest.raises(ValueError):
        enumerate_normal_words(R, 2)
    assert not is_pbw(R)


def test_lie_presentation_confluent():
    # sl2: [e,f] = h, [h,e] = 2e, [h,f] = -2f with order e < f < h
    p = three([("e", 1), ("f", 1), ("h", 1)], {(0, 1): "h", (0, 2): "-2 e", (1, 2): "2 f"})
    assert is_pbw(ReductionSystem(p))


def test_confluence_report_shape():
    d = check_confluence(ReductionSystem(UM22)).to_dict()
    assert d["triples_total"] == 56 and d["confluent"] and d["triples_failed"] == []
    assert len(overlap_ambiguities(R22)) == 56


@given(um_words)
def test_strategies_agree(w):
    f = NCPoly.word(w)
    left = R22.normal_form(f, "leftmost")
    assert R22.normal_form(f, "rightmost") == left
    stepped, _ = R22.reduce_stepwise(f, "leftmost")
    assert stepped == left
    stepped, _ = R22.reduce_stepwise(f, "rightmost")
    assert stepped == left


@given(um_polys)
def test_normal_form_is_projection(f):
    nf = R22.normal_form(f)
    assert all(is_sorted_word(w) for w in nf.terms)
    assert R22.normal_form(nf) == nf


@given(um_polys, um_polys, st.fractions(-3, 3, max_denominator=3))
def test_normal_form_linear(f, g, c):
    assert R22.normal_form(f + g.scale(c)) == R22.normal_form(f) + R22.normal_form(g).scale(c)


@given(um_words, um_words, st.sampled_from(UM22.pairs))
def test_ideal_elements_reduce_to_zero(u, v, pair):
    g = UM22.relation(*pair)
    assert not R22.normal_form(NCPoly.word(u) * g * NCPoly.word(v))


def _all_word_count(weights, cutoff):
    # ways[t] = number of words of exact weight t
    ways = [1] + [0] * cutoff
    for t in range(1, cutoff + 1):
        ways[t] = sum(ways[t - w] for w in weights if w <= t)
    return sum(ways)


@given(um_words)
def test_reduction_terminates_within_bound(w):
    # the wlex-greatest reducible word strictly drops with every rewrite and
    # weights never grow, so steps <= number of non-normal words of weight <= weight(w)
    weight = G.weight(w)
    bound = _all_word_count(G.weights, weight) - pbw_monomial_count(G.weights, weight)
    _, steps = R22.reduce_stepwise(NCPoly.word(w), max_steps=bound)
    assert steps <= bound


def test_stepwise_counts_known_case():
    # x2 x1 -> x1 x2 - x0: one rewrite
    _, steps = R22.reduce_stepwise(G.parse("x2 x1"))
    assert steps == 1
    with pytest.raises(RuntimeError):
        R22.reduce_stepwise(G.parse("y2 y1 x2 x1 X3 X2"), max_steps=1)


def test_normal_word_counts():
    assert enumerate_normal_words(R22, 0) == 1
    assert enumerate_normal_words(R22, 1) == 1 + 6
    # weight 2: 21 products of two weight-1 letters plus y1, y2
    assert enumerate_normal_words(R22, 2) == 1 + 6 + 23
    n, words = enumerate_normal_words(R22, 2, return_words=True)
    assert n == len(words) == len(set(words))


@pytest.mark.parametrize("weights,cutoff,expected", [
    ((1,), 5, 6),
    ((1, 1), 2, 6),
    ((2,), 3, 2),
    ((1, 2), 4, 9),
])
def test_pbw_count_small(weights, cutoff, expected):
    assert pbw_monomial_count(weights, cutoff) == expected
    assert len(normal_words(weights, cutoff)) == expected


def test_negative_cutoff():
    with pytest.raises(ValueError):
        pbw_monomial_count((1,), -1)
