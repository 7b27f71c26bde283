import json
import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from conftest import umbrella_hopf
from umbrella_hopf.freealg import GeneratorSet, NCPoly
from umbrella_hopf.hopf import (QuotientHopf, RefusedError, TensorPoly, check_coalgebra_axioms,
                                check_commutator_filtration, check_hopf_ideal, hamiltonian_trace,
                                nakayama_automorphism, verify_crossed_product, verify_nakayama)
from umbrella_hopf.liealg import ad_trace, block_matrix, so_basis, trace
from umbrella_hopf.rewrite import Presentation, pbw_monomial_count
from umbrella_hopf.umbrella import (HopfData, build_hopf_data, build_umbrella, build_wzz_example)


def T(*pairs):
    return TensorPoly(2, {k: c for k, c in pairs})


def polynomial_hopf(n=2):
    gens = GeneratorSet.from_pairs([(f"t{i}", 1) for i in range(n)])
    p = Presentation(gens, {})
    return p, HopfData.primitive(n)


# -- tensors ---------------------------------------------------------------------

def test_tensor_basics():
    a = TensorPoly.primitive(0)
    assert a - a == TensorPoly(2)
    assert not (a - a)
    with pytest.raises(TypeError):
        a + TensorPoly(3)
    with pytest.raises(ValueError):
        TensorPoly(1)
    p = TensorPoly.pure(NCPoly.word((0,)), NCPoly({(1,): 2, (): 1}))
    assert p == T((((0,), (1,)), 2), (((0,), ()), 1))


# -- coproduct -------------------------------------------------------------------

def test_coproduct_examples(um22):
    g = um22.generators
    x0, x1, y1 = (g.index(n) for n in ("x0", "x1", "y1"))
    assert um22.coproduct(NCPoly.one()) == T((((), ()), 1))
    assert um22.coproduct(g.parse("x0 x1")) == T(
        (((x0, x1), ()), 1), (((x0,), (x1,)), 1), (((x1,), (x0,)), 1), (((), (x0, x1)), 1))
    assert um22.coproduct(g.parse("y1")) == T(
        (((y1,), ()), 1), (((), (y1,)), 1), (((x0,), (x1,)), 1), (((x1,), (x0,)), -1))


def test_coproduct_components_normal(um22):
    g = um22.generators
    d = um22.coproduct(g.parse("y2 y1 x2 x1"))
    assert all(list(w) == sorted(w) for k in d.terms for w in k)


def test_delta_reduced_examples(um22):
    g = um22.generators
    x0, x1 = g.index("x0"), g.index("x1")
    for name in ("x0", "x1", "x2", "X1", "X2", "X3"):
        assert not um22.delta_reduced(g.parse(name))
    assert um22.delta_reduced(g.parse("y1")) == T((((x0,), (x1,)), 1), (((x1,), (x0,)), -1))
    assert um22.delta_reduced(g.parse("x0 x0")) == T((((x0,), (x0,)), 2))
    with pytest.raises(ValueError, match="counit"):
        um22.delta_reduced(g.parse("1 + x0"))


# -- order -------------------------------------------------------------------------

def test_order_examples(um22):
    g = um22.generators
    assert um22.order(g.parse("x1")) == 1
    assert um22.order(g.parse("y1")) == 2
    assert um22.order(g.parse("x0 x0 x0")) == 3
    assert um22.order(g.parse("1/3 x0 x0 x0")) == 3
    assert um22.order(g.parse("5")) == 0
    assert um22.order(g.parse("2 + x1")) == 1
    with pytest.raises(ValueError):
        um22.order(NCPoly.zero())
    with pytest.raises(ValueError, match="cutoff"):
        um22.order(g.parse("x0 x0 x0"), cutoff=2)


def test_order_agrees_with_iterated_coproduct(um22):
    g = um22.generators
    f = g.parse("y1 y2")
    assert um22.iterated_reduced(f, 3)
    assert not um22.iterated_reduced(f, 4)
    assert um22.iterated_reduced(f, 3).arity == 4


@settings(max_examples=40)
@given(st.data())
def test_order_subadditive(data):
    H = umbrella_hopf(2, 1)
    words = [w for w in H.normal_words(3) if w]
    u = data.draw(st.sampled_from(words))
    v = data.draw(st.sampled_from(words))
    uv = H.R.multiply(NCPoly.word(u), NCPoly.word(v))
    assert H.order(uv) <= H.order(NCPoly.word(u)) + H.order(NCPoly.word(v))


def test_low_order_monomials_counted_by_weight(um22):
    # linearly independent PBW monomials of order <= m number |{weight <= m}|
    words = [w for w in um22.normal_words(6)]
    orders = {w: um22.order(NCPoly.word(w)) for w in words}
    for m in range(5):
        assert sum(1 for w in words if orders[w] <= m) == pbw_monomial_count(um22.weights, m)


# -- primitives --------------------------------------------------------------------

def test_primitive_space_weight_one(um22):
    basis = um22.primitive_space(1)
    g = um22.generators
    assert len(basis) == 6
    assert {g.format(b) for b in basis} == {"x0", "x1", "x2", "X1", "X2", "X3"}


def test_primitive_space_stable(um22):
    assert len(um22.primitive_space(2)) == len(um22.primitive_space(3)) == 6
    for b in um22.primitive_space(3):
        assert not um22.delta_reduced(b)


# -- Hopf ideal ----------------------------------------------------------------------

def test_polynomial_hopf_algebra_passes():
    p, data = polynomial_hopf(3)
    assert check_hopf_ideal(p, data).passed
    H = QuotientHopf(p, data)
    assert check_coalgebra_axioms(H).passed
    rep = check_commutator_filtration(H, 7, 4)
    assert rep.passed and rep.details["worst_slack"] is None


def test_mutant_fails_and_is_refused():
    p = build_umbrella(2, 1, Fraction(1, 2))
    rep = check_hopf_ideal(p, build_hopf_data(block_matrix(2, 1)))
    assert not rep.passed
    assert [(f["relation"], f["map"]) for f in rep.failures] == [("y1,y2", "coproduct")]
    # residue is (c - 1/3) times the cross terms 3 x0x0⊗x0 + 3 x0⊗x0x0 of (Δx0)^3, at c = 1/2
    assert rep.failures[0]["residue"] == "1/2 x0 x0 ⊗ x0 + 1/2 x0 ⊗ x0 x0"
    with pytest.raises(RefusedError):
        QuotientHopf(p, build_hopf_data(block_matrix(2, 1)))


def test_non_confluent_refused():
    gens = GeneratorSet.from_pairs([("a", 1), ("b", 1), ("c", 1)])
    p = Presentation(gens, {(0, 1): gens.parse("c"), (1, 2): gens.parse("b")})
    with pytest.raises(RefusedError):
        check_hopf_ideal(p, HopfData.primitive(3))


def test_hopf_ideal_sound_on_random_ideal_elements(um22):
    rng = random.Random(7)
    p = um22.presentation
    words = [w for w in um22.normal_words(2)]
    done = 0
    while done < 50:
        u, v = rng.choice(words), rng.choice(words)
        pair = rng.choice(p.pairs)
        g = p.relation(*pair)
        elem = NCPoly.word(u) * g * NCPoly.word(v)
        if elem.max_weight(um22.weights) > 4:
            continue
        assert not um22.coproduct(elem)
        done += 1


# -- axioms ------------------------------------------------------------------------------

def test_axioms_um22(um22):
    rep = check_coalgebra_axioms(um22)
    assert rep.passed
    assert rep.details["generators"] == 8 and rep.details["random_monomials"] >= 40


def test_axioms_wzz():
    for lam in (0, 2):
        p, data = build_wzz_example(lam)
        assert check_coalgebra_axioms(QuotientHopf(p, data)).passed


def test_bad_antipode_caught_twice():
    A = block_matrix(2, 1)
    p = build_umbrella(2, 1)
    data = build_hopf_data(A)
    y1 = p.generators.index("y1")
    data.antipode[y1] = NCPoly.word((y1,))
    # S no longer maps the ideal into itself
    ideal = check_hopf_ideal(p, data)
    assert ideal.failures and {f["map"] for f in ideal.failures} == {"antipode"}
    with pytest.raises(RefusedError):
        QuotientHopf(p, data)
    H = QuotientHopf(p, data, verify=False)
    rep = check_coalgebra_axioms(H, samples=0)
    assert {(f["monomial"], f["axiom"]) for f in rep.failures} == {("y1", "antipode")}


def test_axioms_seed_reproducible(um22):
    a = check_coalgebra_axioms(um22, seed=3).to_dict(timing=False)
    b = check_coalgebra_axioms(um22, seed=3).to_dict(timing=False)
    assert a == b


# -- commutator filtration -------------------------------------------------------------

def test_commutator_filtration_values(um22):
    g = um22.generators
    c = um22.R.multiply(g.parse("y1"), g.parse("y2")) - um22.R.multiply(g.parse("y2"), g.parse("y1"))
    assert c == g.parse("1/3 x0 x0 x0")
    assert um22.order(c) == 3 == 2 + 2 - 1


@pytest.mark.slow
def test_commutator_filtration_um44(um44):
    assert check_commutator_filtration(um44, 1, 3).passed


# -- Nakayama ----------------------------------------------------------------------------

def test_nakayama_calabi_yau_identity(um44):
    sigma = nakayama_automorphism(um44)
    assert all(img == NCPoly.word((g,)) for g, img in sigma.images.items())
    rep = verify_nakayama(um44, sigma)
    assert rep.passed and rep.details["calabi_yau"]


def test_nakayama_e55():
    H = umbrella_hopf(5, 2)
    g = H.generators
    e55 = g.index("X15")
    sigma = nakayama_automorphism(H)
    assert sigma.images[e55] == g.parse("X15 - 2")
    assert verify_nakayama(H, sigma).passed
    wrong = nakayama_automorphism(H, {e55: 1})
    rep = verify_nakayama(H, wrong)
    assert [f["check"] for f in rep.failures] == ["agreement"]


@pytest.mark.parametrize("r,s", [(r, s) for r in range(1, 6) for s in range(r // 2 + 1)])
def test_nakayama_family(r, s):
    H = umbrella_hopf(r, s)
    rep = verify_nakayama(H, nakayama_automorphism(H))
    assert rep.passed


def test_graded_trace_oracle():
    # trace of [M,-] on the generator span: -tr(M) on x's, -tr(M) on y's, tr(ad M) on so(B)
    H = umbrella_hopf(5, 2)
    L = so_basis(block_matrix(5, 2))
    for a, M in enumerate(L.basis, start=1):
        assert hamiltonian_trace(H, 5 + a) == -2 * trace(M) + ad_trace(L, M)


def test_shift_by_trace_is_always_an_automorphism():
    H = umbrella_hopf(3, 1)
    L = so_basis(block_matrix(3, 1))
    shift = {3 + a: 7 * trace(M) for a, M in enumerate(L.basis, start=1)}
    rep = verify_nakayama(H, nakayama_automorphism(H, shift))
    assert rep.failures
    assert all(f["check"] == "agreement" for f in rep.failures)


# -- crossed product -------------------------------------------------------------------

def test_crossed_product_um22(um22):
    rep = verify_crossed_product(um22, 4)
    assert rep.passed
    assert rep.details["action_orientation_matches"]["[M,-]"] == rep.details["identities_checked"]["vi"]


def test_crossed_product_um44():
    rep = verify_crossed_product(umbrella_hopf(4, 2), 3)
    assert rep.passed


def test_crossed_product_zero_form():
    rep = verify_crossed_product(umbrella_hopf(2, 0), 3)
    assert rep.passed


@pytest.mark.parametrize("a", range(1, 7))
def test_alternating_binomial(a):
    assert sum(comb(a, j) * (-1) ** (a - j) for j in range(a + 1)) == 0


def test_reports_serialize(um22):
    for rep in (check_coalgebra_axioms(um22), verify_nakayama(um22, nakayama_automorphism(um22))):
        d = rep.to_dict()
        assert json.loads(json.dumps(d)) == d
        assert set(d) == {"check", "target", "verdict", "failures", "details", "elapsed_ms"}
        assert d["target"] == {"family": "UM", "r": 2, "s": 1}
