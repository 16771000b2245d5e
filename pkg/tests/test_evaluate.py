import pytest
from hypothesis import given
from hypothesis import strategies as st

from cpsphere.evaluate import (Evaluator, NotPairedError, sat, sat_variant, valid_in_model)
from cpsphere.formula import modal_depth, parse
from cpsphere.model import load_model

import oracle
from conftest import formulas, models

GAMMA = "[e1, e2, ~e1, ~e2]"
GAMMA2 = "[e1, e2, ~e1, ~e2, l, ~l]"

# a and b differ: the inner plausibility is read in the original model under a
A_WITNESS = """centering: centered
worlds: w0 w1 w2
val p: w1
val q: w1 w2
spheres w0: {w0} {w0 w1 w2}
spheres w1: {w1} {w0 w1 w2}
spheres w2: {w2} {w1 w2} {w0 w1 w2}
"""
A_FORMULA = "(p <=[q, ~q] q) =>[p, ~p] p"

# c and b differ: c has already re-ranked the spheres of the inner world
C_WITNESS = A_WITNESS.replace("spheres w0: {w0} {w0 w1 w2}", "spheres w0: {w0} {w0 w1}")
C_FORMULA = "p =>[q, ~q] (~p =>[p, ~p] q)"


@pytest.mark.parametrize("u", "iad")
def test_fixture_verdicts(nixon, u):
    assert sat(nixon, "x", parse(f"p =>{GAMMA} h"), u)
    assert not sat(nixon, "x", parse(f"p =>{GAMMA2} h"), u)
    assert not sat(nixon, "x", parse("p =>[] h"), u)
    assert sat(nixon, "x", parse("p =>[] ~h"), u)


def test_weak_fixture_divergence(nixon_weak):
    f = parse("p =>[e1, ~e1] h")
    assert sat(nixon_weak, "x", f, "i")
    assert not sat(nixon_weak, "x", f, "d")
    assert not sat(nixon_weak, "x", f, "a")
    M = oracle.from_model(nixon_weak)
    assert [oracle.sat(M, "x", f, u) for u in "iad"] == [True, False, False]


def test_not_paired(nixon):
    with pytest.raises(NotPairedError):
        sat(nixon, "x", parse("p =>[e1] h"))
    assert sat(nixon, "x", parse("p =>[e1] h"), evaluator=Evaluator(check_paired=False)) in \
        (True, False)


def test_vacuous_and_plausibility(nixon):
    assert sat(nixon, "x", parse("false =>[] p"))
    assert sat(nixon, "x", parse("~p <=[] p"))
    assert not sat(nixon, "x", parse("h <=[] ~p"))


def test_trace(nixon):
    verdict, trace = sat(nixon, "x", parse(f"p =>{GAMMA} h"), "d", trace=True)
    assert verdict
    text = trace.render()
    assert "gen 1: update at x" in text
    assert "spheres {x} {x y1}" in text
    assert trace.root.generation == 0 and trace.root.children


def test_valid_in_model(nixon):
    assert valid_in_model(nixon, parse("p -> p"))
    assert not valid_in_model(nixon, parse("p"))


def test_variant_witness_a():
    m = load_model(A_WITNESS)
    f = parse(A_FORMULA)
    got = [sat_variant(m, "w0", f, "d", v) for v in "abc"]
    assert got == [False, True, True]
    M = oracle.from_model(m)
    assert [oracle.sat(M, "w0", f, "d", v) for v in "abc"] == got


def test_variant_witness_c():
    m = load_model(C_WITNESS)
    f = parse(C_FORMULA)
    got = [sat_variant(m, "w0", f, "d", v) for v in "abc"]
    assert got == [False, False, True]
    M = oracle.from_model(m)
    assert [oracle.sat(M, "w0", f, "d", v) for v in "abc"] == got


def test_variant_mismatch_rejected(nixon):
    with pytest.raises(ValueError):
        sat_variant(nixon, "x", parse("p"), "d", "a", evaluator=Evaluator())
    with pytest.raises(ValueError):
        Evaluator(variant="z")


@given(models(max_worlds=3), formulas(max_depth=2), st.sampled_from("iad"))
def test_matches_oracle(m, f, u):
    M = oracle.from_model(m)
    ev = Evaluator()
    for x in range(m.n):
        assert sat(m, x, f, u, evaluator=ev) == oracle.sat(M, m.worlds[x], f, u)


@given(models(max_worlds=3), formulas(max_depth=2), st.sampled_from("ac"))
def test_variants_match_oracle(m, f, v):
    M = oracle.from_model(m)
    for x in range(m.n):
        assert sat_variant(m, x, f, "d", v) == oracle.sat(M, m.worlds[x], f, "d", v)


@given(models(max_worlds=3), formulas(max_depth=1), st.sampled_from("iad"))
def test_variants_coincide_at_depth_one(m, f, u):
    for x in range(m.n):
        assert len({sat_variant(m, x, f, u, v) for v in "abc"}) == 1
