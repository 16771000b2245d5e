import pytest
from hypothesis import given

from cpsphere.formula import (EMPTY, FALSE, TRUE, Atom, CpCounterfactual, CpPlausibility,
                              CpSet, Implies, ParseError, atoms_of, conj, cp_sets, cpl, disj,
                              dual, is_paired, modal_depth, neg, parse, size, subformulas,
                              to_text)

from conftest import formulas

p, q = Atom("p"), Atom("q")


def test_parse_connectives():
    assert parse("p -> q") == Implies(p, q)
    assert parse("~p") == neg(p)
    assert parse("p & q") == conj(p, q)
    assert parse("p | q") == disj(p, q)
    assert parse("true") == TRUE and parse("false") == FALSE


def test_parse_conditionals():
    f = parse("p =>[q, ~q] q")
    assert isinstance(f, CpCounterfactual)
    assert f.cpset == CpSet.of(q, neg(q))
    g = parse("p <=[] q")
    assert isinstance(g, CpPlausibility) and g.cpset == EMPTY


def test_precedence():
    assert parse("p & q | p -> q") == Implies(disj(conj(p, q), p), q)
    assert parse("p -> q -> p") == Implies(p, Implies(q, p))


def test_cpset_is_a_set():
    assert CpSet.of(p, q, p) == CpSet.of(q, p)
    assert len(CpSet.of(p, q, p)) == 2


@pytest.mark.parametrize("bad", ["p ->", "(p", "p =>[q q", "p $ q", ""])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse(bad)


@given(formulas())
def test_roundtrip(f):
    assert parse(to_text(f)) == f


@given(formulas())
def test_dual_involutive(f):
    assert dual(dual(f)) == f
    assert dual(f) != f


def test_dual_on_literals():
    assert dual(p) == neg(p)
    assert dual(neg(p)) == p
    assert dual(neg(neg(p))) == neg(neg(neg(p)))


def test_paired():
    assert is_paired(CpSet.of(p, neg(p)))
    assert not is_paired(CpSet.of(p, q, neg(p)))
    assert is_paired(EMPTY)


def test_measures():
    f = parse("(p <=[q, ~q] q) =>[p, ~p] p")
    assert size(f) == 5
    assert modal_depth(f) == 2
    assert cpl(f) == 2
    assert cpl(parse("p =>[] q")) == 0
    assert atoms_of(f) == {"p", "q"}
    assert len(cp_sets(f)) == 2
    assert list(subformulas(parse("p -> q")))[1:] == [p, q]


def test_modal_depth_counts_cp_members():
    f = parse("p =>[(q =>[] p), ~(q =>[] p)] q")
    assert modal_depth(f) == 2
