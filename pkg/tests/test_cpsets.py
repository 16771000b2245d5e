import pytest
from hypothesis import given
from hypothesis import strategies as st

from cpsphere.cpsets import (NotPairedInput, dual_pairs, forcing, forcing_complement,
                             maximal_cp_set, paired_subsets, profile)
from cpsphere.formula import EMPTY, CpSet, dual, is_paired, parse
from cpsphere.weights import Ordering, cmp_xel, weight_of_formula

from conftest import models, paired_cpsets

G = parse("false =>[e1, e2, ~e1, ~e2] false").cpset


def test_profile_partition(nixon):
    p = profile(nixon, "x", "y1", G)
    assert set(p.agreement) | set(p.disagreement) == set(G)
    assert not set(p.agreement) & set(p.disagreement)
    assert p.disagreement == EMPTY
    assert profile(nixon, "x", "v1", G).disagreement == G


def test_forcing(nixon):
    assert forcing(nixon, "v1", G) == CpSet.of(parse("e1"), parse("e2"))
    assert forcing_complement(nixon, "x", G) == CpSet.of(parse("e1"), parse("e2"))


def test_paired_subsets():
    subs = paired_subsets(G)
    assert len(subs) == 4 and subs[0] == EMPTY and subs[-1] == G
    assert all(is_paired(s) for s in subs)
    with pytest.raises(NotPairedInput):
        dual_pairs(CpSet.of(parse("p")))


def test_maximal_on_fixture(nixon):
    # ~e1, ~e2 are lighter than e1, e2, so the maximal set keeps e1, e2
    assert maximal_cp_set(nixon, "x", G) == CpSet.of(parse("e1"), parse("e2"))


def test_maximal_tie():
    from cpsphere.model import load_model
    m = load_model("centering: weak\nworlds: a b\nval p: b\n"
                   "spheres a: {a b}\nspheres b: {b}\n")
    g = CpSet.of(parse("p"), parse("~p"))
    assert maximal_cp_set(m, "a", g) == CpSet.of(parse("p"))  # the member false at a
    assert maximal_cp_set(m, "a", g, example_compatible=True) == g


@given(models(), paired_cpsets(), st.sampled_from("iad"))
def test_maximal_keeps_one_per_pair(m, g, u):
    for x in range(m.n):
        gm = maximal_cp_set(m, x, g, u)
        assert len(gm) == len(g) // 2
        for f in gm:
            assert dual(f) not in gm
