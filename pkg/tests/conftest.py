import os
import sys

import pytest
from hypothesis import settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from cpsphere.fixtures import load_fixture  # noqa: E402
from cpsphere.formula import (FALSE, Atom, CpCounterfactual, CpPlausibility, CpSet,  # noqa: E402
                              Implies, neg)
from cpsphere.model import Centering, SphereModel  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def nixon():
    return load_fixture("nixon.sph")


@pytest.fixture(scope="session")
def nixon_weak():
    return load_fixture("nixon_weak.sph")


# -- strategies -------------------------------------------------------------------

@st.composite
def chains(draw, n, x, weak):
    """Random strictly nested chain around world ``x``."""
    others = [i for i in range(n) if i != x]
    ranks = {y: draw(st.integers(0, n - 1)) for y in others}
    if weak:
        first = draw(st.sets(st.sampled_from(others))) if others else set()
        for y in first:
            ranks[y] = -1
    out, acc = [], 1 << x
    if not any(r == -1 for r in ranks.values()):
        out.append(acc)
    for level in sorted(set(ranks.values())):
        for y, r in ranks.items():
            if r == level:
                acc |= 1 << y
        out.append(acc)
    # drop unreachable tail at random
    keep = draw(st.integers(1, len(out)))
    return tuple(out[:keep])


@st.composite
def models(draw, max_worlds=4, atoms=("p", "q"), centering=None):
    n = draw(st.integers(1, max_worlds))
    weak = (draw(st.booleans()) if centering is None
            else Centering(centering) is Centering.WEAK)
    val = tuple((a, draw(st.integers(0, (1 << n) - 1))) for a in atoms)
    systems = tuple(draw(chains(n, x, weak)) for x in range(n))
    return SphereModel(tuple(f"w{i}" for i in range(n)), val, systems,
                       Centering.WEAK if weak else Centering.CENTERED)


def literals(atoms=("p", "q")):
    return st.sampled_from([Atom(a) for a in atoms] + [neg(Atom(a)) for a in atoms])


def paired_cpsets(atoms=("p", "q")):
    pairs = [(Atom(a), neg(Atom(a))) for a in atoms]
    return st.sets(st.sampled_from(pairs)).map(
        lambda ps: CpSet(tuple(f for pr in ps for f in pr)))


def formulas(max_depth=2, atoms=("p", "q")):
    leaves = st.sampled_from([Atom(a) for a in atoms] + [FALSE])

    def extend(inner, depth):
        if depth == 0:
            return st.recursive(leaves, lambda c: st.builds(Implies, c, c), max_leaves=4)
        sub = extend(inner, depth - 1)
        return st.recursive(
            sub,
            lambda c: st.one_of(
                st.builds(Implies, c, c),
                st.builds(CpCounterfactual, sub, paired_cpsets(atoms), sub),
                st.builds(CpPlausibility, sub, paired_cpsets(atoms), sub)),
            max_leaves=3)
    return extend(None, max_depth)


# -- acceptance summary -------------------------------------------------------------

_CRITERIA: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, text = mark.args
    ok, secs = _CRITERIA.get(n, (True, 0.0))
    if rep.when == "call":
        secs += rep.duration
    _CRITERIA[n] = (ok and not rep.failed, secs)
    _CRITERIA.setdefault(("text", n), text)


def pytest_terminal_summary(terminalreporter):
    nums = sorted(k for k in _CRITERIA if isinstance(k, int))
    if not nums:
        return
    terminalreporter.section("acceptance criteria")
    for n in nums:
        ok, secs = _CRITERIA[n]
        terminalreporter.write_line(
            f"criterion {n}: {'PASS' if ok else 'FAIL'} ({secs:.1f} s) {_CRITERIA[('text', n)]}")
