"""Rival ways of prioritising a cp-set, for side-by-side comparison.

* strict: only worlds agreeing with x on every member are candidates;
* naive counting: rank worlds by how many members they agree with x on;
* maximal supersets: partial preorder by inclusion of agreement sets;
* disagreement update: the package's own semantics.

None of these require the cp-set to be paired.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .evaluate import Evaluator
from .formula import CpCounterfactual, CpSet, Formula, to_text
from .model import Centering, SphereModel, bits, normalize_chain
from .update import UpdateTag, world_index
from .weights import cmp_lex, weight_of_set

__all__ = ["eval_strict", "eval_naive_counting", "eval_maximal_supersets", "eval_disagreement",
           "comparison_table", "ComparisonRow", "nc_as_agreement_demo", "DemoReport",
           "closer_nc", "closer_ms", "closer_weighted", "increment_holds",
           "equivalence_holds"]


def _setup(m, x, a, b, g, evaluator):
    ev = evaluator or Evaluator(check_paired=False)
    xi = world_index(m, x)
    chain = m.chain(xi)
    reach = chain[-1]
    masks = [ev.mask(m, G, UpdateTag.D, reach | (1 << xi)) for G in g]
    amask = ev.mask(m, a, UpdateTag.D, reach)
    bmask = ev.mask(m, b, UpdateTag.D, reach)
    return ev, xi, chain, reach, masks, amask, bmask


def _agreement(masks, xi, y) -> int:
    """Bitmask over member positions on which ``y`` agrees with ``xi``."""
    out = 0
    for j, mk in enumerate(masks):
        if (mk >> y & 1) == (mk >> xi & 1):
            out |= 1 << j
    return out


def eval_strict(m: SphereModel, x, a: Formula, b: Formula, g: CpSet, evaluator=None) -> bool:
    """Lewis counterfactual over the worlds that agree with ``x`` on all of ``g``."""
    _, xi, chain, reach, masks, amask, bmask = _setup(m, x, a, b, g, evaluator)
    full = (1 << len(masks)) - 1
    keep = 0
    for y in bits(reach):
        if _agreement(masks, xi, y) == full:
            keep |= 1 << y
    restricted = normalize_chain(s & keep for s in chain if s & keep)
    if not restricted:
        return True
    return kernels.lewis_cf(restricted, amask & keep, bmask)


def _origrank(chain, y):
    return next(i for i, s in enumerate(chain) if s >> y & 1)


def _chain_from_keys(keys: dict) -> tuple:
    out, acc = [], 0
    order = sorted(keys, key=lambda y: keys[y])
    for i, y in enumerate(order):
        acc |= 1 << y
        if i + 1 == len(order) or keys[order[i + 1]] != keys[y]:
            out.append(acc)
    return tuple(out)


def eval_naive_counting(m: SphereModel, x, a: Formula, b: Formula, g: CpSet,
                        evaluator=None) -> bool:
    """Lewis counterfactual after ranking by the number of agreed members."""
    ev, xi, chain, reach, masks, amask, bmask = _setup(m, x, a, b, g, evaluator)
    keys = {y: (-bin(_agreement(masks, xi, y)).count("1"), _origrank(chain, y))
            for y in bits(reach)}
    return kernels.lewis_cf(_chain_from_keys(keys), amask, bmask)


def eval_maximal_supersets(m: SphereModel, x, a: Formula, b: Formula, g: CpSet,
                           evaluator=None) -> bool:
    """Counterfactual over the preorder of agreement-set inclusion.

    ``y`` is at least as close as ``v`` when its agreement set strictly
    contains that of ``v``, or they are equal and ``y`` is no further out in
    the original spheres.  True iff every A-world ``w`` has an A-world
    ``v <= w`` all of whose A-predecessors satisfy B.
    """
    _, xi, chain, reach, masks, amask, bmask = _setup(m, x, a, b, g, evaluator)
    agree = {y: _agreement(masks, xi, y) for y in bits(reach)}
    rank = {y: _origrank(chain, y) for y in agree}

    def le(y, v):
        ay, av = agree[y], agree[v]
        if ay == av:
            return rank[y] <= rank[v]
        return av & ~ay == 0  # strict superset

    aw = [y for y in agree if amask >> y & 1]
    for w in aw:
        if not any(le(v, w) and all(bmask >> z & 1 for z in aw if le(z, v)) for v in aw):
            return False
    return True


def eval_disagreement(m: SphereModel, x, a: Formula, b: Formula, g: CpSet,
                      evaluator=None) -> bool:
    """The disagreement update, without the pairedness check."""
    ev = evaluator or Evaluator(check_paired=False)
    xi = world_index(m, x)
    return ev.truth(m, xi, CpCounterfactual(a, g, b), UpdateTag.D)


@dataclass(frozen=True)
class ComparisonRow:
    formula: str
    cp: bool
    nc: bool
    ms: bool
    dis: bool


def comparison_table(m: SphereModel, x, rows) -> list:
    """One row of verdicts (strict, naive counting, maximal supersets, disagreement) per triple."""
    ev = Evaluator(check_paired=False)
    out = []
    for a, b, g in rows:
        out.append(ComparisonRow(to_text(CpCounterfactual(a, g, b)),
                                 eval_strict(m, x, a, b, g, ev),
                                 eval_naive_counting(m, x, a, b, g, ev),
                                 eval_maximal_supersets(m, x, a, b, g, ev),
                                 eval_disagreement(m, x, a, b, g, ev)))
    return out


# -- dual worlds -------------------------------------------------------------------

@dataclass(frozen=True)
class DemoReport:
    augmented: SphereModel
    equal_weights: bool  # every member weighs the same in the augmented model
    agreement_verdict: bool
    naive_verdict: bool

    @property
    def match(self) -> bool:
        return self.agreement_verdict == self.naive_verdict


def _augment(m: SphereModel, xi: int):
    """Add a companion with every atom flipped next to each world of S(x)."""
    reach = m.reach(xi)
    olds = list(bits(reach))
    n = m.n
    comp = {y: n + i for i, y in enumerate(olds)}
    worlds = m.worlds + tuple(f"{m.worlds[y]}~" for y in olds)
    val = []
    for atom, mask in m.valuation:
        extra = 0
        for y in olds:
            if not mask >> y & 1:
                extra |= 1 << comp[y]
        val.append((atom, mask | extra))

    def widen(s):
        out = s
        for y in bits(s & reach):
            out |= 1 << comp[y]
        return out
    systems = list(m.systems)
    systems[xi] = tuple(widen(s) for s in m.chain(xi))
    systems += [((1 << comp[y]),) for y in olds]
    return SphereModel(worlds, tuple(val), tuple(systems), Centering.WEAK), comp

def nc_as_agreement_demo(m: SphereModel, x, a: Formula, b: Formula, g: CpSet) -> DemoReport:
    """Agreement update on a model padded with atom-flipped companion worlds.

    Companions make every literal member weigh the same, are kept at their
    original's updated level, and never serve as candidate worlds.
    """
    xi = world_index(m, x)
    aug, comp = _augment(m, xi)
    ev = Evaluator(check_paired=False)
    chain = aug.chain(xi)
    reach_all = chain[-1]
    weights = [weight_of_set(aug, xi, CpSet((G,)), UpdateTag.A, ev)[0] for G in g]
    equal = len(set(weights)) <= 1
    originals = m.reach(xi)
    masks = [ev.mask(aug, G, UpdateTag.A, reach_all) for G in g]
    member_keys = {}
    for y in bits(originals):
        agreed = CpSet(tuple(G for G, mk in zip(g, masks)
                             if (mk >> y & 1) == (mk >> xi & 1)))
        member_keys[y] = weight_of_set(aug, xi, agreed, UpdateTag.A, ev)
    # descending by agreement weight, ties by original rank
    levels = sorted(set(member_keys.values()), key=lambda w: tuple(tuple(-c for c in p) for p in w),
                    reverse=True)
    lvl = {w: i for i, w in enumerate(levels)}
    keys = {y: (lvl[member_keys[y]], _origrank(m.chain(xi), y)) for y in member_keys}
    orig_chain = _chain_from_keys(keys)
    upd = tuple(s | sum(1 << comp[y] for y in bits(s)) for s in orig_chain)
    amask = ev.mask(aug, a, UpdateTag.A, reach_all) & originals
    bmask = ev.mask(aug, b, UpdateTag.A, reach_all)
    verdict = kernels.lewis_cf(upd, amask, bmask)
    return DemoReport(aug.with_chain(xi, upd), equal, verdict,
                      eval_naive_counting(m, x, a, b, g))

# -- set orders: Increment and Equivalence ------------------------------------------

def closer_nc(gamma: frozenset, delta: frozenset) -> bool:
    """Naive counting: agreeing on ``gamma`` is at least as close as on ``delta``."""
    return len(gamma) >= len(delta)

def closer_ms(gamma: frozenset, delta: frozenset) -> bool:
    return delta <= gamma

def closer_weighted(m: SphereModel, x, tag, evaluator=None):
    """Closeness induced by an update on the relevant sets (agreement or disagreement).

    Agreement sets rank heavier-first, disagreement sets lighter-first.
    """
    ev = evaluator or Evaluator(check_paired=False)
    tag = UpdateTag(tag)

    def closer(gamma, delta):
        wg = weight_of_set(m, x, CpSet(tuple(gamma)), tag, ev)
        wd = weight_of_set(m, x, CpSet(tuple(delta)), tag, ev)
        order = cmp_lex(wg, wd)
        return order >= 0 if tag is UpdateTag.A else order <= 0
    return closer

def increment_holds(closer, gamma, delta) -> bool:
    """If ``gamma`` is a subset of ``delta`` then ``delta`` is at least as close."""
    return not set(gamma) <= set(delta) or closer(delta, gamma)

def equivalence_holds(closer, gamma, old, new) -> bool:
    """Swapping ``old`` for an equivalent ``new`` leaves the set equally close."""
    delta = (set(gamma) - {old}) | {new}
    return closer(gamma, delta) and closer(delta, gamma)
