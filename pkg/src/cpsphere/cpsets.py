"""Forcing, agreement and disagreement sets; paired subsets; maximal cp-sets."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .formula import CpSet, dual, is_paired
from .model import SphereModel
from .update import UpdateTag, world_index
from .weights import Ordering, cmp_xel, weight_of_formula

__all__ = ["WorldProfile", "profile", "forcing", "forcing_complement", "paired_subsets",
           "dual_pairs", "maximal_cp_set", "NotPairedInput"]


class NotPairedInput(ValueError):
    pass


@dataclass(frozen=True)
class WorldProfile:
    world: str
    forcing: CpSet
    agreement: CpSet
    disagreement: CpSet


def _evaluator(evaluator):
    if evaluator is not None:
        return evaluator
    from .evaluate import Evaluator
    return Evaluator(check_paired=False)


def forcing(m: SphereModel, y, g: CpSet, u="d", evaluator=None) -> CpSet:
    """Members of ``g`` true at ``y``."""
    ev = _evaluator(evaluator)
    yi, tag = world_index(m, y), UpdateTag(u)
    return CpSet(tuple(f for f in g if ev.truth(m, yi, f, tag)))


def profile(m: SphereModel, x, y, g: CpSet, u="d", evaluator=None) -> WorldProfile:
    ev = _evaluator(evaluator)
    xi, yi, tag = world_index(m, x), world_index(m, y), UpdateTag(u)
    force, agree, disagree = [], [], []
    for f in g:
        ty = ev.truth(m, yi, f, tag)
        if ty:
            force.append(f)
        (agree if ty == ev.truth(m, xi, f, tag) else disagree).append(f)
    return WorldProfile(m.worlds[yi], CpSet(tuple(force)), CpSet(tuple(agree)),
                        CpSet(tuple(disagree)))


def forcing_complement(m: SphereModel, x, g: CpSet, u="d", evaluator=None) -> CpSet:
    """Members of ``g`` false at ``x``."""
    return g - forcing(m, x, g, u, evaluator)


def dual_pairs(g: CpSet) -> list:
    """Members grouped as ``(A, dual A)`` pairs, in member order."""
    if not is_paired(g):
        raise NotPairedInput(f"{g} is not paired")
    seen, pairs = set(), []
    for f in g:
        if f not in seen:
            d = dual(f)
            seen.update((f, d))
            pairs.append((f, d))
    return pairs


def paired_subsets(g: CpSet) -> list:
    """All paired subsets of ``g``, from the empty set upward."""
    pairs = dual_pairs(g)
    out = []
    for picks in product((False, True), repeat=len(pairs)):
        out.append(CpSet(tuple(x for keep, pr in zip(picks, pairs) if keep for x in pr)))
    return out


def maximal_cp_set(m: SphereModel, x, g: CpSet, u="d", evaluator=None,
                   example_compatible: bool = False) -> CpSet:
    """Keep the heavier member of every dual pair.

    On a tie the member false at ``x`` is kept; ``example_compatible`` keeps
    both members instead.
    """
    ev = _evaluator(evaluator)
    xi, tag = world_index(m, x), UpdateTag(u)
    keep = []
    for a, b in dual_pairs(g):
        order = cmp_xel(weight_of_formula(m, xi, a, tag, ev),
                        weight_of_formula(m, xi, b, tag, ev))
        if order is Ordering.GREATER:
            keep.append(a)
        elif order is Ordering.LESS:
            keep.append(b)
        elif example_compatible:
            keep += [a, b]
        else:
            keep.append(b if ev.truth(m, xi, a, tag) else a)
    return CpSet(tuple(keep))
