"""Implausibility, agreement and disagreement updates of a world's spheres."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import kernels
from .formula import CpSet
from .model import Centering, SphereModel, bits, normalize_chain

__all__ = ["UpdateTag", "update", "update_chain", "update_trace", "TraceRow", "world_index"]


class UpdateTag(str, Enum):
    I = "i"
    A = "a"
    D = "d"

    def __str__(self):
        return self.value

    def __hash__(self):
        # plain strings and members must share dictionary slots
        return hash(self.value)


_MODE = {UpdateTag.I: kernels.MODE_FORCING,
         UpdateTag.D: kernels.MODE_DISAGREE,
         UpdateTag.A: kernels.MODE_AGREE}


def world_index(m: SphereModel, x) -> int:
    if isinstance(x, int):
        if not 0 <= x < m.n:
            raise IndexError(f"world index {x} out of range")
        return x
    return m.index(x)


def update_chain(m: SphereModel, x: int, member_masks, tag) -> tuple:
    """New chain for world index ``x`` given the extensions of the cp-set members."""
    tag = UpdateTag(tag)
    chain = kernels.rank_chain(m.chain(x), list(member_masks), x, _MODE[tag])
    xbit = 1 << x
    if tag is UpdateTag.I and m.centering is Centering.WEAK and not chain[0] & xbit:
        # x is kept in every sphere so the result stays weakly centered and nested
        chain = normalize_chain(s | xbit for s in chain)
    return chain


def _members_masks(m, x, g, u, evaluator):
    from .evaluate import Evaluator
    ev = evaluator or Evaluator(check_paired=False)
    reach = m.reach(x) | (1 << x)
    return [ev.mask(m, f, u, reach) for f in g]


def update(m: SphereModel, x, g: CpSet, u, evaluator=None) -> SphereModel:
    """The model with the spheres of ``x`` re-ranked by ``g`` under tag ``u``.

    Pairedness of ``g`` is not checked here; evaluation enforces it.
    """
    xi = world_index(m, x)
    masks = _members_masks(m, xi, g, u, evaluator)
    return m.with_chain(xi, update_chain(m, xi, masks, u))


@dataclass(frozen=True)
class TraceRow:
    world: str
    relevant: CpSet  # forcing, agreement or disagreement set, depending on the tag
    setweight: tuple
    origrank: int
    level: int  # index of the innermost updated sphere containing the world


def update_trace(m: SphereModel, x, g: CpSet, u, evaluator=None) -> list:
    """Per-world ranking rows behind :func:`update`, ordered by final level."""
    from .weights import weight_of_set
    tag = UpdateTag(u)
    xi = world_index(m, x)
    masks = _members_masks(m, xi, g, tag, evaluator)
    members = list(g)
    new_chain = update_chain(m, xi, masks, tag)
    chain = m.chain(xi)
    rows = []
    xin = [mk >> xi & 1 for mk in masks]
    for y in bits(chain[-1]):
        yin = [mk >> y & 1 for mk in masks]
        if tag is UpdateTag.I:
            rel = [f for f, b in zip(members, yin) if b]
        elif tag is UpdateTag.D:
            rel = [f for f, a, b in zip(members, xin, yin) if a != b]
        else:
            rel = [f for f, a, b in zip(members, xin, yin) if a == b]
        rel_set = CpSet(tuple(rel))
        orig = next(i for i, s in enumerate(chain) if s >> y & 1)
        level = next(i for i, s in enumerate(new_chain) if s >> y & 1)
        rows.append(TraceRow(m.worlds[y], rel_set,
                             weight_of_set(m, xi, rel_set, tag, evaluator), orig, level))
    rows.sort(key=lambda r: (r.level, r.origrank, r.world))
    return rows
