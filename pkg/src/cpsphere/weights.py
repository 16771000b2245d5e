"""Formula and set weights relative to a world's system of spheres.

A formula's weight is its per-shell count of satisfying worlds.  Fewer
satisfiers at the first differing shell means a heavier, more implausible
formula.  A set's weight is the descending list of its members' weights,
compared lexicographically with shorter prefixes lighter.
"""
from __future__ import annotations

from enum import IntEnum

from . import kernels
from .formula import CpSet, Formula, dual
from .model import SphereModel
from .update import UpdateTag, world_index

__all__ = ["Ordering", "weight_of_formula", "weight_of_set", "cmp_xel", "cmp_lex",
           "cmp_significance", "weight_key", "set_key", "literal_chain"]


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    def __str__(self):
        return self.name.lower()


def _cmp(a, b) -> Ordering:
    return Ordering.LESS if a < b else Ordering.GREATER if a > b else Ordering.EQUAL


def weight_key(w: tuple) -> tuple:
    """Sort key on formula weights: larger key means heavier."""
    return tuple(-c for c in w)


def set_key(ws: tuple) -> tuple:
    return tuple(weight_key(w) for w in ws)


def _evaluator(evaluator):
    if evaluator is not None:
        return evaluator
    from .evaluate import Evaluator
    return Evaluator()


def weight_of_formula(m: SphereModel, x, a: Formula, u="d", evaluator=None) -> tuple:
    xi = world_index(m, x)
    chain = m.chain(xi)
    ev = _evaluator(evaluator)
    return kernels.shell_counts(chain, ev.mask(m, a, UpdateTag(u), chain[-1]))


def cmp_xel(wa: tuple, wb: tuple) -> Ordering:
    """Order of ``wa`` relative to ``wb``; GREATER means ``wa`` is heavier."""
    if len(wa) != len(wb):
        raise ValueError(f"weights of different length: {wa} vs {wb}")
    return _cmp(weight_key(wa), weight_key(wb))


def weight_of_set(m: SphereModel, x, g: CpSet, u="d", evaluator=None) -> tuple:
    ev = _evaluator(evaluator)
    ws = [weight_of_formula(m, x, f, u, ev) for f in g]
    return tuple(sorted(ws, key=weight_key, reverse=True))


def cmp_lex(wg: tuple, wd: tuple) -> Ordering:
    """Lexicographic order of set weights; a proper prefix is lighter."""
    return _cmp(set_key(wg), set_key(wd))


def cmp_significance(m: SphereModel, x, a: Formula, b: Formula, u="d",
                     evaluator=None) -> Ordering:
    """GREATER when ``a`` is strictly more significant than ``b``.

    Significance compares the heavier of each formula and its dual.
    """
    ev = _evaluator(evaluator)

    def top(f):
        return max(weight_of_formula(m, x, f, u, ev),
                   weight_of_formula(m, x, dual(f), u, ev), key=weight_key)
    return cmp_xel(top(a), top(b))


def literal_chain(m: SphereModel, x, formulas, u="d", evaluator=None) -> list:
    """Group formulas into weight classes, lightest class first."""
    ev = _evaluator(evaluator)
    weighted = [(weight_of_formula(m, x, f, u, ev), f) for f in formulas]
    classes: dict = {}
    for w, f in weighted:
        classes.setdefault(w, []).append(f)
    return [(w, classes[w]) for w in sorted(classes, key=weight_key)]
