"""Model-relative elimination of non-empty cp-sets.

:func:`hat` rewrites a single ``A <=G B`` node, anchored at a model and a
world, into a formula of the plain Lewis language that has the same truth
value there under the disagreement update.  :func:`star` applies it until no
non-empty cp-set is left.  The output depends on the anchor: it is not a
model-independent equivalent of the input.
"""
from __future__ import annotations

from .cpsets import forcing, paired_subsets
from .evaluate import Evaluator
from .formula import (EMPTY, Atom, CpCounterfactual, CpPlausibility, CpSet, Falsum,
                      Formula, Implies, big_conj, big_disj, conj, cpl, diamond, neg,
                      rewrite_cf_to_pl)
from .model import Centering, SphereModel
from .update import UpdateTag, world_index
from .weights import set_key, weight_of_set

__all__ = ["hat", "star", "TranslationError"]


class TranslationError(ValueError):
    pass


def hat(m: SphereModel, x, a: Formula, b: Formula, g: CpSet,
        evaluator: Evaluator | None = None) -> Formula:
    """Lewis-language stand-in for ``a <=g b`` at world ``x`` of ``m``.

    One conjunct per paired subset L of ``g``: if no ``a``-world disagrees
    with ``x`` only inside a strictly lighter subset, then the ``a``-worlds
    disagreeing only inside subsets no heavier than L are at least as
    plausible as the ``b``-worlds disagreeing only inside L.
    """
    if cpl(a) or cpl(b):
        raise TranslationError("operands must be free of non-empty cp-sets")
    if not g:
        raise TranslationError("cp-set must be non-empty")
    ev = evaluator or Evaluator()
    xi = world_index(m, x)
    subsets = paired_subsets(g)
    keys = {lam: set_key(weight_of_set(m, xi, lam, UpdateTag.D, ev)) for lam in subsets}
    # conjunction of what x forces outside L: true exactly where D(y) is inside L
    inside = {lam: big_conj(forcing(m, xi, g - lam, UpdateTag.D, ev)) for lam in subsets}
    conjuncts = []
    for lam in subsets:
        lighter = [neg(diamond(conj(a, inside[l1]))) for l1 in subsets if keys[l1] < keys[lam]]
        upto = big_disj(conj(a, inside[l2]) for l2 in subsets if keys[l2] <= keys[lam])
        body = CpPlausibility(upto, EMPTY, conj(b, inside[lam]))
        conjuncts.append(Implies(big_conj(lighter), body) if lighter else body)
    return big_conj(conjuncts)


def _innermost(f: Formula):
    """Some plausibility node with a non-empty cp-set and no such node below it."""
    if isinstance(f, (Atom, Falsum)):
        return None
    if isinstance(f, Implies):
        return _innermost(f.lhs) or _innermost(f.rhs)
    parts = [f.lhs, f.rhs] if isinstance(f, CpPlausibility) else [f.antecedent, f.consequent]
    for part in list(f.cpset) + parts:
        hit = _innermost(part)
        if hit is not None:
            return hit
    return f if f.cpset else None


def _replace(f: Formula, old: Formula, new: Formula) -> Formula:
    if f == old:
        return new
    if isinstance(f, (Atom, Falsum)):
        return f
    if isinstance(f, Implies):
        return Implies(_replace(f.lhs, old, new), _replace(f.rhs, old, new))
    g = CpSet(tuple(_replace(mm, old, new) for mm in f.cpset))
    if isinstance(f, CpPlausibility):
        return CpPlausibility(_replace(f.lhs, old, new), g, _replace(f.rhs, old, new))
    return CpCounterfactual(_replace(f.antecedent, old, new), g,
                            _replace(f.consequent, old, new))


def star(m: SphereModel, x, f: Formula, u="d", evaluator: Evaluator | None = None) -> Formula:
    """Eliminate every non-empty cp-set of ``f`` relative to world ``x`` of ``m``.

    Counterfactuals are first rewritten into plausibility form.  Nodes are
    translated innermost first, so each translated node has cp-free
    operands.  ``u = "i"`` is refused on weakly centered models.
    """
    tag = UpdateTag(u)
    if tag is UpdateTag.I and m.centering is Centering.WEAK:
        raise TranslationError(
            "translation under the implausibility update is not available on weakly "
            "centered models")
    ev = evaluator or Evaluator()
    out = rewrite_cf_to_pl(f)
    while (node := _innermost(out)) is not None:
        out = _replace(out, node, hat(m, x, node.lhs, node.rhs, node.cpset, ev))
    return out
