"""Dynamic satisfaction for cp-counterfactuals and cp-comparative plausibility.

Variant ``b`` is the semantics proper: a cp-node evaluates its Lewis core
in the model updated at the current world, so cp-nodes nested in its
operands see compounded updates.  Variant ``a`` picks spheres from the
updated model but evaluates operands in the model it started from;
variant ``c`` updates every world's spheres at once.  Both exist for
differential testing.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels
from .formula import (Atom, CpCounterfactual, CpPlausibility, CpSet, Falsum, Formula,
                      Implies, is_paired, is_propositional, to_text)
from .model import SphereModel, bits
from .update import UpdateTag, update_chain, world_index

__all__ = ["Evaluator", "NotPairedError", "EvalStep", "EvalTrace", "sat", "sat_variant",
           "valid_in_model", "prop_mask"]

VARIANTS = ("a", "b", "c")


class NotPairedError(ValueError):
    def __init__(self, cpset: CpSet):
        self.cpset = cpset
        super().__init__(f"cp-set {cpset} is not paired")


_PROP_CACHE: dict = {}


def prop_mask(m: SphereModel, f: Formula) -> int:
    """Worlds of ``m`` satisfying a formula without conditional operators."""
    key = (m.valuation, m.n, f)
    hit = _PROP_CACHE.get(key)
    if hit is not None:
        return hit
    if isinstance(f, Atom):
        out = m.atom_mask(f.name) & m.all_mask
    elif isinstance(f, Falsum):
        out = 0
    elif isinstance(f, Implies):
        out = (~prop_mask(m, f.lhs) | prop_mask(m, f.rhs)) & m.all_mask
    else:
        raise TypeError(f"not propositional: {to_text(f)}")
    if len(_PROP_CACHE) > 200_000:
        _PROP_CACHE.clear()
    _PROP_CACHE[key] = out
    return out


class Evaluator:
    """Memoising evaluator.  Reuse one instance across queries on related models.

    ``check_paired=False`` admits non-paired cp-sets; ``variant`` picks the
    semantics (``"b"`` is the default and the one the rest of the package uses).
    """

    def __init__(self, check_paired: bool = True, variant: str = "b"):
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        self.check_paired = check_paired
        self.variant = variant
        self._prop: dict = {}
        self._truth: dict = {}
        self._updates: dict = {}
        self._global: dict = {}

    def clear(self):
        self._prop.clear()
        self._truth.clear()
        self._updates.clear()
        self._global.clear()

    # -- extensions ------------------------------------------------------------
    def _is_prop(self, f) -> bool:
        hit = self._prop.get(f)
        if hit is None:
            hit = self._prop[f] = is_propositional(f)
        return hit

    def mask(self, m: SphereModel, f: Formula, u, within: int) -> int:
        """Worlds in ``within`` that satisfy ``f`` under tag ``u``."""
        if self._is_prop(f):
            return prop_mask(m, f) & within
        out = 0
        for y in bits(within):
            if self.truth(m, y, f, u):
                out |= 1 << y
        return out

    def truth(self, m: SphereModel, y: int, f: Formula, u) -> bool:
        if self._is_prop(f):
            return bool(prop_mask(m, f) >> y & 1)
        if isinstance(f, Implies):
            return not self.truth(m, y, f.lhs, u) or self.truth(m, y, f.rhs, u)
        key = (m, f, u)
        known, value = self._truth.get(key, (0, 0))
        bit = 1 << y
        if known & bit:
            return bool(value & bit)
        v = self._modal(m, y, f, u)
        self._truth[key] = (known | bit, value | bit if v else value)
        return v

    # -- cp machinery -----------------------------------------------------------
    def _check(self, g: CpSet):
        if g and self.check_paired and not is_paired(g):
            raise NotPairedError(g)

    def updated(self, m: SphereModel, x: int, g: CpSet, u) -> SphereModel:
        """``m`` with the spheres of world index ``x`` updated by ``g`` under ``u``."""
        key = (m, x, g, u)
        hit = self._updates.get(key)
        if hit is None:
            reach = m.reach(x) | (1 << x)
            masks = [self.mask(m, G, u, reach) for G in g]
            hit = m.with_chain(x, update_chain(m, x, masks, u))
            self._updates[key] = hit
        return hit

    def updated_everywhere(self, m: SphereModel, g: CpSet, u) -> SphereModel:
        key = (m, g, u)
        hit = self._global.get(key)
        if hit is None:
            hit = m.with_systems(self.updated(m, y, g, u).chain(y) for y in range(m.n))
            self._global[key] = hit
        return hit

    def frame(self, m: SphereModel, y: int, g: CpSet, u):
        """(model for the operands, chain to inspect) of a cp-node at world ``y``."""
        if not g:
            return m, m.chain(y)
        self._check(g)
        if self.variant == "b":
            m2 = self.updated(m, y, g, u)
            return m2, m2.chain(y)
        if self.variant == "a":
            return m, self.updated(m, y, g, u).chain(y)
        mc = self.updated_everywhere(m, g, u)
        return mc, mc.chain(y)

    def _modal(self, m, y, f, u) -> bool:
        if isinstance(f, CpCounterfactual):
            a, b, lewis = f.antecedent, f.consequent, kernels.lewis_cf
        else:
            a, b, lewis = f.lhs, f.rhs, kernels.lewis_pl
        ops, chain = self.frame(m, y, f.cpset, u)
        reach = chain[-1]
        return lewis(chain, self.mask(ops, a, u, reach), self.mask(ops, b, u, reach))


# -- traces ---------------------------------------------------------------------

@dataclass
class EvalStep:
    world: str
    formula: str
    generation: int
    verdict: bool
    spheres: tuple = ()  # chain inspected by a conditional node, as model-file text
    children: list = field(default_factory=list)


@dataclass
class EvalTrace:
    root: EvalStep
    generations: list  # (id, description) pairs; generation 0 is the input model

    def render(self) -> str:
        lines = [f"gen {i}: {d}" for i, d in self.generations]

        def walk(s, depth):
            pad = "  " * depth
            where = f" spheres {' '.join(s.spheres)}" if s.spheres else ""
            lines.append(f"{pad}{s.world} |= {s.formula} [gen {s.generation}]{where}"
                         f" : {'true' if s.verdict else 'false'}")
            for c in s.children:
                walk(c, depth + 1)
        walk(self.root, 0)
        return "\n".join(lines)


class _Tracer:
    def __init__(self, ev: Evaluator, root: SphereModel):
        self.ev = ev
        self.ids = {root: 0}
        self.gens = [(0, "input model")]

    def gen(self, m, parent, how):
        if m not in self.ids:
            self.ids[m] = len(self.gens)
            self.gens.append((self.ids[m], f"{how} of gen {self.ids[parent]}"))
        return self.ids[m]

    def step(self, m, y, f, u) -> EvalStep:
        verdict = self.ev.truth(m, y, f, u)
        s = EvalStep(m.worlds[y], to_text(f), self.ids[m], verdict)
        if isinstance(f, Implies):
            s.children = [self.step(m, y, f.lhs, u), self.step(m, y, f.rhs, u)]
        elif isinstance(f, (CpCounterfactual, CpPlausibility)):
            a, b = ((f.antecedent, f.consequent) if isinstance(f, CpCounterfactual)
                    else (f.lhs, f.rhs))
            ops, chain = self.ev.frame(m, y, f.cpset, u)
            if f.cpset:
                how = {"a": "update", "b": "update", "c": "global update"}[self.ev.variant]
                upd = ops if self.ev.variant != "a" else self.ev.updated(m, y, f.cpset, u)
                self.gen(upd, m, f"{how} at {m.worlds[y]} by {f.cpset} ({u})")
                self.gen(ops, m, "operands")
            s.spheres = tuple(m.format_sphere(c) for c in chain)
            for z in bits(chain[-1]):
                s.children.append(self.step(ops, z, a, u))
                s.children.append(self.step(ops, z, b, u))
        return s


# -- public entry points -------------------------------------------------------

def sat(m: SphereModel, x, f: Formula, u="d", trace: bool = False,
        evaluator: Evaluator | None = None):
    """Truth of ``f`` at world ``x`` under update tag ``u``.

    With ``trace=True`` returns ``(verdict, EvalTrace)``.
    """
    return sat_variant(m, x, f, u, "b", trace=trace, evaluator=evaluator)


def sat_variant(m: SphereModel, x, f: Formula, u="d", variant: str = "b",
                trace: bool = False, evaluator: Evaluator | None = None):
    tag = UpdateTag(u)
    ev = evaluator or Evaluator(variant=variant)
    if ev.variant != variant:
        raise ValueError("evaluator variant does not match")
    xi = world_index(m, x)
    if not trace:
        return ev.truth(m, xi, f, tag)
    t = _Tracer(ev, m)
    root = t.step(m, xi, f, tag)
    return root.verdict, EvalTrace(root, t.gens)


def valid_in_model(m: SphereModel, f: Formula, u="d", evaluator: Evaluator | None = None) -> bool:
    ev = evaluator or Evaluator()
    tag = UpdateTag(u)
    return all(ev.truth(m, y, f, tag) for y in range(m.n))
