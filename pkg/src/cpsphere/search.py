"""Bounded model enumeration, formula corpora, axiom and theorem sweeps.

For formulas of modal depth at most one, truth at a world ``x`` depends only
on the valuation and on ``S(x)``.  The sweeps therefore collapse every
enumerated (model, world) pair onto its *pointed frame* and evaluate each
frame once.  A formula's truth over all frames is an int bit vector, so
Boolean connectives cost one big-int operation.  Deeper formulas fall back
to evaluating every enumerated model.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import kernels
from .cpsets import forcing, maximal_cp_set, paired_subsets, profile
from .evaluate import Evaluator, prop_mask
from .formula import (EMPTY, FALSE, TRUE, Atom, CpCounterfactual, CpPlausibility, CpSet,
                      Falsum, Formula, Implies, atoms_of, big_conj, big_disj, conj, disj,
                      modal_depth, neg, to_text)
from .model import Centering, SphereModel, bits, normalize_chain, save_model, validate
from .update import UpdateTag
from .weights import cmp_lex, cmp_xel, set_key, weight_key, weight_of_set

__all__ = [
    "EnumerationBounds", "EnumerationOverflow", "chains_for", "model_count",
    "enumerate_models", "literal_cpsets", "generate_formulas", "truth_function_formulas",
    "FrameTable", "Finding", "SweepReport", "axiom_instances", "check_axioms", "check_cpr",
    "find_countermodel", "theorem_sweep", "restrict", "AXIOMS", "SYSTEMS",
    "translation_sweep", "interdefinability_sweep", "preservation_sweep", "variant_sweep",
]

TAGS = (UpdateTag.I, UpdateTag.A, UpdateTag.D)


# -- enumeration ------------------------------------------------------------------

class EnumerationOverflow(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationBounds:
    max_worlds: int
    atoms: tuple = ("p", "q")
    centering: Centering = Centering.CENTERED
    max_spheres: int | None = None
    min_worlds: int = 1
    cap: int | None = 2_000_000

    def __post_init__(self):
        if self.max_worlds < 1 or self.min_worlds < 1 or self.min_worlds > self.max_worlds:
            raise ValueError("need 1 <= min_worlds <= max_worlds")
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "centering", Centering(self.centering))


def chains_for(n: int, x: int, centering, max_spheres: int | None = None) -> list:
    """Every strictly nested chain around world ``x`` of ``n`` worlds."""
    others = ((1 << n) - 1) & ~(1 << x)
    limit = max_spheres or n

    def subsets(mask):
        sub = mask
        out = []
        while sub:
            out.append(sub)
            sub = (sub - 1) & mask
        return sorted(out)

    out = []

    def grow(chain, rest):
        out.append(tuple(chain))
        if len(chain) >= limit:
            return
        for t in subsets(rest):
            grow(chain + [chain[-1] | t], rest & ~t)

    firsts = [1 << x]
    if Centering(centering) is Centering.WEAK:
        firsts += [(1 << x) | s for s in subsets(others)]
    for first in firsts:
        grow([first], others & ~first)
    return out


def model_count(b: EnumerationBounds) -> int:
    total = 0
    for n in range(b.min_worlds, b.max_worlds + 1):
        per_world = [len(chains_for(n, x, b.centering, b.max_spheres)) for x in range(n)]
        count = (2 ** n) ** len(b.atoms)
        for c in per_world:
            count *= c
        total += count
    return total


def enumerate_models(b: EnumerationBounds) -> Iterator[SphereModel]:
    """Every model within the bounds, fewest worlds first, in a fixed order."""
    total = model_count(b)
    if b.cap is not None and total > b.cap:
        raise EnumerationOverflow(f"{total} models exceed the cap of {b.cap}")
    for n in range(b.min_worlds, b.max_worlds + 1):
        worlds = tuple(f"w{i}" for i in range(n))
        per_world = [chains_for(n, x, b.centering, b.max_spheres) for x in range(n)]
        for masks in itertools.product(range(2 ** n), repeat=len(b.atoms)):
            val = tuple(sorted(zip(b.atoms, masks)))
            for systems in itertools.product(*per_world):
                yield SphereModel(worlds, val, systems, b.centering)


def restrict(m: SphereModel, keep: int) -> SphereModel:
    """Sub-model on the worlds of ``keep``; every kept world must keep itself."""
    idx = [i for i in bits(keep)]
    remap = {old: new for new, old in enumerate(idx)}

    def tr(mask):
        out = 0
        for i in bits(mask & keep):
            out |= 1 << remap[i]
        return out
    worlds = tuple(m.worlds[i] for i in idx)
    val = tuple((a, tr(mk)) for a, mk in m.valuation)
    systems = tuple(normalize_chain(s for s in (tr(c) for c in m.chain(i)) if s) for i in idx)
    return SphereModel(worlds, val, systems, m.centering)


# -- formula corpora ----------------------------------------------------------------

def literal_cpsets(atoms: Iterable[str], max_pairs: int = 2) -> list:
    """The empty set and every union of up to ``max_pairs`` pairs ``{a, ~a}``."""
    atoms = list(atoms)
    out = [EMPTY]
    for k in range(1, max_pairs + 1):
        for combo in itertools.combinations(atoms, k):
            out.append(CpSet(tuple(f for a in combo for f in (Atom(a), neg(Atom(a))))))
    return out


def generate_formulas(max_size: int = 7, atoms: Iterable[str] = ("p", "q"),
                      cpsets: Iterable[CpSet] | None = None, max_depth: int = 1) -> list:
    """All formulas up to ``max_size`` primitive nodes, by size, in a fixed order.

    Leaves are the atoms and ``false``; cp-sets are taken from ``cpsets``
    (default: :func:`literal_cpsets`); conditional nesting is bounded by
    ``max_depth``.
    """
    atoms = tuple(atoms)
    cpsets = list(cpsets) if cpsets is not None else literal_cpsets(atoms)
    # table[d][s]: formulas of size s and modal depth at most d
    table = [[[] for _ in range(max_size + 1)] for _ in range(max_depth + 1)]
    leaves = [Atom(a) for a in atoms] + [FALSE]
    for d in range(max_depth + 1):
        table[d][1] = list(leaves)
    for s in range(2, max_size + 1):
        for d in range(max_depth + 1):
            row = table[d][s]
            for i in range(1, s - 1):
                for lhs in table[d][i]:
                    for rhs in table[d][s - 1 - i]:
                        row.append(Implies(lhs, rhs))
            if d == 0:
                continue
            for g in cpsets:
                if any(modal_depth(mm) > d - 1 for mm in g):
                    continue
                for cls in (CpCounterfactual, CpPlausibility):
                    for i in range(1, s - 1):
                        for lhs in table[d - 1][i]:
                            for rhs in table[d - 1][s - 1 - i]:
                                row.append(cls(lhs, g, rhs))
    return [f for s in range(1, max_size + 1) for f in table[max_depth][s]]


def truth_function_formulas(atoms: Iterable[str] = ("p", "q")) -> list:
    """One propositional formula per truth function of ``atoms`` (disjunctive normal form)."""
    atoms = tuple(atoms)
    rows = list(itertools.product((False, True), repeat=len(atoms)))
    out = []
    for tt in range(2 ** len(rows)):
        minterms = []
        for r, row in enumerate(rows):
            if tt >> r & 1:
                lits = [Atom(a) if v else neg(Atom(a)) for a, v in zip(atoms, row)]
                minterms.append(big_conj(lits))
        out.append(big_disj(minterms) if minterms else FALSE)
    return out


# -- pointed frames ---------------------------------------------------------------

class FrameTable:
    """Distinct (valuation, spheres of x, x) triples of an enumeration, with bit vectors.

    Bit ``k`` of every vector is the truth value at frame ``k``.
    """

    def __init__(self, b: EnumerationBounds):
        self.bounds = b
        self.atoms = b.atoms
        self.frames: list = []
        self.models = 0
        self.pointed = 0
        seen = {}
        for m in enumerate_models(b):
            self.models += 1
            for x in range(m.n):
                self.pointed += 1
                key = (m.n, m.valuation, m.chain(x), x)
                if key not in seen:
                    seen[key] = len(self.frames)
                    self.frames.append((m, x))
        self.full = (1 << len(self.frames)) - 1
        na = len(self.atoms)
        # per frame: assignment row of x and, per row, the worlds carrying it
        self._row_at_x = []
        self._row_worlds = []
        for m, x in self.frames:
            masks = [m.atom_mask(a) for a in self.atoms]
            rows = [0] * (2 ** na)
            for y in range(m.n):
                r = sum(((mk >> y) & 1) << j for j, mk in enumerate(masks))
                rows[r] |= 1 << y
                if y == x:
                    self._row_at_x.append(r)
            self._row_worlds.append(rows)
        self._rows_vec = [0] * (2 ** na)
        for k, r in enumerate(self._row_at_x):
            self._rows_vec[r] |= 1 << k
        self._ev = Evaluator(check_paired=False)
        self._tt: dict = {}
        self._rep: dict = {}
        self._nodes: dict = {}
        self._vecs: dict = {}
        self._chains: dict = {}
        self._gm: dict = {}

    def __len__(self):
        return len(self.frames)

    # truth tables of propositional formulas over the bound atoms
    def tt(self, f: Formula) -> int:
        hit = self._tt.get(f)
        if hit is None:
            if not atoms_of(f) <= set(self.atoms):
                raise ValueError(f"{to_text(f)} uses atoms outside {self.atoms}")
            na = len(self.atoms)
            ref = SphereModel(tuple(str(r) for r in range(2 ** na)),
                              tuple(sorted((a, sum(1 << r for r in range(2 ** na) if r >> j & 1))
                                           for j, a in enumerate(self.atoms))),
                              tuple(((1 << r),) for r in range(2 ** na)))
            hit = self._tt[f] = prop_mask(ref, f)
            self._rep.setdefault(hit, f)
        return hit

    def worlds_with(self, k: int, tt: int) -> int:
        rows = self._row_worlds[k]
        out = 0
        for r in bits(tt):
            out |= rows[r]
        return out

    def chain(self, k: int, g: CpSet, tag) -> tuple:
        key = (k, g, tag)
        hit = self._chains.get(key)
        if hit is None:
            m, x = self.frames[k]
            hit = self._chains[key] = self._ev.frame(m, x, g, tag)[1]
            if len(self._chains) > 500_000:
                self._chains.clear()
                self._ev.clear()
        return hit

    def maximal(self, k: int, g: CpSet, tag, example_compatible=False) -> CpSet:
        key = (k, g, tag, example_compatible)
        hit = self._gm.get(key)
        if hit is None:
            m, x = self.frames[k]
            hit = self._gm[key] = maximal_cp_set(m, x, g, tag, self._ev, example_compatible)
        return hit

    def node_vector(self, kind, g: CpSet, tta: int, ttb: int, tag, mode="given") -> int:
        """Truth over all frames of a conditional node with propositional operands.

        ``mode`` is ``given`` (use ``g``), ``maximal`` (use the maximal cp-set of
        ``g`` at each frame), ``maximal-example`` or ``hat`` (the translated
        node, evaluated without updates).
        """
        tag = UpdateTag(tag)
        key = (kind, g, tta, ttb, tag, mode)
        hit = self._nodes.get(key)
        if hit is not None:
            return hit
        lewis = kernels.lewis_cf if kind is CpCounterfactual else kernels.lewis_pl
        v = 0
        if mode == "hat":
            from .translate import hat
            a, b = self._rep[tta], self._rep[ttb]
            ev = Evaluator()
            for k, (m, x) in enumerate(self.frames):
                if ev.truth(m, x, hat(m, x, a, b, g, ev), UpdateTag.D):
                    v |= 1 << k
                ev.clear()
        else:
            for k in range(len(self.frames)):
                gg = g
                if g and mode != "given":
                    gg = self.maximal(k, g, tag, mode == "maximal-example")
                chain = self.chain(k, gg, tag)
                reach = chain[-1]
                if lewis(chain, self.worlds_with(k, tta) & reach,
                         self.worlds_with(k, ttb) & reach):
                    v |= 1 << k
        self._nodes[key] = v
        return v

    def vector(self, f: Formula, tag, mode="given") -> int:
        """Truth of ``f`` over all frames; ``f`` must have modal depth at most one."""
        tag = UpdateTag(tag)
        key = (f, tag, mode)
        hit = self._vecs.get(key)
        if hit is not None:
            return hit
        if isinstance(f, (Atom, Falsum)) or (isinstance(f, Implies) and modal_depth(f) == 0):
            tt = self.tt(f)
            v = 0
            for r in bits(tt):
                v |= self._rows_vec[r]
        elif isinstance(f, Implies):
            v = (~self.vector(f.lhs, tag, mode) | self.vector(f.rhs, tag, mode)) & self.full
        else:
            a, b = ((f.antecedent, f.consequent) if isinstance(f, CpCounterfactual)
                    else (f.lhs, f.rhs))
            if modal_depth(a) or modal_depth(b) or any(modal_depth(mm) for mm in f.cpset):
                raise ValueError("frame vectors need modal depth at most one")
            node_mode = mode if f.cpset else "given"
            if node_mode == "hat" and isinstance(f, CpCounterfactual):
                raise ValueError("translate counterfactuals into plausibility form first")
            v = self.node_vector(type(f), f.cpset, self.tt(a), self.tt(b), tag, node_mode)
        if len(self._vecs) > 400_000:
            self._vecs.clear()
        self._vecs[key] = v
        return v

    def first(self, vec: int) -> int:
        """Index of the lowest set bit."""
        return (vec & -vec).bit_length() - 1


# -- reports ------------------------------------------------------------------------

@dataclass(frozen=True)
class Finding:
    check: str
    model: str
    world: str
    formula: str
    detail: str = ""

    def as_dict(self) -> dict:
        return {"check": self.check, "model": self.model, "world": self.world,
                "formula": self.formula, "detail": self.detail}


@dataclass
class SweepReport:
    bounds: EnumerationBounds
    models: int = 0
    pointed: int = 0
    frames: int = 0
    formulas: int = 0
    checked: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    findings: list = field(default_factory=list)  # logged, expected or informative

    @property
    def ok(self) -> bool:
        return not self.violations

    def count(self, check: str, n: int = 1):
        self.checked[check] = self.checked.get(check, 0) + n

    def summary(self) -> str:
        b = self.bounds
        head = (f"bounds: worlds<={b.max_worlds} atoms={','.join(b.atoms)} "
                f"centering={b.centering.value}; models={self.models} pointed={self.pointed} "
                f"frames={self.frames} formulas={self.formulas}")
        lines = [head]
        for name in sorted(self.checked):
            bad = sum(1 for v in self.violations if v.check == name)
            logged = sum(1 for v in self.findings if v.check == name)
            extra = f" logged={logged}" if logged else ""
            lines.append(f"  {name}: checked={self.checked[name]} violations={bad}{extra}")
        return "\n".join(lines)


def _witness(table: FrameTable, k: int, check: str, f, detail="") -> Finding:
    m, x = table.frames[k]
    keep = m.reach(x) | (1 << x)
    small = restrict(m, keep)
    text = to_text(f) if not isinstance(f, str) else f
    return Finding(check, save_model(small), m.worlds[x], text, detail)


# -- axioms ---------------------------------------------------------------------

def _pl(a, b, g=EMPTY):
    return CpPlausibility(a, g, b)


AXIOMS = {
    "cpa": (2, lambda a, b, g: disj(_pl(a, disj(a, b), g), _pl(b, disj(a, b), g))),
    "tr": (3, lambda a, b, c, g: Implies(conj(_pl(a, b, g), _pl(b, c, g)), _pl(a, c, g))),
    "co": (2, lambda a, b, g: disj(_pl(a, b, g), _pl(b, a, g))),
    "w": (1, lambda a, g: Implies(a, _pl(a, TRUE, g))),
    "c": (1, lambda a, g: Implies(_pl(a, TRUE, g), a)),
}
SYSTEMS = {"VW": ("cpa", "tr", "co", "w"), "VC": ("cpa", "tr", "co", "w", "c")}


def axiom_instances(schema: str, substitutes: Iterable[Formula], g: CpSet = EMPTY) -> list:
    arity, build = AXIOMS[schema]
    subs = list(substitutes)
    return [build(*combo, g) for combo in itertools.product(subs, repeat=arity)]


@dataclass
class AxiomReport:
    system: str
    tag: str
    instances: int = 0
    pointed_checks: int = 0
    counterexamples: list = field(default_factory=list)
    per_schema: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.counterexamples


def _full_sweep(b: EnumerationBounds, formulas, tag, on_false):
    ev = Evaluator()
    n = 0
    for m in enumerate_models(b):
        for f in formulas:
            for y in range(m.n):
                n += 1
                if not ev.truth(m, y, f, tag):
                    on_false(m, y, f)
        ev.clear()
    return n


def check_axioms(b: EnumerationBounds, system: str, u, instances=None,
                 table: FrameTable | None = None, max_examples: int = 20) -> AxiomReport:
    """Look for (model, world, instance) triples falsifying axiom instances.

    ``instances`` maps schema names to formula lists; the default substitutes
    one formula per truth function of the bound atoms into every schema of
    ``system``.
    """
    tag = UpdateTag(u)
    if instances is None:
        subs = truth_function_formulas(b.atoms)
        instances = {s: axiom_instances(s, subs) for s in SYSTEMS[system]}
    rep = AxiomReport(system, tag.value)
    shallow = {s: [f for f in fs if modal_depth(f) <= 1] for s, fs in instances.items()}
    deep = {s: [f for f in fs if modal_depth(f) > 1] for s, fs in instances.items()}
    if any(shallow.values()):
        table = table or FrameTable(b)
    for schema, fs in shallow.items():
        bad = 0
        for f in fs:
            rep.instances += 1
            rep.pointed_checks += len(table)
            miss = table.full & ~table.vector(f, tag)
            if miss:
                bad += 1
                if len(rep.counterexamples) < max_examples:
                    rep.counterexamples.append(
                        _witness(table, table.first(miss), schema, f, f"update {tag.value}"))
        rep.per_schema[schema] = bad
    for schema, fs in deep.items():
        if not fs:
            continue
        rep.instances += len(fs)
        found = []

        def on_false(m, y, f, schema=schema):
            found.append(f)
            if len(rep.counterexamples) < max_examples:
                rep.counterexamples.append(Finding(schema, save_model(m), m.worlds[y],
                                                   to_text(f), f"update {tag.value}"))
        rep.pointed_checks += _full_sweep(b, fs, tag, on_false)
        rep.per_schema[schema] = rep.per_schema.get(schema, 0) + len(set(found))
    return rep


def check_cpr(b: EnumerationBounds, u, formulas=None, table: FrameTable | None = None) -> list:
    """For every pair with ``B -> A`` a tautology, ``A <= B`` must hold everywhere."""
    tag = UpdateTag(u)
    table = table or FrameTable(b)
    subs = formulas if formulas is not None else truth_function_formulas(b.atoms)
    out = []
    for a, bb in itertools.product(subs, repeat=2):
        if table.tt(bb) & ~table.tt(a):
            continue
        f = _pl(a, bb)
        miss = table.full & ~table.vector(f, tag)
        if miss:
            out.append(_witness(table, table.first(miss), "cpr", f))
    return out


def find_countermodel(f: Formula, b: EnumerationBounds, u="d"):
    """First enumerated (model, world name) falsifying ``f``, or None."""
    tag = UpdateTag(u)
    ev = Evaluator()
    for m in enumerate_models(b):
        for y in range(m.n):
            if not ev.truth(m, y, f, tag):
                return m, m.worlds[y]
        ev.clear()
    return None


# -- theorem sweep --------------------------------------------------------------

THEOREM_CHECKS = ("a=d", "i=d", "maximal", "symmetry", "monotonicity", "duality",
                  "complement-3", "complement-4", "complement-5", "separation")


def _chain_shapes(table: FrameTable):
    seen = {}
    for m, x in table.frames:
        seen.setdefault(m.chain(x), None)
    return list(seen)


def _sweep_weights(table: FrameTable, rep: SweepReport):
    """Symmetry and monotonicity over every extension inside every chain.

    A formula's weight depends only on its extension, so ranging over all
    subsets of the reachable worlds covers every formula at once.
    """
    for chain in _chain_shapes(table):
        reach = chain[-1]
        subs = [0]
        for i in bits(reach):
            subs += [s | 1 << i for s in subs]
        w = {s: kernels.shell_counts(chain, s) for s in subs}
        for xa in subs:
            for xb in subs:
                rep.count("symmetry")
                if cmp_xel(w[xb], w[xa]) <= 0 and cmp_xel(w[reach & ~xa], w[reach & ~xb]) > 0:
                    rep.violations.append(Finding(
                        "symmetry", "", "", "",
                        f"chain {chain}: extensions {xa:b} {xb:b}"))
        # every family of extensions is a set of formulas; check all nested pairs
        n = len(subs)
        for sel in range(1 << n):
            big = sorted((w[subs[i]] for i in range(n) if sel >> i & 1),
                         key=weight_key, reverse=True)
            small_sel = sel
            while True:
                small = sorted((w[subs[i]] for i in range(n) if small_sel >> i & 1),
                               key=weight_key, reverse=True)
                rep.count("monotonicity")
                if cmp_lex(tuple(small), tuple(big)) > 0:
                    rep.violations.append(Finding(
                        "monotonicity", "", "", "",
                        f"chain {chain}: subfamily {small_sel:b} of {sel:b}"))
                if small_sel == 0:
                    break
                small_sel = (small_sel - 1) & sel


def _sweep_sets(table: FrameTable, rep: SweepReport, cpsets, tag):
    ev = Evaluator(check_paired=False)
    for k, (m, x) in enumerate(table.frames):
        reach = m.reach(x)
        for g in cpsets:
            if not g:
                continue
            profs = {y: profile(m, x, y, g, tag, ev) for y in bits(reach)}
            wd = {y: weight_of_set(m, x, p.disagreement, tag, ev) for y, p in profs.items()}
            wa = {y: weight_of_set(m, x, p.agreement, tag, ev) for y, p in profs.items()}
            for y, z in itertools.product(profs, repeat=2):
                rep.count("duality")
                if (cmp_lex(wd[y], wd[z]) <= 0) != (cmp_lex(wa[z], wa[y]) <= 0):
                    rep.violations.append(_witness(table, k, "duality", g,
                                                   f"worlds {m.worlds[y]} {m.worlds[z]}"))
            for lam in paired_subsets(g):
                outside = big_conj(forcing(m, x, g - lam, tag, ev))
                within = big_conj(forcing(m, x, lam, tag, ev))
                wl = weight_of_set(m, x, lam, tag, ev)
                for y, p in profs.items():
                    rep.count("complement-3")
                    rep.count("complement-4")
                    rep.count("complement-5")
                    d_in = p.disagreement <= lam
                    if ev.truth(m, y, outside, tag) != d_in:
                        rep.violations.append(_witness(table, k, "complement-3", lam,
                                                       f"world {m.worlds[y]} of {g}"))
                    if ev.truth(m, y, within, tag) != (lam <= p.agreement):
                        rep.violations.append(_witness(table, k, "complement-4", lam,
                                                       f"world {m.worlds[y]} of {g}"))
                    if d_in and cmp_lex(wd[y], wl) > 0:
                        rep.violations.append(_witness(table, k, "complement-5", lam,
                                                       f"world {m.worlds[y]} of {g}"))
        ev.clear()


def theorem_sweep(b: EnumerationBounds, corpus=None, cpsets=None, checks=THEOREM_CHECKS,
                  table: FrameTable | None = None, max_examples: int = 50) -> SweepReport:
    """Differential checks of the update theorems over every enumerated model.

    On weakly centered bounds, i/d disagreements and maximal-set mismatches
    are logged as findings instead of violations.
    """
    table = table or FrameTable(b)
    cpsets = list(cpsets) if cpsets is not None else literal_cpsets(b.atoms)
    corpus = corpus if corpus is not None else generate_formulas(7, b.atoms, cpsets, 1)
    centered = b.centering is Centering.CENTERED
    rep = SweepReport(b, table.models, table.pointed, len(table), len(corpus))

    def record(check, k, f, detail, expected_failure=False):
        sink = rep.findings if expected_failure else rep.violations
        if len(sink) < max_examples:
            sink.append(_witness(table, k, check, f, detail))

    for f in corpus:
        vi, va, vd = (table.vector(f, t) for t in TAGS)
        if "a=d" in checks:
            rep.count("a=d", len(table))
            if va != vd:
                record("a=d", table.first(va ^ vd), f, "agreement vs disagreement")
        if "i=d" in checks:
            rep.count("i=d", len(table))
            if vi != vd:
                record("i=d", table.first(vi ^ vd), f, "implausibility vs disagreement",
                       expected_failure=not centered)
        if "maximal" in checks:
            for t, v in zip(TAGS, (vi, va, vd)):
                rep.count("maximal", len(table))
                vm = table.vector(f, t, "maximal")
                if vm != v:
                    record("maximal", table.first(vm ^ v), f, f"update {t.value}",
                           expected_failure=not centered)
        if "separation" in checks:
            # formulas valid under one update but not another
            if (vi == table.full) != (vd == table.full):
                rep.findings.append(Finding("separation", "", "", to_text(f),
                                            f"valid under {'i' if vi == table.full else 'd'} only"))
            rep.count("separation")
    if "symmetry" in checks or "monotonicity" in checks:
        _sweep_weights(table, rep)
    if "duality" in checks or any(c.startswith("complement") for c in checks):
        _sweep_sets(table, rep, cpsets, UpdateTag.D)
    return rep


# -- translation, interdefinability, preservation ---------------------------------

def translation_sweep(b: EnumerationBounds, corpus=None, max_cpl: int = 2,
                      table: FrameTable | None = None, max_examples: int = 50) -> SweepReport:
    """Anchor-point agreement of each formula with its cp-free translation under d.

    Formulas are rewritten into plausibility form first; only those with at
    most ``max_cpl`` non-empty cp-sets afterwards are checked.
    """
    from .formula import cpl, rewrite_cf_to_pl
    table = table or FrameTable(b)
    corpus = corpus if corpus is not None else generate_formulas(7, b.atoms)
    rep = SweepReport(b, table.models, table.pointed, len(table), 0)
    for f in corpus:
        g = rewrite_cf_to_pl(f)
        if cpl(g) > max_cpl:
            continue
        rep.formulas += 1
        rep.count("translation", len(table))
        diff = table.vector(g, UpdateTag.D) ^ table.vector(g, UpdateTag.D, "hat")
        if diff and len(rep.violations) < max_examples:
            rep.violations.append(_witness(table, table.first(diff), "translation", f))
    return rep


def interdefinability_sweep(b: EnumerationBounds, corpus=None,
                            table: FrameTable | None = None,
                            max_examples: int = 50) -> SweepReport:
    from .formula import rewrite_cf_to_pl, rewrite_pl_to_cf
    table = table or FrameTable(b)
    corpus = corpus if corpus is not None else generate_formulas(7, b.atoms)
    rep = SweepReport(b, table.models, table.pointed, len(table), len(corpus))
    for f in corpus:
        for t in TAGS:
            v = table.vector(f, t)
            for name, rw in (("cf->pl", rewrite_cf_to_pl), ("pl->cf", rewrite_pl_to_cf)):
                rep.count(name, len(table))
                diff = v ^ table.vector(rw(f), t)
                if diff and len(rep.violations) < max_examples:
                    rep.violations.append(_witness(table, table.first(diff), name, f,
                                                   f"update {t.value}"))
    return rep


def preservation_sweep(b: EnumerationBounds, cpsets=None, per_frame: bool = False,
                       max_examples: int = 50) -> SweepReport:
    """Validate every updated model against the input's centering.

    ``per_frame=True`` checks each distinct (valuation, spheres of x) once;
    updates at x only touch ``S(x)``, so this covers the same outputs.
    """
    cpsets = list(cpsets) if cpsets is not None else literal_cpsets(b.atoms)
    rep = SweepReport(b)
    ev = Evaluator(check_paired=False)
    seen = set()
    for m in enumerate_models(b):
        rep.models += 1
        for x in range(m.n):
            rep.pointed += 1
            if per_frame:
                key = (m.n, m.valuation, m.chain(x), x)
                if key in seen:
                    continue
                seen.add(key)
            rep.frames += 1
            for g in cpsets:
                for t in TAGS:
                    out = ev.updated(m, x, g, t)
                    rep.count("preservation")
                    problems = validate(out)
                    if out.reach(x) != m.reach(x):
                        problems.append("reachable worlds changed")
                    if problems and len(rep.violations) < max_examples:
                        rep.violations.append(Finding(
                            "preservation", save_model(m), m.worlds[x], str(g),
                            f"update {t.value}: " + "; ".join(map(str, problems))))
        ev.clear()
    return rep


def variant_sweep(b: EnumerationBounds, corpus=None, max_size: int = 5, tags=TAGS,
                  max_examples: int = 20) -> SweepReport:
    """Where the operand-in-original (a) and all-worlds (c) readings differ from b.

    Differences are expected at modal depth two and are logged as findings,
    not violations.  Every enumerated model is evaluated in full.
    """
    if corpus is None:
        corpus = [f for f in generate_formulas(max_size, b.atoms, literal_cpsets(b.atoms, 1), 2)
                  if modal_depth(f) >= 2]
    rep = SweepReport(b, formulas=len(corpus))
    evs = {v: Evaluator(variant=v) for v in ("a", "b", "c")}
    for m in enumerate_models(b):
        rep.models += 1
        rep.pointed += m.n
        for f in corpus:
            for t in tags:
                for y in range(m.n):
                    ref = evs["b"].truth(m, y, f, t)
                    for v in ("a", "c"):
                        rep.count(f"{v}=b")
                        if evs[v].truth(m, y, f, t) != ref:
                            rep.findings.append(Finding(
                                f"{v}=b", save_model(m), m.worlds[y], to_text(f),
                                f"update {t.value}: b={ref}"))
        for ev in evs.values():
            ev.clear()
    rep.findings = _first_per_check(rep.findings, max_examples)
    return rep


def _first_per_check(findings, limit):
    out, seen = [], {}
    for f in findings:
        seen[f.check] = seen.get(f.check, 0) + 1
        if seen[f.check] <= limit:
            out.append(f)
    return out
