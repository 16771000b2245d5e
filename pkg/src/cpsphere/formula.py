"""Formula AST, concrete syntax, duals and the counterfactual/plausibility rewrites.

Only five node types exist: atoms, falsum, implication, the cp-counterfactual
and the cp-comparative-plausibility.  Negation, conjunction, disjunction,
verum and the possibility operator are built from those and are recognised
again by the printer, so ``parse(to_text(f)) == f`` for every formula.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

__all__ = [
    "Atom", "Falsum", "Implies", "CpCounterfactual", "CpPlausibility",
    "CpSet", "Formula", "FALSE", "TRUE", "ParseError",
    "neg", "conj", "disj", "big_conj", "big_disj", "diamond",
    "counterfactual", "plausibility",
    "parse", "to_text", "dual", "is_paired", "cpl", "size", "modal_depth",
    "cp_sets", "atoms_of", "subformulas", "is_propositional",
    "rewrite_cf_to_pl", "rewrite_pl_to_cf",
]


@dataclass(frozen=True)
class Atom:
    name: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("atom", self.name)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Falsum:
    def __hash__(self):
        return 0x5F5F

    def __str__(self):
        return "false"


@dataclass(frozen=True)
class Implies:
    lhs: "Formula"
    rhs: "Formula"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("->", self.lhs, self.rhs)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class CpSet:
    """Finite set of formulas, sorted by their text form, without duplicates."""

    members: tuple = ()
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        uniq = {to_text(m): m for m in self.members}
        object.__setattr__(self, "members", tuple(uniq[k] for k in sorted(uniq)))
        object.__setattr__(self, "_hash", hash(("cpset", self.members)))

    @classmethod
    def of(cls, *members: "Formula") -> "CpSet":
        return cls(tuple(members))

    def __hash__(self):
        return self._hash

    def __iter__(self) -> Iterator["Formula"]:
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, f):
        return f in self.members

    def __bool__(self):
        return bool(self.members)

    def __or__(self, other: "CpSet") -> "CpSet":
        return CpSet(self.members + tuple(other))

    def __sub__(self, other: "CpSet") -> "CpSet":
        drop = set(other)
        return CpSet(tuple(m for m in self.members if m not in drop))

    def __le__(self, other: "CpSet") -> bool:
        return set(self.members) <= set(other.members)

    def __str__(self):
        return "[" + ", ".join(to_text(m) for m in self.members) + "]"


@dataclass(frozen=True)
class CpCounterfactual:
    antecedent: "Formula"
    cpset: CpSet
    consequent: "Formula"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_hash", hash(("=>", self.antecedent, self.cpset, self.consequent)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class CpPlausibility:
    lhs: "Formula"
    cpset: CpSet
    rhs: "Formula"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("<=", self.lhs, self.cpset, self.rhs)))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return to_text(self)


Formula = Union[Atom, Falsum, Implies, CpCounterfactual, CpPlausibility]
Modal = (CpCounterfactual, CpPlausibility)

FALSE = Falsum()
TRUE = Implies(FALSE, FALSE)
EMPTY = CpSet()


# -- sugar -------------------------------------------------------------------

def neg(f: Formula) -> Formula:
    return Implies(f, FALSE)


def conj(a: Formula, b: Formula) -> Formula:
    return neg(Implies(a, neg(b)))


def disj(a: Formula, b: Formula) -> Formula:
    return Implies(neg(a), b)


def big_conj(fs: Iterable[Formula]) -> Formula:
    """Left-folded conjunction; the empty conjunction is ``true``."""
    out = None
    for f in fs:
        out = f if out is None else conj(out, f)
    return TRUE if out is None else out


def big_disj(fs: Iterable[Formula]) -> Formula:
    out = None
    for f in fs:
        out = f if out is None else disj(out, f)
    return FALSE if out is None else out


def diamond(f: Formula) -> Formula:
    return neg(CpPlausibility(FALSE, EMPTY, f))


def counterfactual(a: Formula, b: Formula, members: Iterable[Formula] = ()) -> CpCounterfactual:
    return CpCounterfactual(a, CpSet(tuple(members)), b)


def plausibility(a: Formula, b: Formula, members: Iterable[Formula] = ()) -> CpPlausibility:
    return CpPlausibility(a, CpSet(tuple(members)), b)


def _as_neg(f):
    if isinstance(f, Implies) and isinstance(f.rhs, Falsum):
        return f.lhs
    return None


# -- printing ----------------------------------------------------------------

# binding strength: modal 0 < implication 1 < disjunction 2 < conjunction 3 < unary 4
_MODAL, _IMP, _OR, _AND, _UNARY = range(5)


def _view(f):
    """Classify ``f`` by its surface syntax: (kind, parts)."""
    if isinstance(f, Atom):
        return "atom", ()
    if isinstance(f, Falsum):
        return "false", ()
    if isinstance(f, Modal):
        return "modal", ()
    inner = _as_neg(f)
    if inner is not None:
        if isinstance(inner, Falsum):
            return "true", ()
        if isinstance(inner, Implies):
            nb = _as_neg(inner.rhs)
            if nb is not None:
                return "and", (inner.lhs, nb)
        return "not", (inner,)
    na = _as_neg(f.lhs)
    if na is not None:
        return "or", (na, f.rhs)
    return "imp", (f.lhs, f.rhs)


def _render(f, ctx: int) -> str:
    kind, parts = _view(f)
    if kind == "atom":
        return f.name
    if kind == "false":
        return "false"
    if kind == "true":
        return "true"
    if kind == "not":
        return "~" + _render(parts[0], _UNARY)
    if kind == "and":
        s = f"{_render(parts[0], _AND)} & {_render(parts[1], _UNARY)}"
        level = _AND
    elif kind == "or":
        s = f"{_render(parts[0], _OR)} | {_render(parts[1], _AND)}"
        level = _OR
    elif kind == "imp":
        s = f"{_render(parts[0], _OR)} -> {_render(parts[1], _IMP)}"
        level = _IMP
    else:
        op = "=>" if isinstance(f, CpCounterfactual) else "<="
        left, right = (f.antecedent, f.consequent) if op == "=>" else (f.lhs, f.rhs)
        s = f"{_render(left, _IMP)} {op}{f.cpset} {_render(right, _IMP)}"
        level = _MODAL
    return f"({s})" if level < ctx else s


def to_text(f: Formula) -> str:
    """Canonical concrete syntax of ``f``."""
    return _render(f, _MODAL)


# -- parsing -----------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected: Iterable[str] = ()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"line {line}, column {column}: {message}{detail}")


_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>->|=>|<=|[~&|()\[\],]))")
_KEYWORDS = {"true", "false"}


def _tokenize(src: str):
    pos = 0
    toks = []
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TOKEN.match(src, pos)
        if m is None:
            line, col = _linecol(src, pos)
            raise ParseError(f"unexpected character {src[pos]!r}", line, col,
                             ["IDENT", "true", "false", "~", "(", "->", "=>", "<=", "&", "|"])
        start = m.start("ident") if m.group("ident") else m.start("op")
        text = m.group("ident") or m.group("op")
        kind = "ident" if m.group("ident") and text not in _KEYWORDS else text
        toks.append((kind, text, start))
        pos = m.end()
    toks.append(("eof", "", len(src)))
    return toks


def _linecol(src: str, pos: int):
    line = src.count("\n", 0, pos) + 1
    col = pos - (src.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Parser:
    _ATOM_START = ("IDENT", "true", "false", "~", "(")

    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def take(self, kind=None, expected=()):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            self.fail(expected or [kind])
        self.i += 1
        return tok

    def fail(self, expected):
        kind, text, pos = self.toks[self.i]
        line, col = _linecol(self.src, pos)
        what = "end of input" if kind == "eof" else f"token {text!r}"
        raise ParseError(f"unexpected {what}", line, col, expected)

    def formula(self):
        left = self.implication()
        if self.peek() in ("=>", "<="):
            op = self.take()[0]
            members = self.cpset()
            right = self.implication()
            if self.peek() in ("=>", "<="):
                self.fail(["(", ")", ",", "]", "end of input"])
            cls = CpCounterfactual if op == "=>" else CpPlausibility
            return cls(left, members, right)
        return left

    def cpset(self):
        self.take("[", ["["])
        members = []
        if self.peek() != "]":
            members.append(self.formula())
            while self.peek() == ",":
                self.take()
                members.append(self.formula())
        self.take("]", [",", "]"])
        return CpSet(tuple(members))

    def implication(self):
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.implication())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.peek() == "|":
            self.take()
            left = disj(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.unary()
        while self.peek() == "&":
            self.take()
            left = conj(left, self.unary())
        return left

    def unary(self):
        kind = self.peek()
        if kind == "~":
            self.take()
            return neg(self.unary())
        if kind == "ident":
            return Atom(self.take()[1])
        if kind == "true":
            self.take()
            return TRUE
        if kind == "false":
            self.take()
            return FALSE
        if kind == "(":
            self.take()
            f = self.formula()
            self.take(")", [")"])
            return f
        self.fail(self._ATOM_START)


def parse(source: str) -> Formula:
    """Parse concrete syntax into a formula; raises :class:`ParseError`."""
    p = _Parser(source)
    f = p.formula()
    if p.peek() != "eof":
        p.fail(["end of input", "->", "=>", "<=", "&", "|"])
    return f


# -- structural operations ---------------------------------------------------

def dual(f: Formula) -> Formula:
    """Pair each formula with its negation.

    A formula with an odd number of leading negations is the dual of the
    same formula with one negation stripped; everything else gains one.
    This keeps ``dual`` an involution, even on stacked negations.
    """
    depth, core = 0, f
    while (inner := _as_neg(core)) is not None:
        depth += 1
        core = inner
    return f.lhs if depth % 2 == 1 else neg(f)


def is_paired(g: CpSet) -> bool:
    members = set(g)
    return all(dual(m) in members for m in members)


def cpl(f: Formula) -> int:
    """Number of modal nodes with a non-empty cp-set, cp-set members included."""
    if isinstance(f, (Atom, Falsum)):
        return 0
    if isinstance(f, Implies):
        return cpl(f.lhs) + cpl(f.rhs)
    a, b = _operands(f)
    own = 1 if f.cpset else 0
    return own + cpl(a) + cpl(b) + sum(cpl(m) for m in f.cpset)


def size(f: Formula) -> int:
    """Node count over the primitive grammar; cp-set members are not counted."""
    if isinstance(f, (Atom, Falsum)):
        return 1
    if isinstance(f, Implies):
        return 1 + size(f.lhs) + size(f.rhs)
    a, b = _operands(f)
    return 1 + size(a) + size(b)


def modal_depth(f: Formula) -> int:
    """Nesting depth of conditional operators, empty cp-sets included."""
    if isinstance(f, (Atom, Falsum)):
        return 0
    if isinstance(f, Implies):
        return max(modal_depth(f.lhs), modal_depth(f.rhs))
    a, b = _operands(f)
    inner = [modal_depth(a), modal_depth(b)] + [modal_depth(m) for m in f.cpset]
    return 1 + max(inner)


def is_propositional(f: Formula) -> bool:
    return modal_depth(f) == 0


def _operands(f):
    if isinstance(f, CpCounterfactual):
        return f.antecedent, f.consequent
    return f.lhs, f.rhs


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order walk, descending into operands but not into cp-set members."""
    yield f
    if isinstance(f, Implies):
        yield from subformulas(f.lhs)
        yield from subformulas(f.rhs)
    elif isinstance(f, Modal):
        for part in _operands(f):
            yield from subformulas(part)


def cp_sets(f: Formula) -> set:
    """Every cp-set occurring in ``f``, including inside cp-set members."""
    out = set()
    for g in subformulas(f):
        if isinstance(g, Modal):
            out.add(g.cpset)
            for m in g.cpset:
                out |= cp_sets(m)
    return out


def atoms_of(f: Formula) -> set:
    out = set()
    for g in subformulas(f):
        if isinstance(g, Atom):
            out.add(g.name)
        elif isinstance(g, Modal):
            for m in g.cpset:
                out |= atoms_of(m)
    return out


def _map_modal(f: Formula, fn) -> Formula:
    if isinstance(f, (Atom, Falsum)):
        return f
    if isinstance(f, Implies):
        return Implies(_map_modal(f.lhs, fn), _map_modal(f.rhs, fn))
    a, b = _operands(f)
    g = CpSet(tuple(_map_modal(m, fn) for m in f.cpset))
    return fn(type(f), _map_modal(a, fn), g, _map_modal(b, fn))


def rewrite_cf_to_pl(f: Formula) -> Formula:
    """Replace every ``A =>G B`` by ``(false <=G A) | ~((A & ~B) <=G (A & B))``."""
    def step(cls, a, g, b):
        if cls is CpPlausibility:
            return CpPlausibility(a, g, b)
        return disj(CpPlausibility(FALSE, g, a),
                    neg(CpPlausibility(conj(a, neg(b)), g, conj(a, b))))
    return _map_modal(f, step)


def rewrite_pl_to_cf(f: Formula) -> Formula:
    """Replace every ``A <=G B`` by ``((A | B) =>G false) | ~((A | B) =>G ~A)``."""
    def step(cls, a, g, b):
        if cls is CpCounterfactual:
            return CpCounterfactual(a, g, b)
        either = disj(a, b)
        return disj(CpCounterfactual(either, g, FALSE),
                    neg(CpCounterfactual(either, g, neg(a))))
    return _map_modal(f, step)
