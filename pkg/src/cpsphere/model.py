"""Finite sphere models, validation and the line-oriented model file format.

Worlds are indexed by position; every set of worlds is an int bitmask
(bit ``i`` is ``worlds[i]``).  A world's system of spheres is a chain of
masks ordered innermost first.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

__all__ = [
    "Centering", "SphereModel", "Violation", "ModelError", "ModelParseError",
    "ModelValidationError", "validate", "load_model", "save_model",
    "normalize_chain", "bits",
]


class Centering(str, Enum):
    CENTERED = "centered"
    WEAK = "weak"

    def __str__(self):
        return self.value


def bits(mask: int):
    """Indices of the set bits of ``mask``, ascending."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def normalize_chain(chain: Iterable[int]) -> tuple:
    """Collapse consecutive duplicate spheres."""
    out = []
    for s in chain:
        if not out or out[-1] != s:
            out.append(s)
    return tuple(out)


@dataclass(frozen=True)
class SphereModel:
    worlds: tuple
    valuation: tuple  # sorted (atom, mask) pairs; atoms absent are false everywhere
    systems: tuple  # one chain of masks per world, innermost first
    centering: Centering = Centering.CENTERED
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.worlds, self.valuation, self.systems,
                                                self.centering)))
        object.__setattr__(self, "_index", {w: i for i, w in enumerate(self.worlds)})
        object.__setattr__(self, "_val", dict(self.valuation))

    def __hash__(self):
        return self._hash

    @classmethod
    def build(cls, worlds: Iterable[str], valuation: Mapping[str, Iterable[str]],
              systems: Mapping[str, Iterable[Iterable[str]]],
              centering: Centering | str = Centering.CENTERED) -> "SphereModel":
        """Construct from world names.  Chains are kept in the given order."""
        worlds = tuple(worlds)
        index = {w: i for i, w in enumerate(worlds)}

        def mask(names):
            m = 0
            for n in names:
                if n not in index:
                    raise ModelError(f"unknown world {n!r}")
                m |= 1 << index[n]
            return m

        val = tuple(sorted((a, mask(ws)) for a, ws in valuation.items()))
        chains = []
        for w in worlds:
            if w not in systems:
                raise ModelError(f"world {w!r} has no system of spheres")
            chains.append(normalize_chain(mask(s) for s in systems[w]))
        extra = set(systems) - set(worlds)
        if extra:
            raise ModelError(f"unknown world {sorted(extra)[0]!r}")
        return cls(worlds, val, tuple(chains), Centering(centering))

    # -- lookups ---------------------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.worlds)

    @property
    def all_mask(self) -> int:
        return (1 << len(self.worlds)) - 1

    def index(self, world: str) -> int:
        try:
            return self._index[world]
        except KeyError:
            raise ModelError(f"unknown world {world!r}") from None

    def atom_mask(self, atom: str) -> int:
        return self._val.get(atom, 0)

    @property
    def atoms(self) -> tuple:
        return tuple(a for a, _ in self.valuation)

    def chain(self, x: int) -> tuple:
        return self.systems[x]

    def reach(self, x: int) -> int:
        """Union of the spheres around world ``x``."""
        c = self.systems[x]
        return c[-1] if c else 0

    def names(self, mask: int) -> frozenset:
        return frozenset(self.worlds[i] for i in bits(mask))

    def spheres(self, world: str) -> list:
        return [self.names(s) for s in self.systems[self.index(world)]]

    def mask_of(self, names: Iterable[str]) -> int:
        m = 0
        for n in names:
            m |= 1 << self.index(n)
        return m

    def with_chain(self, x: int, chain: tuple) -> "SphereModel":
        systems = self.systems[:x] + (tuple(chain),) + self.systems[x + 1:]
        return SphereModel(self.worlds, self.valuation, systems, self.centering)

    def with_systems(self, systems) -> "SphereModel":
        return SphereModel(self.worlds, self.valuation, tuple(map(tuple, systems)),
                           self.centering)

    def with_centering(self, centering) -> "SphereModel":
        return SphereModel(self.worlds, self.valuation, self.systems, Centering(centering))

    def format_sphere(self, mask: int) -> str:
        return "{" + " ".join(self.worlds[i] for i in bits(mask)) + "}"

    def format_chain(self, chain) -> str:
        return " ".join(self.format_sphere(s) for s in chain)

    def __str__(self):
        return save_model(self)


class ModelError(ValueError):
    pass


class ModelParseError(ModelError):
    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")


@dataclass(frozen=True)
class Violation:
    kind: str  # worlds | non-emptiness | nesting | centering
    world: str | None
    detail: str

    def __str__(self):
        where = f" at {self.world}" if self.world is not None else ""
        return f"{self.kind}{where}: {self.detail}"


class ModelValidationError(ModelError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(map(str, self.violations)))


def validate(m: SphereModel, centering: Centering | str | None = None) -> list:
    """List every violated sphere-model property; empty when the model is well formed.

    ``centering`` overrides the model's own tag.
    """
    tag = Centering(centering) if centering is not None else m.centering
    out = []
    if not m.worlds:
        out.append(Violation("worlds", None, "no worlds"))
    full = m.all_mask
    for a, mask in m.valuation:
        if mask & ~full:
            out.append(Violation("worlds", None, f"valuation of {a} names unknown worlds"))
    for x, chain in enumerate(m.systems):
        name = m.worlds[x]
        if not chain:
            out.append(Violation("non-emptiness", name, "empty system of spheres"))
            continue
        for s in chain:
            if s == 0:
                out.append(Violation("non-emptiness", name, "empty sphere"))
            if s & ~full:
                out.append(Violation("worlds", name, "sphere names unknown worlds"))
        for inner, outer in zip(chain, chain[1:]):
            if inner & ~outer:
                out.append(Violation(
                    "nesting", name,
                    f"{m.format_sphere(inner)} is not included in {m.format_sphere(outer)}"))
        xbit = 1 << x
        if tag is Centering.CENTERED:
            if chain[0] != xbit:
                out.append(Violation("centering", name,
                                     f"innermost sphere is {m.format_sphere(chain[0])}, "
                                     f"not {{{name}}}"))
        else:
            for s in chain:
                if not s & xbit:
                    out.append(Violation("centering", name,
                                         f"{m.format_sphere(s)} does not contain {name}"))
                    break
    return out


# -- file format -------------------------------------------------------------

_SPHERE = re.compile(r"\{([^{}]*)\}")


def load_model(source: str) -> SphereModel:
    """Parse and validate a model file; raises ModelParseError / ModelValidationError."""
    centering = None
    worlds = None
    valuation = {}
    systems = {}
    for lineno, raw in enumerate(source.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, body = line.partition(":")
        if not sep:
            raise ModelParseError("expected 'key: value'", lineno)
        head, body = head.split(), body.strip()
        if head == ["centering"]:
            if body not in ("centered", "weak"):
                raise ModelParseError("centering must be 'centered' or 'weak'", lineno)
            centering = body
        elif head == ["worlds"]:
            worlds = body.split()
            if len(set(worlds)) != len(worlds):
                raise ModelParseError("duplicate world name", lineno)
        elif len(head) == 2 and head[0] == "val":
            if head[1] in valuation:
                raise ModelParseError(f"duplicate valuation for {head[1]}", lineno)
            valuation[head[1]] = body.split()
        elif len(head) == 2 and head[0] == "spheres":
            if head[1] in systems:
                raise ModelParseError(f"duplicate spheres for {head[1]}", lineno)
            leftover = _SPHERE.sub("", body).strip()
            if leftover:
                raise ModelParseError(f"unexpected text {leftover!r} in sphere list", lineno)
            systems[head[1]] = [s.split() for s in _SPHERE.findall(body)]
        else:
            raise ModelParseError(f"unknown directive {' '.join(head)!r}", lineno)
    if worlds is None:
        raise ModelParseError("missing 'worlds' line", 0)
    if centering is None:
        raise ModelParseError("missing 'centering' line", 0)
    missing = [w for w in worlds if w not in systems]
    if missing:
        raise ModelParseError(f"world {missing[0]!r} has no 'spheres' line", 0)
    m = SphereModel.build(worlds, valuation, systems, centering)
    problems = validate(m)
    if problems:
        raise ModelValidationError(problems)
    return m


def save_model(m: SphereModel) -> str:
    lines = [f"centering: {m.centering.value}", "worlds: " + " ".join(m.worlds)]
    for a, mask in m.valuation:
        lines.append(f"val {a}: " + " ".join(m.worlds[i] for i in bits(mask)))
    for x, chain in enumerate(m.systems):
        lines.append(f"spheres {m.worlds[x]}: {m.format_chain(chain)}")
    return "\n".join(lines) + "\n"
