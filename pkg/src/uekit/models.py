"""Finite Kripke and neighborhood models.

State sets are plain ``int`` bitmasks: bit ``i`` stands for ``states[i]``,
with the ordering fixed by the model file. Models are immutable after
construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from .errors import (
    DuplicateStateError,
    KindMismatchError,
    SchemaError,
    UnknownStateError,
    WidthMismatchError,
)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def bits(mask: int):
    """Indices of the set bits of ``mask``, ascending."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class _Base:
    states: tuple
    val: Mapping[str, int]

    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def full(self) -> int:
        return full_mask(len(self.states))

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownStateError(f"unknown state {name!r}") from None

    def mask_of(self, names: Iterable[str]) -> int:
        m = 0
        for s in names:
            m |= 1 << self.index(s)
        return m

    def names_of(self, mask: int) -> list[str]:
        self.check_width(mask)
        return [self.states[i] for i in bits(mask)]

    def check_width(self, mask: int) -> None:
        if mask < 0 or mask >> len(self.states):
            raise WidthMismatchError(
                f"state set {mask:#x} does not fit a {len(self.states)}-state model"
            )

    def atom_mask(self, atom: str) -> int:
        return self.val.get(atom, 0)

    def _setup(self):
        if len(set(self.states)) != len(self.states):
            dup = next(s for s in self.states if self.states.count(s) > 1)
            raise DuplicateStateError(f"duplicate state name {dup!r}")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.states)})
        object.__setattr__(self, "val", MappingProxyType(dict(sorted(self.val.items()))))
        for atom, m in self.val.items():
            self.check_width(m)


@dataclass(frozen=True, eq=False)
class KripkeModel(_Base):
    """``succ[i]`` is the bitmask of R-successors of state ``i``."""

    states: tuple[str, ...]
    succ: tuple[int, ...]
    val: Mapping[str, int] = field(default_factory=dict)

    kind = "kripke"

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "succ", tuple(self.succ))
        if len(self.succ) != len(self.states):
            raise SchemaError("one successor set per state required")
        self._setup()
        for m in self.succ:
            self.check_width(m)

    @classmethod
    def from_names(cls, states, rel=(), val=None):
        states = tuple(states)
        index = {s: i for i, s in enumerate(states)}
        succ = [0] * len(states)
        for a, b in rel:
            if a not in index or b not in index:
                bad = a if a not in index else b
                raise UnknownStateError(f"rel references unknown state {bad!r}")
            succ[index[a]] |= 1 << index[b]
        vmask = {}
        for atom, names in (val or {}).items():
            m = 0
            for s in names:
                if s not in index:
                    raise UnknownStateError(f"val[{atom!r}] references unknown state {s!r}")
                m |= 1 << index[s]
            vmask[atom] = m
        return cls(states, tuple(succ), vmask)

    @property
    def rel(self) -> set[tuple[str, str]]:
        return {(self.states[i], self.states[j]) for i in range(self.n) for j in bits(self.succ[i])}

    def __eq__(self, other):
        return (
            isinstance(other, KripkeModel)
            and self.states == other.states
            and self.succ == other.succ
            and dict(self.val) == dict(other.val)
        )

    def __hash__(self):
        return hash((self.states, self.succ, tuple(self.val.items())))


@dataclass(frozen=True, eq=False)
class NeighborhoodModel(_Base):
    """Neighborhood model with lazily lifted families.

    ``X`` belongs to the neighborhood of state ``i`` iff
    ``X & scope[i]`` is in ``nbhd[i]``. Plain models have every scope equal to
    the full mask; disjoint unions narrow the scope to the originating side.
    """

    states: tuple[str, ...]
    nbhd: tuple[frozenset, ...]
    val: Mapping[str, int] = field(default_factory=dict)
    scope: tuple[int, ...] | None = None

    kind = "nbhd"

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "nbhd", tuple(frozenset(f) for f in self.nbhd))
        if len(self.nbhd) != len(self.states):
            raise SchemaError("one neighborhood family per state required")
        if self.scope is None:
            object.__setattr__(self, "scope", (full_mask(len(self.states)),) * len(self.states))
        else:
            object.__setattr__(self, "scope", tuple(self.scope))
        self._setup()
        for i, fam in enumerate(self.nbhd):
            for x in fam:
                self.check_width(x)
                if x & ~self.scope[i]:
                    raise WidthMismatchError("neighborhood set outside its scope")

    @classmethod
    def from_names(cls, states, nbhd=None, val=None):
        states = tuple(states)
        index = {s: i for i, s in enumerate(states)}

        def mask(names, where):
            m = 0
            for s in names:
                if s not in index:
                    raise UnknownStateError(f"{where} references unknown state {s!r}")
                m |= 1 << index[s]
            return m

        fams = [set() for _ in states]
        for s, family in (nbhd or {}).items():
            if s not in index:
                raise UnknownStateError(f"nbhd references unknown state {s!r}")
            for x in family:
                fams[index[s]].add(mask(x, f"nbhd[{s!r}]"))
        vmask = {a: mask(names, f"val[{a!r}]") for a, names in (val or {}).items()}
        return cls(states, tuple(frozenset(f) for f in fams), vmask)

    @property
    def is_lifted(self) -> bool:
        return any(sc != self.full for sc in self.scope)

    def contains(self, i: int, x: int) -> bool:
        """Is state set ``x`` a neighborhood of state ``i``?"""
        return (x & self.scope[i]) in self.nbhd[i]

    def family(self, i: int) -> list[int]:
        """Materialized neighborhood family of state ``i``, sorted."""
        free = self.full & ~self.scope[i]
        out = set()
        for z in self.nbhd[i]:
            sub = free
            while True:
                out.add(z | sub)
                if sub == 0:
                    break
                sub = (sub - 1) & free
        return sorted(out)

    def __eq__(self, other):
        return (
            isinstance(other, NeighborhoodModel)
            and self.states == other.states
            and all(self.family(i) == other.family(i) for i in range(self.n))
            and dict(self.val) == dict(other.val)
        )

    def __hash__(self):
        return hash((self.states, tuple(tuple(self.family(i)) for i in range(self.n))))


Model = Union[KripkeModel, NeighborhoodModel]


# ---------------------------------------------------------------- validation


def _is_str_list(x):
    return isinstance(x, list) and all(isinstance(s, str) for s in x)


def _schema_errors(data, kind):
    if not isinstance(data, dict):
        return ["model must be a JSON object"]
    errs = []
    if not _is_str_list(data.get("states")):
        errs.append("'states' must be a list of strings")
    if kind == "kripke":
        rel = data.get("rel", None)
        if not isinstance(rel, list) or not all(
            isinstance(p, list) and len(p) == 2 and _is_str_list(p) for p in rel
        ):
            errs.append("'rel' must be a list of [string, string] pairs")
    else:
        nb = data.get("nbhd", None)
        if not isinstance(nb, dict) or not all(
            isinstance(fam, list) and all(_is_str_list(x) for x in fam) for fam in nb.values()
        ):
            errs.append("'nbhd' must map state names to lists of string lists")
    val = data.get("val", {})
    if not isinstance(val, dict) or not all(_is_str_list(v) for v in val.values()):
        errs.append("'val' must map atom names to lists of strings")
    return errs


def detect_kind(data) -> str:
    if isinstance(data, dict) and "nbhd" in data and "rel" not in data:
        return "nbhd"
    return "kripke"


def validate(m) -> list[str]:
    """List invariant violations of a model or of raw model data.

    Accepts a parsed JSON mapping (as found in a model file) or a constructed
    model. Returns an empty list iff everything is well-formed.
    """
    if isinstance(m, (KripkeModel, NeighborhoodModel)):
        out = []
        if len(set(m.states)) != m.n:
            out.append("duplicate state names")
        sets = list(m.val.items())
        for atom, mask in sets:
            if mask < 0 or mask >> m.n:
                out.append(f"val[{atom!r}] has bits outside the state range")
        if isinstance(m, KripkeModel):
            for i, s in enumerate(m.succ):
                if s < 0 or s >> m.n:
                    out.append(f"rel from {m.states[i]!r} leaves the state range")
        else:
            for i, fam in enumerate(m.nbhd):
                if any(x < 0 or x >> m.n for x in fam):
                    out.append(f"nbhd[{m.states[i]!r}] has a set outside the state range")
        return out

    kind = detect_kind(m)
    errs = _schema_errors(m, kind)
    if errs:
        return errs
    states = m["states"]
    known = set(states)
    out = []
    seen = set()
    for s in states:
        if s in seen:
            out.append(f"duplicate state name {s!r}")
        seen.add(s)
    if kind == "kripke":
        for a, b in m["rel"]:
            for s in (a, b):
                if s not in known:
                    out.append(f"rel references unknown state {s!r}")
    else:
        for s, fam in m["nbhd"].items():
            if s not in known:
                out.append(f"nbhd references unknown state {s!r}")
            for x in fam:
                for t in x:
                    if t not in known:
                        out.append(f"nbhd[{s!r}] references unknown state {t!r}")
    for atom, names in m.get("val", {}).items():
        for t in names:
            if t not in known:
                out.append(f"val[{atom!r}] references unknown state {t!r}")
    return out


def from_data(data, kind: str | None = None) -> Model:
    """Build a model from parsed JSON, raising on any violation."""
    found = detect_kind(data)
    if kind is None:
        kind = found
    if kind not in ("kripke", "nbhd"):
        raise SchemaError(f"unknown model kind {kind!r}")
    errs = _schema_errors(data, kind)
    if errs:
        raise SchemaError("; ".join(errs))
    for problem in validate(data):
        if problem.startswith("duplicate"):
            raise DuplicateStateError(problem)
        raise UnknownStateError(problem)
    if kind == "kripke":
        return KripkeModel.from_names(data["states"], data["rel"], data.get("val", {}))
    return NeighborhoodModel.from_names(data["states"], data["nbhd"], data.get("val", {}))


def load_model(text, kind: str | None = None) -> Model:
    """Parse UTF-8 JSON text (str or bytes) into a validated model.

    ``kind`` is "kripke" or "nbhd"; when omitted it is inferred from the
    presence of a "nbhd" field.
    """
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return from_data(data, kind)


# ------------------------------------------------------------- serialization


def to_data(m: Model) -> dict:
    """Canonical JSON-ready mapping: states in model order, everything else sorted."""
    data: dict = {"states": list(m.states)}
    if isinstance(m, KripkeModel):
        data["rel"] = [list(p) for p in sorted(m.rel)]
    else:
        data["nbhd"] = {
            m.states[i]: sorted(sorted(m.names_of(x)) for x in m.family(i)) for i in range(m.n)
        }
    data["val"] = {a: sorted(m.names_of(mask)) for a, mask in sorted(m.val.items())}
    return data


def dump_model(m: Model, extra: dict | None = None) -> str:
    data = to_data(m)
    if extra:
        data.update(extra)
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


# ------------------------------------------------------------ disjoint union


def disjoint_union(m1: Model, m2: Model) -> Model:
    """Rename states apart with "L:"/"R:" prefixes and put the models side by side.

    Neighborhood families are lifted: for a left state ``s``, ``X`` is a
    neighborhood iff ``X`` restricted to the left part is in ``N1(s)``. The
    lifting stays lazy (see NeighborhoodModel.scope).
    """
    if m1.kind != m2.kind:
        raise KindMismatchError(f"cannot unite a {m1.kind} model with a {m2.kind} model")
    n1 = m1.n
    states = tuple("L:" + s for s in m1.states) + tuple("R:" + s for s in m2.states)
    val = {}
    for atom in set(m1.val) | set(m2.val):
        val[atom] = m1.atom_mask(atom) | (m2.atom_mask(atom) << n1)
    if isinstance(m1, KripkeModel):
        succ = m1.succ + tuple(s << n1 for s in m2.succ)
        return KripkeModel(states, succ, val)
    nbhd = m1.nbhd + tuple(frozenset(x << n1 for x in fam) for fam in m2.nbhd)
    scope = m1.scope + tuple(sc << n1 for sc in m2.scope)
    return NeighborhoodModel(states, nbhd, val, scope)
