"""Ultrafilter extensions of finite models.

Five constructions, one per language and semantics:

    normal            Kripke, box        R st  iff  m_box(X) in s  implies  X in t, for all X
    classical_nbhd    nbhd, box          N(s) = { hat X : m_n(X) in s }
    contingency_ea    Kripke, nabla      exists X with m_nabla(X) in s such that for all Y,
                                         m_delta(Y) & m_delta(-X | Y) in s implies Y in t
    contingency_a     Kripke, nabla      for all Y, [m_delta(X | Y) in s for all X] implies Y in t
    contingency_nbhd  nbhd, nabla        N(s) = { hat X : m_c(X) in s }

Over a finite base the ultrafilters are exactly the principal ones, so the
points of every extension are pi_w, one per base state, in base order.

Two evaluation methods are available. ``literal`` follows the definitions
word for word: it quantifies over every subset and asks the materialized
member lists of the ultrafilters. ``shortcut`` uses the fact that for
s = pi_w, "Z in s" is just "w in Z", and vectorizes the quantifiers with
numpy. The shortcut is the default; the two are cross-checked in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import KindMismatchError, SizeCapError
from .models import KripkeModel, Model, NeighborhoodModel, bits, dump_model
from .setops import m_box, m_c, m_delta, m_n, m_nabla
from .ultrafilters import Ultrafilter, hat, principal_list

UE_KINDS = ("normal", "classical_nbhd", "contingency_ea", "contingency_a", "contingency_nbhd")
KRIPKE_KINDS = ("normal", "contingency_ea", "contingency_a")
NBHD_KINDS = ("classical_nbhd", "contingency_nbhd")

# The language whose truth each construction preserves.
UE_LANG = {
    "normal": "box",
    "classical_nbhd": "box",
    "contingency_ea": "nabla",
    "contingency_a": "nabla",
    "contingency_nbhd": "nabla",
}

LITERAL_CAP = 12


@dataclass(frozen=True, eq=False)
class UEModel:
    kind: str
    base: Model
    points: list
    model: Model = field(repr=False)

    @property
    def rel_ue(self) -> set[tuple[int, int]] | None:
        if not isinstance(self.model, KripkeModel):
            return None
        return {(i, j) for i, row in enumerate(self.model.succ) for j in bits(row)}

    @property
    def nbhd_ue(self) -> tuple[frozenset, ...] | None:
        if not isinstance(self.model, NeighborhoodModel):
            return None
        return self.model.nbhd

    @property
    def val_ue(self):
        return self.model.val

    def point_name(self, w: str) -> str:
        return "pi_" + w

    def dumps(self) -> str:
        return dump_model(self.model, {"_ue_kind": self.kind})


def _check_size(m: Model):
    if m.n > LITERAL_CAP:
        raise SizeCapError(f"ultrafilter extensions are capped at {LITERAL_CAP} states")


def _require(m, cls, kind):
    if not isinstance(m, cls):
        raise KindMismatchError(f"{kind} needs a {cls.kind} model, got a {m.kind} model")


def _table(m, op) -> np.ndarray:
    return np.fromiter((op(m, x) for x in range(1 << m.n)), dtype=np.int64, count=1 << m.n)


def _forced(subsets: np.ndarray, guard: np.ndarray, w: int) -> int:
    """Intersection of the subsets whose guard mask contains state w."""
    sel = subsets[(guard >> w) & 1 == 1]
    return int(np.bitwise_and.reduce(sel))


def _val_ue(m: Model, points, method):
    if method == "literal":
        return {a: hat(mask, points) for a, mask in m.val.items()}
    return dict(m.val)


def _assemble(kind, m, points, rows=None, fams=None, method="shortcut"):
    names = tuple("pi_" + s for s in m.states)
    val = _val_ue(m, points, method)
    if rows is not None:
        model = KripkeModel(names, tuple(rows), val)
    else:
        model = NeighborhoodModel(names, tuple(frozenset(f) for f in fams), val)
    return UEModel(kind, m, points, model)


def _rows_from_literal(points, related) -> list[int]:
    rows = []
    for s in points:
        row = 0
        for k, t in enumerate(points):
            if related(s, t):
                row |= 1 << k
        rows.append(row)
    return rows


# ------------------------------------------------------------------- normal


def ue_normal(m: KripkeModel, method: str = "shortcut") -> UEModel:
    _require(m, KripkeModel, "normal")
    _check_size(m)
    points = principal_list(m.states)
    subsets = range(1 << m.n)
    if method == "literal":
        boxed = [(x, m_box(m, x)) for x in subsets]

        def related(s, t):
            return all(x in t.members for x, bx in boxed if bx in s.members)

        rows = _rows_from_literal(points, related)
    else:
        arr = np.arange(1 << m.n, dtype=np.int64)
        mb = _table(m, m_box)
        rows = [_forced(arr, mb, w) for w in range(m.n)]
    return _assemble("normal", m, points, rows=rows, method=method)


# ----------------------------------------------------------- neighborhoods


def _nbhd_ue(kind, m: NeighborhoodModel, op, method):
    _require(m, NeighborhoodModel, kind)
    _check_size(m)
    points = principal_list(m.states)
    subsets = range(1 << m.n)
    images = [(x, op(m, x)) for x in subsets]
    if method == "literal":
        fams = [{hat(x, points) for x, mx in images if mx in s.members} for s in points]
    else:
        # on the principal universe hat(X) has the same bit pattern as X
        fams = [{x for x, mx in images if mx >> w & 1} for w in range(m.n)]
    return _assemble(kind, m, points, fams=fams, method=method)


def ue_classical_nbhd(m: NeighborhoodModel, method: str = "shortcut") -> UEModel:
    return _nbhd_ue("classical_nbhd", m, m_n, method)


def ue_contingency_nbhd(m: NeighborhoodModel, method: str = "shortcut") -> UEModel:
    return _nbhd_ue("contingency_nbhd", m, m_c, method)


# -------------------------------------------------------------- contingency


def ue_contingency_ea(m: KripkeModel, method: str = "shortcut") -> UEModel:
    _require(m, KripkeModel, "contingency_ea")
    _check_size(m)
    points = principal_list(m.states)
    full = m.full
    size = 1 << m.n
    if method == "literal":
        md = [m_delta(m, y) for y in range(size)]
        witnesses = []  # per X with nonempty m_nabla(X): the guard sets
        for x in range(size):
            guards = [(y, md[y] & md[(full & ~x) | y]) for y in range(size)]
            witnesses.append((m_nabla(m, x), guards))

        def related(s, t):
            for nab, guards in witnesses:
                if nab in s.members and all(y in t.members for y, g in guards if g in s.members):
                    return True
            return False

        rows = _rows_from_literal(points, related)
    else:
        arr = np.arange(size, dtype=np.int64)
        md = _table(m, m_delta)
        mn = _table(m, m_nabla)
        rows = [0] * m.n
        for x in range(size):
            nab = int(mn[x])
            if not nab:
                continue
            guard = md & md[(full & ~x) | arr]
            for w in bits(nab):
                rows[w] |= _forced(arr, guard, w)
    return _assemble("contingency_ea", m, points, rows=rows, method=method)


def ue_contingency_a(m: KripkeModel, method: str = "shortcut") -> UEModel:
    _require(m, KripkeModel, "contingency_a")
    _check_size(m)
    points = principal_list(m.states)
    size = 1 << m.n
    if method == "literal":
        md = [m_delta(m, z) for z in range(size)]
        guarded = {}

        def related(s, t):
            if s not in guarded:
                guarded[s] = [
                    y for y in range(size) if all(md[x | y] in s.members for x in range(size))
                ]
            return all(y in t.members for y in guarded[s])

        rows = _rows_from_literal(points, related)
    else:
        arr = np.arange(size, dtype=np.int64)
        md = _table(m, m_delta)
        # guard[Y] = states lying in m_delta(X | Y) for every X
        guard = np.fromiter(
            (int(np.bitwise_and.reduce(md[arr | y])) for y in range(size)),
            dtype=np.int64,
            count=size,
        )
        rows = [_forced(arr, guard, w) for w in range(m.n)]
    return _assemble("contingency_a", m, points, rows=rows, method=method)


CONSTRUCTIONS = {
    "normal": ue_normal,
    "classical_nbhd": ue_classical_nbhd,
    "contingency_ea": ue_contingency_ea,
    "contingency_a": ue_contingency_a,
    "contingency_nbhd": ue_contingency_nbhd,
}


def build_ue(m: Model, kind: str, method: str = "shortcut") -> UEModel:
    if kind not in CONSTRUCTIONS:
        raise ValueError(f"unknown ultrafilter-extension kind {kind!r}")
    return CONSTRUCTIONS[kind](m, method=method)


def kinds_for(m: Model) -> tuple[str, ...]:
    return KRIPKE_KINDS if isinstance(m, KripkeModel) else NBHD_KINDS


# ------------------------------------------------------------ canonical map


@dataclass
class CanonicalMapReport:
    kind: str
    lang: str
    equivalent: dict[str, bool]
    isomorphic: bool

    @property
    def all_equivalent(self) -> bool:
        return all(self.equivalent.values())

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "lang": self.lang,
            "equivalent": self.equivalent,
            "all_equivalent": self.all_equivalent,
            "isomorphic": self.isomorphic,
        }


def is_canonical_isomorphism(m: Model, ue: UEModel) -> bool:
    """Does w -> pi_w carry m exactly onto the extension?"""
    target = ue.model
    if m.kind != target.kind or m.n != target.n or dict(m.val) != dict(target.val):
        return False
    if isinstance(m, KripkeModel):
        return m.succ == target.succ
    return all(m.family(i) == target.family(i) for i in range(m.n))


def canonical_map_check(m: Model, ue: UEModel, lang: str | None = None) -> CanonicalMapReport:
    """Compare each (m, w) with (ue, pi_w) in ``lang`` and test w -> pi_w for isomorphism."""
    from .equivalence import logically_equivalent

    if ue.base is not m and ue.base != m:
        raise KindMismatchError("extension was not built from this model")
    lang = lang or UE_LANG[ue.kind]
    equivalent = {
        w: logically_equivalent(m, w, ue.model, ue.point_name(w), lang) for w in m.states
    }
    return CanonicalMapReport(ue.kind, lang, equivalent, is_canonical_isomorphism(m, ue))


def relation_difference(m: KripkeModel) -> set[tuple[str, str]]:
    """Pairs on which the exists-forall and forall contingency relations disagree."""
    ea = ue_contingency_ea(m).rel_ue
    a = ue_contingency_a(m).rel_ue
    return {("pi_" + m.states[i], "pi_" + m.states[j]) for i, j in ea ^ a}


__all__ = [
    "UEModel",
    "Ultrafilter",
    "ue_normal",
    "ue_classical_nbhd",
    "ue_contingency_ea",
    "ue_contingency_a",
    "ue_contingency_nbhd",
    "build_ue",
    "canonical_map_check",
    "relation_difference",
]
