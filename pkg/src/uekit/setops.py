"""Set-level modal operators and the satisfaction relation.

Each modality has an m-operator on state sets such that applying it to the
extension of a formula gives the extension of the modal formula:

    Kripke:        m_box, m_nabla, m_delta
    neighborhood:  m_n (for box), m_c (for non-contingency)
"""

from __future__ import annotations

from .errors import UnknownStateError, UnsupportedOperatorError
from .models import KripkeModel, Model, NeighborhoodModel
from .syntax import (
    And,
    Atom,
    Bot,
    Box,
    Delta,
    Diamond,
    Formula,
    Implies,
    Nabla,
    Not,
    Or,
    Top,
    subformulas,
)


def as_model(m) -> Model:
    """Accept either a model or an object carrying one in ``.model``."""
    return getattr(m, "model", m)


def complement(m: Model, x: int) -> int:
    m = as_model(m)
    m.check_width(x)
    return m.full & ~x


def m_box(m: KripkeModel, x: int) -> int:
    """States all of whose successors lie in x."""
    m.check_width(x)
    out = 0
    for i, s in enumerate(m.succ):
        if not s & ~x:
            out |= 1 << i
    return out


def m_diamond(m: KripkeModel, x: int) -> int:
    """States with some successor in x."""
    m.check_width(x)
    out = 0
    for i, s in enumerate(m.succ):
        if s & x:
            out |= 1 << i
    return out


def m_nabla(m: KripkeModel, x: int) -> int:
    """States with one successor inside x and another outside it."""
    m.check_width(x)
    out = 0
    for i, s in enumerate(m.succ):
        if s & x and s & ~x:
            out |= 1 << i
    return out


def m_delta(m: KripkeModel, x: int) -> int:
    """States whose successors are all in x or all outside x."""
    m.check_width(x)
    out = 0
    for i, s in enumerate(m.succ):
        if not (s & x and s & ~x):
            out |= 1 << i
    return out


def m_n(m: NeighborhoodModel, x: int) -> int:
    """States having x as a neighborhood."""
    m.check_width(x)
    out = 0
    for i in range(m.n):
        if m.contains(i, x):
            out |= 1 << i
    return out


def m_c(m: NeighborhoodModel, x: int) -> int:
    """States having x or its complement as a neighborhood."""
    m.check_width(x)
    y = m.full & ~x
    out = 0
    for i in range(m.n):
        if m.contains(i, x) or m.contains(i, y):
            out |= 1 << i
    return out


def modal_operator(m: Model, op: type):
    """The m-operator interpreting modality ``op`` on model ``m``."""
    if isinstance(m, KripkeModel):
        table = {Box: m_box, Diamond: m_diamond, Nabla: m_nabla, Delta: m_delta}
    else:
        table = {Box: m_n, Delta: m_c, Nabla: lambda mm, x: mm.full & ~m_c(mm, x)}
    try:
        return table[op]
    except KeyError:
        raise UnsupportedOperatorError(
            f"{op.__name__} has no clause on {m.kind} models"
        ) from None


def extension(m, f: Formula) -> int:
    """Bitmask of the states where ``f`` holds, computed bottom-up."""
    m = as_model(m)
    full = m.full
    ext: dict = {}
    for g in subformulas(f):
        if g in ext:
            continue
        if isinstance(g, Atom):
            v = m.atom_mask(g.name)
        elif isinstance(g, Top):
            v = full
        elif isinstance(g, Bot):
            v = 0
        elif isinstance(g, Not):
            v = full & ~ext[g.sub]
        elif isinstance(g, And):
            v = ext[g.left] & ext[g.right]
        elif isinstance(g, Or):
            v = ext[g.left] | ext[g.right]
        elif isinstance(g, Implies):
            v = (full & ~ext[g.left]) | ext[g.right]
        else:
            v = modal_operator(m, type(g))(m, ext[g.sub])
        ext[g] = v
    return ext[f]


def satisfies(m, w: str, f: Formula) -> bool:
    m = as_model(m)
    if w not in m.states:
        raise UnknownStateError(f"unknown state {w!r}")
    return bool(extension(m, f) >> m.index(w) & 1)
