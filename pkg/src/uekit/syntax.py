"""Formula AST for L(box) and L(nabla), with parser, printer and measures.

Concrete syntax (ASCII)::

    formula := imp
    imp     := or ("->" imp)?
    or      := and ("|" and)*
    and     := unary ("&" unary)*
    unary   := "~" unary | "[]" unary | "<>" unary | "?" unary | "#" unary | atom
    atom    := IDENT | "T" | "F" | "(" formula ")"

``?`` is the contingency operator and ``#`` its negation (non-contingency).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import FormulaSyntaxError


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Not:
    sub: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Box:
    sub: "Formula"


@dataclass(frozen=True)
class Diamond:
    sub: "Formula"


@dataclass(frozen=True)
class Nabla:
    sub: "Formula"


@dataclass(frozen=True)
class Delta:
    sub: "Formula"


Formula = Union[Atom, Top, Bot, Not, And, Or, Implies, Box, Diamond, Nabla, Delta]

UNARY = (Not, Box, Diamond, Nabla, Delta)
BINARY = (And, Or, Implies)
MODAL = (Box, Diamond, Nabla, Delta)

# Modalities allowed in each language.
LANG_OPS = {
    "box": (Box, Diamond),
    "nabla": (Nabla, Delta),
}

_PREFIX = {"~": Not, "[]": Box, "<>": Diamond, "?": Nabla, "#": Delta}
_PREFIX_TEXT = {cls: tok for tok, cls in _PREFIX.items()}
_INFIX_TEXT = {And: "&", Or: "|", Implies: "->"}

_TOKEN = re.compile(
    r"\s*(?:(?P<op>->|\[\]|<>|[~?#&|()])|(?P<ident>[a-z][a-z0-9_]*)|(?P<const>[TF]))"
)
_ATOM_START = {"IDENT", "T", "F", "("}
_UNARY_START = set(_PREFIX) | _ATOM_START


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []  # (kind, spelling, char offset)
        pos = 0
        while True:
            m = _TOKEN.match(text, pos)
            if m is None:
                rest = text[pos:]
                if rest.strip() == "":
                    break
                skip = len(rest) - len(rest.lstrip())
                raise FormulaSyntaxError(
                    f"unexpected character {rest.lstrip()[0]!r}",
                    self._byte(pos + skip),
                    _UNARY_START | {"->", "|", "&", ")"},
                )
            if m.group("op"):
                self.tokens.append((m.group("op"), m.group("op"), m.start("op")))
            elif m.group("ident"):
                self.tokens.append(("IDENT", m.group("ident"), m.start("ident")))
            else:
                self.tokens.append((m.group("const"), m.group("const"), m.start("const")))
            pos = m.end()
        self.end = len(text)
        self.i = 0

    def _byte(self, char_offset):
        return len(self.text[:char_offset].encode("utf-8"))

    def peek(self):
        if self.i < len(self.tokens):
            return self.tokens[self.i][0]
        return None

    def fail(self, expected):
        if self.i < len(self.tokens):
            kind, spelling, off = self.tokens[self.i]
            msg = f"unexpected token {spelling!r}"
        else:
            off = self.end
            msg = "unexpected end of input"
        raise FormulaSyntaxError(msg, self._byte(off), expected)

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def formula(self):
        f = self.imp()
        if self.peek() is not None:
            self.fail({"->", "|", "&", "<end>"})
        return f

    def imp(self):
        left = self.disj()
        if self.peek() == "->":
            self.advance()
            return Implies(left, self.imp())
        return left

    def disj(self):
        f = self.conj()
        while self.peek() == "|":
            self.advance()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.peek() == "&":
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self):
        kind = self.peek()
        if kind in _PREFIX:
            self.advance()
            return _PREFIX[kind](self.unary())
        return self.atom()

    def atom(self):
        kind = self.peek()
        if kind == "IDENT":
            return Atom(self.advance()[1])
        if kind == "T":
            self.advance()
            return Top()
        if kind == "F":
            self.advance()
            return Bot()
        if kind == "(":
            self.advance()
            f = self.imp()
            if self.peek() != ")":
                self.fail({")", "->", "|", "&"})
            self.advance()
            return f
        self.fail(_UNARY_START)


def parse_formula(text: str) -> Formula:
    """Parse ASCII formula text into an AST.

    Raises FormulaSyntaxError carrying the byte offset of the offending token
    and the set of tokens that were acceptable there.
    """
    return _Parser(text).formula()


def print_formula(f: Formula) -> str:
    """Fully parenthesized canonical text; inverse of parse_formula."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bot):
        return "F"
    if isinstance(f, UNARY):
        return f"{_PREFIX_TEXT[type(f)]}({print_formula(f.sub)})"
    if isinstance(f, BINARY):
        return f"({print_formula(f.left)} {_INFIX_TEXT[type(f)]} {print_formula(f.right)})"
    raise TypeError(f"not a formula: {f!r}")


def modal_depth(f: Formula) -> int:
    if isinstance(f, MODAL):
        return 1 + modal_depth(f.sub)
    if isinstance(f, Not):
        return modal_depth(f.sub)
    if isinstance(f, BINARY):
        return max(modal_depth(f.left), modal_depth(f.right))
    return 0


def size(f: Formula) -> int:
    """Number of AST nodes."""
    if isinstance(f, UNARY):
        return 1 + size(f.sub)
    if isinstance(f, BINARY):
        return 1 + size(f.left) + size(f.right)
    return 1


def subformulas(f: Formula) -> Iterator[Formula]:
    """Post-order traversal, children before parents."""
    if isinstance(f, UNARY):
        yield from subformulas(f.sub)
    elif isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    yield f


def atoms(f: Formula) -> set[str]:
    return {g.name for g in subformulas(f) if isinstance(g, Atom)}


def operators(f: Formula) -> set[type]:
    return {type(g) for g in subformulas(f)}


def in_language(f: Formula, lang: str) -> bool:
    """True iff every modality in f belongs to ``lang`` ("box" or "nabla")."""
    allowed = LANG_OPS[lang]
    return all(not isinstance(g, MODAL) or isinstance(g, allowed) for g in subformulas(f))


def nabla_to_box(f: Formula) -> Formula:
    """Rewrite ?φ as <>φ & <>~φ and #φ as its negation, recursively."""
    if isinstance(f, Nabla):
        g = nabla_to_box(f.sub)
        return And(Diamond(g), Diamond(Not(g)))
    if isinstance(f, Delta):
        g = nabla_to_box(f.sub)
        return Not(And(Diamond(g), Diamond(Not(g))))
    if isinstance(f, UNARY):
        return type(f)(nabla_to_box(f.sub))
    if isinstance(f, BINARY):
        return type(f)(nabla_to_box(f.left), nabla_to_box(f.right))
    return f


def enumerate_formulas(atom_names, lang: str, max_depth: int, max_size: int) -> list[Formula]:
    """All formulas over ``atom_names`` with modal depth <= max_depth and at
    most ``max_size`` nodes, using only the modalities of ``lang``.

    Implication is left out since it is expressible with ~ and |. Order is
    deterministic: by size, then by construction order.
    """
    modalities = LANG_OPS[lang]
    by_size: dict[int, list[tuple[Formula, int]]] = {
        1: [(Atom(a), 0) for a in sorted(atom_names)] + [(Top(), 0), (Bot(), 0)]
    }
    for n in range(2, max_size + 1):
        level = []
        for g, d in by_size.get(n - 1, ()):
            level.append((Not(g), d))
            if d < max_depth:
                level.extend((op(g), d + 1) for op in modalities)
        for k in range(1, n - 1):
            for a, da in by_size.get(k, ()):
                for b, db in by_size.get(n - 1 - k, ()):
                    d = max(da, db)
                    level.append((And(a, b), d))
                    level.append((Or(a, b), d))
        by_size[n] = level
    return [g for n in sorted(by_size) for g, _ in by_size[n]]
