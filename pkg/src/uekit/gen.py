"""Seeded random models and formulas for property checks."""

from __future__ import annotations

import random

from .models import KripkeModel, NeighborhoodModel
from .syntax import (
    LANG_OPS,
    And,
    Atom,
    Bot,
    Formula,
    Implies,
    Not,
    Or,
    Top,
)

ATOMS = ("p", "q")


def _states(n):
    return tuple(str(i) for i in range(n))


def random_kripke(rng: random.Random, max_states: int = 5, atoms=ATOMS, min_states: int = 1):
    n = rng.randint(min_states, max_states)
    density = rng.choice((0.15, 0.3, 0.5))
    succ = []
    for _ in range(n):
        row = 0
        for j in range(n):
            if rng.random() < density:
                row |= 1 << j
        succ.append(row)
    val = {a: rng.getrandbits(n) for a in atoms}
    return KripkeModel(_states(n), tuple(succ), val)


def random_nbhd(rng: random.Random, max_states: int = 5, atoms=ATOMS, min_states: int = 1):
    n = rng.randint(min_states, max_states)
    fams = []
    for _ in range(n):
        k = rng.choice((0, 1, 1, 2, 3))
        fams.append(frozenset(rng.getrandbits(n) for _ in range(k)))
    val = {a: rng.getrandbits(n) for a in atoms}
    return NeighborhoodModel(_states(n), tuple(fams), val)


def random_model(rng: random.Random, kind: str, **kw):
    return random_kripke(rng, **kw) if kind == "kripke" else random_nbhd(rng, **kw)


def random_subset(rng: random.Random, n: int) -> int:
    return rng.getrandbits(n) if n else 0


def random_formula(rng: random.Random, atoms=ATOMS, lang: str = "nabla", depth: int = 3,
                   ops=None) -> Formula:
    """Random formula of modal depth at most ``depth``.

    ``ops`` overrides the modal operators to draw from (e.g. all four for a
    Kripke model).
    """
    modal = tuple(ops) if ops is not None else LANG_OPS[lang]

    def go(d, budget):
        r = rng.random()
        if budget <= 0 or r < 0.25:
            c = rng.random()
            if c < 0.1:
                return Top()
            if c < 0.15:
                return Bot()
            return Atom(rng.choice(atoms))
        if r < 0.5 and d > 0:
            return rng.choice(modal)(go(d - 1, budget - 1))
        if r < 0.6:
            return Not(go(d, budget - 1))
        cls = rng.choice((And, Or, Implies))
        return cls(go(d, budget // 2), go(d, budget // 2))

    return go(depth, 8)


def perturb_kripke(rng: random.Random, m: KripkeModel) -> KripkeModel:
    """A model bisimilar to ``m``: a random permutation with one state duplicated."""
    n = m.n
    if n == 0:
        return m
    dup = rng.randrange(n)
    order = list(range(n)) + [dup]
    rng.shuffle(order)
    # new index k copies old state order[k]; successors map to every copy
    copies = {}
    for k, old in enumerate(order):
        copies.setdefault(old, []).append(k)
    succ = []
    for old in order:
        row = 0
        for j in range(n):
            if m.succ[old] >> j & 1:
                for k in copies[j]:
                    row |= 1 << k
        succ.append(row)
    val = {}
    for a, mask in m.val.items():
        v = 0
        for k, old in enumerate(order):
            if mask >> old & 1:
                v |= 1 << k
        val[a] = v
    return KripkeModel(_states(n + 1), tuple(succ), val)


def permute_nbhd(rng: random.Random, m: NeighborhoodModel) -> NeighborhoodModel:
    """An isomorphic copy of ``m`` under a random state permutation."""
    n = m.n
    perm = list(range(n))
    rng.shuffle(perm)  # old i -> new perm[i]

    def move(x):
        y = 0
        for i in range(n):
            if x >> i & 1:
                y |= 1 << perm[i]
        return y

    fams = [None] * n
    for i in range(n):
        fams[perm[i]] = frozenset(move(x) for x in m.family(i))
    val = {a: move(mask) for a, mask in m.val.items()}
    return NeighborhoodModel(_states(n), tuple(fams), val)
