"""Logical equivalence, bisimilarity and saturation checks on finite models.

The central object is the definable-set closure of a model: the least family
of state sets that contains the whole set and every atom's extension and is
closed under complement, intersection and the language's m-operator. Such a
family is a Boolean algebra, so it is stored by its atoms (the blocks of a
partition); two states are logically equivalent iff they share a block.
Each block keeps a witness formula defining it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import KindMismatchError, SizeCapError
from .models import KripkeModel, Model, NeighborhoodModel, bits, disjoint_union
from .setops import as_model, extension, m_box, m_c, m_n, m_nabla
from .syntax import And, Atom, Bot, Box, Delta, Formula, Nabla, Not, Or, Top, print_formula

CLOSURE_CAP = 16
FRAGMENT_CAP = 10


def _conj(a: Formula, b: Formula) -> Formula:
    return b if isinstance(a, Top) else And(a, b)


def _disj(parts: list[Formula]) -> Formula:
    if not parts:
        return Bot()
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def operator_for(m: Model, lang: str):
    """(m-operator, formula constructor) generating the closure for ``lang``.

    Diamond and non-contingency need no generator of their own on Kripke
    models: they are complements of box / nabla images of complements.
    """
    if lang not in ("box", "nabla"):
        raise ValueError(f"unknown language {lang!r}")
    if isinstance(m, KripkeModel):
        return (m_box, Box) if lang == "box" else (m_nabla, Nabla)
    return (m_n, Box) if lang == "box" else (m_c, Delta)


class _Partition:
    """Blocks of a state partition, each with a defining formula."""

    def __init__(self, full: int):
        self.full = full
        self.blocks = [full] if full else []
        self.witness = [Top()] if full else []

    def splits(self, y: int) -> bool:
        return any(b & y and b & ~y for b in self.blocks)

    def refine(self, y: int, wy: Formula) -> None:
        blocks, witness = [], []
        for b, w in zip(self.blocks, self.witness):
            inside, outside = b & y, b & ~y
            if inside and outside:
                blocks += [inside, outside]
                witness += [_conj(w, wy), _conj(w, Not(wy))]
            else:
                blocks.append(b)
                witness.append(w)
        self.blocks, self.witness = blocks, witness

    def union_witness(self, x: int) -> Formula:
        if x == self.full:
            return Top()
        return _disj([w for b, w in zip(self.blocks, self.witness) if b & x])

    def unions(self):
        """Every union of blocks, in increasing order of block selection code."""
        k = len(self.blocks)
        for code in range(1 << k):
            x = 0
            for i in bits(code):
                x |= self.blocks[i]
            yield x


@dataclass
class DefinableClosure:
    model: Model
    lang: str
    op_name: str
    blocks: list[int]
    block_witness: list[Formula]
    splitters: list[tuple[int, Formula]] = field(default_factory=list)

    def __len__(self) -> int:
        return 1 << len(self.blocks)

    def __contains__(self, x: int) -> bool:
        return all(not (b & x) or not (b & ~x) for b in self.blocks)

    @property
    def sets(self) -> list[int]:
        """Every member, ascending. There are 2**len(blocks) of them."""
        p = _Partition(self.model.full)
        p.blocks = self.blocks
        return sorted(p.unions())

    def witness(self, x: int) -> Formula:
        if x not in self:
            raise KeyError(f"{x:#x} is not definable")
        if x == self.model.full:
            return Top()
        return _disj([w for b, w in zip(self.blocks, self.block_witness) if b & x])

    def block_of(self, i: int) -> int:
        for k, b in enumerate(self.blocks):
            if b >> i & 1:
                return k
        raise IndexError(i)

    def equivalent(self, i: int, j: int) -> bool:
        return self.block_of(i) == self.block_of(j)

    def separating(self, i: int, j: int) -> Formula | None:
        """A formula true at exactly one of states i and j, if any."""
        for y, wy in self.splitters:
            if (y >> i & 1) != (y >> j & 1):
                return wy
        return None

    def to_json(self) -> dict:
        m = self.model
        return {
            "lang": self.lang,
            "operator": self.op_name,
            "size": len(self),
            "blocks": [m.names_of(b) for b in self.blocks],
            "witness_formulas": {
                " ".join(m.names_of(b)): print_formula(w)
                for b, w in zip(self.blocks, self.block_witness)
            },
        }


def _nbhd_candidates(m: NeighborhoodModel, blocks: list[int]):
    """Unions of blocks that are a neighborhood of some state."""
    for i in range(m.n):
        scope = m.scope[i]
        free = [b for b in blocks if not b & scope]
        for z in sorted(m.nbhd[i]):
            base = 0
            for b in blocks:
                part = b & scope
                if part & z:
                    if part & ~z:
                        break
                    base |= b
            else:
                for code in range(1 << len(free)):
                    x = base
                    for k in bits(code):
                        x |= free[k]
                    yield x


def _kripke_candidates(m: KripkeModel, blocks: list[int], nabla: bool):
    """Unions of blocks among which a splitter exists whenever one exists at all.

    For box it suffices to try the blocks hit by each state's successors; for
    nabla additionally single blocks, and single blocks joined with such a
    hit-union.
    """
    hits = []
    for s in m.succ:
        h = 0
        for b in blocks:
            if b & s:
                h |= b
        hits.append(h)
    yield from dict.fromkeys(hits)
    if nabla:
        yield from blocks
        for b in blocks:
            for h in dict.fromkeys(hits):
                yield b | h


def definable_closure(m, lang: str, exhaustive: bool = False) -> DefinableClosure:
    """Least definable-set family of ``m`` for ``lang`` (by partition refinement).

    With ``exhaustive`` every union of current blocks is tried as an operator
    argument; otherwise only a candidate list that provably contains a
    splitter whenever one exists.
    """
    m = as_model(m)
    if m.n > CLOSURE_CAP:
        raise SizeCapError(f"definable closure is capped at {CLOSURE_CAP} states")
    op, cons = operator_for(m, lang)
    part = _Partition(m.full)
    splitters = [(m.full, Top())]
    for atom, mask in sorted(m.val.items()):
        splitters.append((mask, Atom(atom)))
        part.refine(mask, Atom(atom))
    while True:
        if exhaustive:
            cands = part.unions()
        elif isinstance(m, KripkeModel):
            cands = _kripke_candidates(m, part.blocks, lang == "nabla")
        else:
            cands = _nbhd_candidates(m, part.blocks)
        for x in cands:
            y = op(m, x)
            if part.splits(y):
                wy = cons(part.union_witness(x))
                splitters.append((y, wy))
                part.refine(y, wy)
                break
        else:
            break
    return DefinableClosure(m, lang, op.__name__, part.blocks, part.witness, splitters)


def _union_indices(m1, w1, m2, w2):
    m1, m2 = as_model(m1), as_model(m2)
    if m1.kind != m2.kind:
        raise KindMismatchError(f"cannot compare a {m1.kind} model with a {m2.kind} model")
    u = disjoint_union(m1, m2)
    return u, m1.index(w1), m1.n + m2.index(w2)


def distinguishing_formula(m1, w1, m2, w2, lang: str) -> Formula | None:
    """A formula of ``lang`` true at one point and false at the other, or None."""
    u, i, j = _union_indices(m1, w1, m2, w2)
    return definable_closure(u, lang).separating(i, j)


def logically_equivalent(m1, w1, m2, w2, lang: str) -> bool:
    """(m1, w1) and (m2, w2) satisfy the same formulas of ``lang``."""
    u, i, j = _union_indices(m1, w1, m2, w2)
    return definable_closure(u, lang).equivalent(i, j)


# ------------------------------------------------- depth-bounded enumeration


def _boolean_closure(full: int, gens) -> dict[int, Formula]:
    part = _Partition(full)
    for y, wy in gens:
        if part.splits(y):
            part.refine(y, wy)
    return {x: part.union_witness(x) for x in part.unions()}


def definable_up_to_depth(m, lang: str, depth: int) -> dict[int, Formula]:
    """Extensions of all ``lang`` formulas of modal depth <= depth, one witness each.

    Level k is the Boolean algebra generated by the atoms and the operator
    images of every level k-1 set.
    """
    m = as_model(m)
    op, cons = operator_for(m, lang)
    atom_gens = [(mask, Atom(a)) for a, mask in sorted(m.val.items())]
    level = _boolean_closure(m.full, atom_gens)
    for _ in range(depth):
        gens = atom_gens + [(op(m, x), cons(w)) for x, w in sorted(level.items())]
        level = _boolean_closure(m.full, gens)
    return level


def bounded_equivalent(m1, w1, m2, w2, lang: str, depth: int) -> bool:
    """Agreement on every ``lang`` formula of modal depth <= depth."""
    u, i, j = _union_indices(m1, w1, m2, w2)
    return all((x >> i & 1) == (x >> j & 1) for x in definable_up_to_depth(u, lang, depth))


# --------------------------------------------------------------- bisimilarity


def bisimulation_classes(m: KripkeModel) -> list[int]:
    """Block number of each state under the coarsest bisimulation."""
    atoms = sorted(m.val)
    key = [tuple(m.val[a] >> i & 1 for a in atoms) for i in range(m.n)]
    block = _renumber(key)
    while True:
        key = [
            (block[i], frozenset(block[j] for j in bits(m.succ[i]))) for i in range(m.n)
        ]
        new = _renumber(key)
        if len(set(new)) == len(set(block)):
            return new
        block = new


def _renumber(keys) -> list[int]:
    ids: dict = {}
    return [ids.setdefault(k, len(ids)) for k in keys]


def kripke_bisimilar(m1, w1, m2, w2) -> bool:
    m1, m2 = as_model(m1), as_model(m2)
    if not (isinstance(m1, KripkeModel) and isinstance(m2, KripkeModel)):
        raise KindMismatchError("bisimilarity is defined for Kripke models only")
    u, i, j = _union_indices(m1, w1, m2, w2)
    classes = bisimulation_classes(u)
    return classes[i] == classes[j]


# ----------------------------------------------------------------- saturation


@dataclass
class SaturationReport:
    violations: list[dict]
    checked: int
    fragment: list[Formula]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "violations": self.violations,
            "checked": self.checked,
            "witness_formulas": {str(k): print_formula(f) for k, f in enumerate(self.fragment)},
        }


def _compactness_violations(exts: list[int], region: int) -> tuple[list[int], int]:
    """Subsets Gamma (as index codes) that are finitely satisfiable in ``region``
    but not satisfiable there.

    Every subset of a finite Gamma is finite, so finite satisfiability ranges
    over all subsets including Gamma itself; ``fin[code]`` is computed from
    the one-element-smaller subsets.
    """
    k = len(exts)
    sat = [False] * (1 << k)
    fin = [False] * (1 << k)
    bad = []
    for code in range(1 << k):
        common = region
        for i in bits(code):
            common &= exts[i]
        sat[code] = common != 0
        fin[code] = sat[code] and all(fin[code & ~(1 << i)] for i in bits(code))
        if fin[code] and not sat[code]:
            bad.append(code)
    return bad, 1 << k


def _check_fragment(fragment, cap):
    fragment = list(fragment)
    if len(fragment) > cap:
        raise SizeCapError(f"fragment of {len(fragment)} formulas exceeds the cap of {cap}")
    return fragment


def check_nabla_saturation(m, fragment, cap: int = FRAGMENT_CAP) -> SaturationReport:
    """Every fragment subset finitely satisfiable among the successors of a
    state is satisfiable there."""
    m = as_model(m)
    if not isinstance(m, KripkeModel):
        raise KindMismatchError("nabla saturation is checked on Kripke models")
    fragment = _check_fragment(fragment, cap)
    exts = [extension(m, f) for f in fragment]
    violations, checked = [], 0
    for i, succ in enumerate(m.succ):
        bad, n = _compactness_violations(exts, succ)
        checked += n
        for code in bad:
            violations.append(
                {"state": m.states[i], "gamma": [print_formula(fragment[k]) for k in bits(code)]}
            )
    return SaturationReport(violations, checked, fragment)


def check_delta_saturation(m, fragment, cap: int = FRAGMENT_CAP) -> SaturationReport:
    """For each neighborhood closed under fragment-equivalence, both it and its
    complement are compact with respect to fragment subsets."""
    m = as_model(m)
    if not isinstance(m, NeighborhoodModel):
        raise KindMismatchError("delta saturation is checked on neighborhood models")
    fragment = _check_fragment(fragment, cap)
    exts = [extension(m, f) for f in fragment]
    profile = [tuple(e >> i & 1 for e in exts) for i in range(m.n)]
    classes: dict = {}
    for i, key in enumerate(profile):
        classes[key] = classes.get(key, 0) | 1 << i

    def closed(x):
        return all(not (c & x) or not (c & ~x) for c in classes.values())

    violations, checked = [], 0
    for i in range(m.n):
        for x in m.family(i):
            if not closed(x):
                continue
            for region in (x, m.full & ~x):
                bad, n = _compactness_violations(exts, region)
                checked += n
                for code in bad:
                    violations.append(
                        {
                            "state": m.states[i],
                            "region": m.names_of(region),
                            "gamma": [print_formula(fragment[k]) for k in bits(code)],
                        }
                    )
    return SaturationReport(violations, checked, fragment)


# -------------------------------------------------------- equivalence transfer


APPLICABLE_LANGS = {
    "normal": ("box", "nabla"),
    "classical_nbhd": ("box", "nabla"),
    "contingency_ea": ("nabla",),
    "contingency_a": ("nabla",),
    "contingency_nbhd": ("nabla",),
}


def applicable(m: Model, ue_kind: str, lang: str) -> bool:
    from .ue import kinds_for

    return ue_kind in kinds_for(as_model(m)) and lang in APPLICABLE_LANGS.get(ue_kind, ())


def equivalence_transfer(m1, w1, m2, w2, lang: str, ue_kind: str, ue1=None, ue2=None):
    """(equivalent on the originals, equivalent between the extensions at pi_w1, pi_w2).

    Prebuilt extensions may be passed in to avoid rebuilding them.
    """
    from .ue import build_ue

    m1, m2 = as_model(m1), as_model(m2)
    if m1.kind != m2.kind:
        raise KindMismatchError(f"cannot compare a {m1.kind} model with a {m2.kind} model")
    if not applicable(m1, ue_kind, lang):
        raise KindMismatchError(f"{ue_kind} does not apply to {m1.kind} models in language {lang}")
    ue1 = ue1 or build_ue(m1, ue_kind)
    ue2 = ue2 or build_ue(m2, ue_kind)
    lhs = logically_equivalent(m1, w1, m2, w2, lang)
    rhs = logically_equivalent(ue1.model, "pi_" + w1, ue2.model, "pi_" + w2, lang)
    return lhs, rhs
