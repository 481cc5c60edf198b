"""Seeded battery of the algebraic and model-theoretic laws.

Each case index gets its own RNG (seeded from the run seed and the index), so
a case is reproducible in isolation and results do not depend on execution
order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import equivalence, setops, ue
from .gen import perturb_kripke, permute_nbhd, random_formula, random_kripke, random_nbhd
from .models import to_data
from .syntax import Delta, Nabla, Not, nabla_to_box, print_formula
from .ultrafilters import all_ultrafilters, check_ultrafilter, hat, principal_list

LAWS = (
    "m_delta_meet",
    "m_nabla_split",
    "m_delta_complement",
    "m_nabla_complement_invariant",
    "m_c_complement_invariant",
    "hat_homomorphism",
    "nabla_rewrite",
    "delta_is_not_nabla",
    "ue_truth_transfer",
    "equivalence_transfer",
    "ultrafilter_enumeration",
)


class LawFailure(Exception):
    def __init__(self, law, case, detail):
        super().__init__(f"{law} failed on case {case}")
        self.law = law
        self.case = case
        self.detail = detail


@dataclass
class SuiteResult:
    seed: int
    count: int
    max_states: int
    passes: dict = field(default_factory=lambda: {law: 0 for law in LAWS})
    failure: LawFailure | None = None

    def to_json(self) -> dict:
        out = {
            "seed": self.seed,
            "count": self.count,
            "max_states": self.max_states,
            "status": "fail" if self.failure else "pass",
            "passes": self.passes,
        }
        if self.failure:
            out["failure"] = {
                "law": self.failure.law,
                "case": self.failure.case,
                "counterexample": self.failure.detail,
            }
        return out


def _fail(law, case, **detail):
    raise LawFailure(law, case, detail)


def _setops_laws(case, rng, res, km, nm):
    n, full = km.n, km.full
    x, y, x2 = (rng.getrandbits(n) for _ in range(3))
    md, mn = setops.m_delta, setops.m_nabla
    where = {"model": to_data(km), "X": km.names_of(x), "Y": km.names_of(y), "X'": km.names_of(x2)}
    if md(km, x) & md(km, y) & ~md(km, x & y):
        _fail("m_delta_meet", case, **where)
    res.passes["m_delta_meet"] += 1
    if mn(km, x & y) & mn(km, x2 & (full & ~y)) & ~mn(km, y):
        _fail("m_nabla_split", case, **where)
    res.passes["m_nabla_split"] += 1
    if md(km, x) != full & ~mn(km, x):
        _fail("m_delta_complement", case, **where)
    res.passes["m_delta_complement"] += 1
    if mn(km, x) != mn(km, full & ~x) or md(km, x) != md(km, full & ~x):
        _fail("m_nabla_complement_invariant", case, **where)
    res.passes["m_nabla_complement_invariant"] += 1

    z = rng.getrandbits(nm.n)
    if setops.m_c(nm, z) != setops.m_c(nm, nm.full & ~z):
        _fail("m_c_complement_invariant", case, model=to_data(nm), X=nm.names_of(z))
    res.passes["m_c_complement_invariant"] += 1

    pts = principal_list(km.states)
    if hat(x & y, pts) != hat(x, pts) & hat(y, pts) or hat(full & ~x, pts) != full & ~hat(x, pts):
        _fail("hat_homomorphism", case, **where)
    res.passes["hat_homomorphism"] += 1


def _semantic_laws(case, rng, res, km, nm):
    f = random_formula(rng, lang="box", depth=2)
    g = Nabla(f)
    if setops.extension(km, g) != setops.extension(km, nabla_to_box(g)):
        _fail("nabla_rewrite", case, model=to_data(km), formula=print_formula(g))
    res.passes["nabla_rewrite"] += 1
    h = random_formula(rng, lang="nabla", depth=2)
    for m in (km, nm):
        if setops.extension(m, Delta(h)) != setops.extension(m, Not(Nabla(h))):
            _fail("delta_is_not_nabla", case, model=to_data(m), formula=print_formula(h))
    res.passes["delta_is_not_nabla"] += 1


def _ue_laws(case, rng, res, km, nm):
    km2 = perturb_kripke(rng, km) if rng.random() < 0.5 else random_kripke(rng, km.n)
    nm2 = permute_nbhd(rng, nm) if rng.random() < 0.5 else random_nbhd(rng, nm.n)
    for m, m2 in ((km, km2), (nm, nm2)):
        for kind in ue.kinds_for(m):
            lang = ue.UE_LANG[kind]
            ext = ue.build_ue(m, kind)
            report = ue.canonical_map_check(m, ext, lang)
            if not report.all_equivalent:
                _fail("ue_truth_transfer", case, kind=kind, model=to_data(m),
                      report=report.to_json())
            res.passes["ue_truth_transfer"] += 1
            ext2 = ue.build_ue(m2, kind)
            w1, w2 = rng.choice(m.states), rng.choice(m2.states)
            for lg in equivalence.APPLICABLE_LANGS[kind]:
                lhs, rhs = equivalence.equivalence_transfer(m, w1, m2, w2, lg, kind, ext, ext2)
                if lhs != rhs:
                    _fail("equivalence_transfer", case, kind=kind, lang=lg,
                          left=to_data(m), w1=w1, right=to_data(m2), w2=w2, lhs=lhs, rhs=rhs)
                res.passes["equivalence_transfer"] += 1


def _ultrafilter_law(case, res):
    n = case + 1
    base = tuple(str(i) for i in range(n))
    found = all_ultrafilters(base)
    principal = principal_list(base)
    if found != principal or any(check_ultrafilter(u.as_family()) for u in found):
        _fail("ultrafilter_enumeration", case, base=list(base), found=[repr(u) for u in found])
    res.passes["ultrafilter_enumeration"] += 1


def run_case(seed: int, case: int, max_states: int, res: SuiteResult) -> None:
    rng = random.Random(f"{seed}:{case}")
    km = random_kripke(rng, max_states)
    nm = random_nbhd(rng, max_states)
    _setops_laws(case, rng, res, km, nm)
    _semantic_laws(case, rng, res, km, nm)
    _ue_laws(case, rng, res, km, nm)
    if case < 4:
        _ultrafilter_law(case, res)


def run_suite(seed: int = 0, count: int = 100, max_states: int = 5) -> SuiteResult:
    res = SuiteResult(seed, count, max_states)
    try:
        for case in range(count):
            run_case(seed, case, max_states, res)
    except LawFailure as exc:
        res.failure = exc
    return res
