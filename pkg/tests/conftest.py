import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from uekit.models import KripkeModel, NeighborhoodModel, load_model
from uekit.syntax import (
    And,
    Atom,
    Bot,
    Box,
    Delta,
    Diamond,
    Implies,
    Nabla,
    Not,
    Or,
    Top,
)

settings.register_profile(
    "default", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

M0_JSON = '{"states":["0","1","2"],"rel":[["0","1"],["0","2"]],"val":{"p":["1"]}}'


@pytest.fixture
def m0():
    return load_model(M0_JSON)


@pytest.fixture
def m1():
    return KripkeModel.from_names(["0", "1"], [("0", "1")], {"p": ["1"]})


@pytest.fixture
def n0():
    return NeighborhoodModel.from_names(["0", "1"], {"0": [["1"]], "1": []}, {"p": ["1"]})


@pytest.fixture
def refl():
    return KripkeModel.from_names(["x"], [("x", "x")], {"p": ["x"]})


@pytest.fixture
def dead():
    return KripkeModel.from_names(["x'"], [], {"p": ["x'"]})


# ------------------------------------------------------------------ strategies

ATOMS = ("p", "q")


def formulas(ops=(Box, Diamond, Nabla, Delta), atoms=ATOMS, max_leaves=12):
    leaves = st.one_of(st.sampled_from([Atom(a) for a in atoms]), st.just(Top()), st.just(Bot()))

    def extend(children):
        unary = st.sampled_from((Not,) + tuple(ops)).flatmap(lambda c: children.map(c))
        binary = st.tuples(st.sampled_from((And, Or, Implies)), children, children).map(
            lambda t: t[0](t[1], t[2])
        )
        return st.one_of(unary, binary)

    return st.recursive(leaves, extend, max_leaves=max_leaves)


@st.composite
def kripke_models(draw, max_states=5, atoms=ATOMS):
    n = draw(st.integers(1, max_states))
    succ = tuple(draw(st.integers(0, (1 << n) - 1)) for _ in range(n))
    val = {a: draw(st.integers(0, (1 << n) - 1)) for a in atoms}
    return KripkeModel(tuple(str(i) for i in range(n)), succ, val)


@st.composite
def nbhd_models(draw, max_states=4, atoms=ATOMS):
    n = draw(st.integers(1, max_states))
    sets = st.integers(0, (1 << n) - 1)
    fams = tuple(frozenset(draw(st.lists(sets, max_size=3))) for _ in range(n))
    val = {a: draw(sets) for a in atoms}
    return NeighborhoodModel(tuple(str(i) for i in range(n)), fams, val)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
