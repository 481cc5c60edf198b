import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import formulas, kripke_models, nbhd_models
from oracles import (
    brute_m_box,
    brute_m_c,
    brute_m_delta,
    brute_m_n,
    brute_m_nabla,
    naive_extension,
)
from uekit.errors import UnknownStateError, UnsupportedOperatorError, WidthMismatchError
from uekit.setops import (
    complement,
    extension,
    m_box,
    m_c,
    m_delta,
    m_diamond,
    m_n,
    m_nabla,
    satisfies,
)
from uekit.syntax import Atom, Box, Delta, Diamond, Nabla, Not, Top, nabla_to_box

p = Atom("p")


def test_m_box_examples(m0):
    assert m_box(m0, 0b111) == 0b111
    assert m_box(m0, 0b010) == 0b110
    assert m_box(m0, m0.val["p"]) == extension(m0, Box(p))


def test_m_nabla_delta_examples(m0):
    assert m_nabla(m0, 0b010) == 0b001
    assert m_nabla(m0, 0) == 0
    assert m_delta(m0, 0b010) == 0b110
    assert m_delta(m0, 0b111) == 0b111


def test_neighborhood_examples(n0):
    assert m_n(n0, 0b10) == 0b01
    assert m_n(n0, 0) == 0
    assert m_c(n0, 0b10) == 0b01
    assert m_c(n0, 0b01) == 0b01
    assert m_n(n0, n0.val["p"]) == extension(n0, Box(p))
    assert extension(n0, Delta(p)) == 0b01


def test_extension_and_satisfies_examples(m0):
    assert extension(m0, Nabla(p)) == 0b001
    assert extension(m0, Top()) == 0b111
    assert satisfies(m0, "0", Nabla(p))
    assert satisfies(m0, "1", Box(p))
    assert satisfies(m0, "2", Top())
    with pytest.raises(UnknownStateError):
        satisfies(m0, "9", p)


def test_diamond_rejected_on_neighborhood_models(n0):
    with pytest.raises(UnsupportedOperatorError):
        extension(n0, Diamond(p))
    # the rewrite into box/negation is fine
    assert extension(n0, Not(Box(Not(p)))) == 0b11


def test_width_mismatch(m0, n0):
    for op, m in ((m_box, m0), (m_nabla, m0), (m_delta, m0), (m_n, n0), (m_c, n0)):
        with pytest.raises(WidthMismatchError):
            op(m, 1 << m.n)


sets = st.integers(0, 31)


@given(kripke_models(), sets)
def test_kripke_operators_match_brute_force(m, x):
    x &= m.full
    assert m_box(m, x) == brute_m_box(m, x)
    assert m_nabla(m, x) == brute_m_nabla(m, x)
    assert m_delta(m, x) == brute_m_delta(m, x)
    assert m_diamond(m, x) == complement(m, m_box(m, complement(m, x)))


@given(nbhd_models(), sets)
def test_nbhd_operators_match_brute_force(m, x):
    x &= m.full
    assert m_n(m, x) == brute_m_n(m, x)
    assert m_c(m, x) == brute_m_c(m, x)


@given(kripke_models(), sets, sets, sets)
def test_contingency_set_laws(m, x, y, z):
    x, y, z = x & m.full, y & m.full, z & m.full
    ny = complement(m, y)
    assert m_delta(m, x) & m_delta(m, y) & ~m_delta(m, x & y) == 0
    assert m_nabla(m, x & y) & m_nabla(m, z & ny) & ~m_nabla(m, y) == 0
    assert m_nabla(m, x) == m_nabla(m, complement(m, x))
    assert m_delta(m, x) == complement(m, m_nabla(m, x))


@given(nbhd_models(), sets)
def test_m_c_complement_law(m, x):
    x &= m.full
    assert m_c(m, x) == m_c(m, complement(m, x))


@given(kripke_models(), formulas())
def test_kripke_extension_matches_naive(m, f):
    assert extension(m, f) == naive_extension(m, f)
    assert extension(m, Nabla(f)) == extension(m, nabla_to_box(Nabla(f)))
    assert extension(m, Delta(f)) == extension(m, Not(Nabla(f)))
    v = extension(m, f)
    assert m_box(m, v) == extension(m, Box(f))
    assert m_nabla(m, v) == extension(m, Nabla(f))
    assert m_delta(m, v) == extension(m, Delta(f))


@given(nbhd_models(), formulas(ops=(Box, Nabla, Delta)))
def test_nbhd_extension_matches_naive(m, f):
    assert extension(m, f) == naive_extension(m, f)
    assert extension(m, Delta(f)) == extension(m, Not(Nabla(f)))
    v = extension(m, f)
    assert m_n(m, v) == extension(m, Box(f))
    assert m_c(m, v) == extension(m, Delta(f))
