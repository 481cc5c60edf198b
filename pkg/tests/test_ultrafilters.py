import pytest
from hypothesis import given
from hypothesis import strategies as st

from uekit.errors import NoFIPError, SizeCapError, UnknownStateError, WidthMismatchError
from uekit.ultrafilters import (
    SetFamily,
    all_ultrafilters,
    check_ultrafilter,
    extend_to_ultrafilter,
    has_fip,
    hat,
    principal,
    principal_list,
)

AB = ("a", "b")
S3 = ("0", "1", "2")


def test_check_ultrafilter_examples():
    assert check_ultrafilter(SetFamily(AB, {0b01, 0b11})) == []
    (v,) = check_ultrafilter(SetFamily(AB, {0b11}))
    assert v.startswith("(v)") and "{a}" in v
    assert check_ultrafilter(SetFamily(AB, set()))[0].startswith("(i)")


def test_check_ultrafilter_reports_each_clause():
    found = check_ultrafilter(SetFamily(S3, {0b111, 0b011, 0b110, 0}))
    clauses = {v.split()[0] for v in found}
    assert {"(ii)", "(iii)", "(iv)"} <= clauses


def test_principal_examples():
    u = principal(S3, "1")
    assert u.members == {0b010, 0b011, 0b110, 0b111}
    assert check_ultrafilter(u.as_family()) == []
    assert repr(u) == "pi_1"
    assert principal(("w",), "w").members == {1}
    with pytest.raises(UnknownStateError):
        principal(S3, "7")


def test_principal_is_lazy_above_cap():
    base = tuple(str(i) for i in range(20))
    u = principal(base, "19")
    assert (1 << 19) in u and 1 not in u
    with pytest.raises(SizeCapError):
        u.members


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n - 1), st.integers(0, (1 << n) - 1))))
def test_principal_membership(args):
    n, w, x = args
    base = tuple(str(i) for i in range(n))
    assert (x in principal(base, base[w])) == bool(x >> w & 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_all_ultrafilters_are_principal(n):
    base = tuple("abcd"[:n])
    found = all_ultrafilters(base)
    assert found == principal_list(base)


def test_all_ultrafilters_cap():
    with pytest.raises(SizeCapError):
        all_ultrafilters("abcde")


def test_fip_and_extension_examples():
    fam = SetFamily(S3, {0b011, 0b110})
    assert has_fip(fam)
    assert extend_to_ultrafilter(fam) == principal(S3, "1")
    assert not has_fip(SetFamily(S3, {0b001, 0b010}))
    assert has_fip(SetFamily(S3, set()))
    assert extend_to_ultrafilter(SetFamily(S3, {0b111})).point == "0"
    u = extend_to_ultrafilter(SetFamily(AB, {0b11}))
    assert u.point == "a"
    with pytest.raises(NoFIPError):
        extend_to_ultrafilter(SetFamily(S3, {0b001, 0b010}))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(1, (1 << n) - 1), max_size=4))))
def test_extension_contains_family(args):
    n, members = args
    base = tuple(str(i) for i in range(n))
    fam = SetFamily(base, members)
    if not has_fip(fam):
        return
    u = extend_to_ultrafilter(fam)
    assert check_ultrafilter(u.as_family()) == []
    assert fam.members <= u.members


def test_hat_examples():
    univ = principal_list(S3)
    assert hat(0b010, univ) == 0b010
    assert hat(0b111, univ) == 0b111
    with pytest.raises(WidthMismatchError):
        hat(0b1000, univ)
    with pytest.raises(WidthMismatchError):
        SetFamily(S3, {0b1000})


@given(st.integers(0, 15), st.integers(0, 15))
def test_hat_is_boolean_embedding(x, y):
    base = tuple("abcd")
    for univ in (principal_list(base), all_ultrafilters(base)):
        assert hat(x & y, univ) == hat(x, univ) & hat(y, univ)
        assert hat(15 & ~x, univ) == 15 & ~hat(x, univ)
