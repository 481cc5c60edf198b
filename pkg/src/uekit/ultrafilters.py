"""Ultrafilters over finite base sets.

Every ultrafilter over a finite set is principal, so an Ultrafilter keeps its
generating point (the witness) and answers membership with the test
"witness in X". Member lists are only materialized on request, and never for
bases wider than MATERIALIZE_CAP.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .errors import NoFIPError, SizeCapError, UnknownStateError, WidthMismatchError
from .models import full_mask

MATERIALIZE_CAP = 12
ENUMERATION_CAP = 4


@dataclass(frozen=True)
class SetFamily:
    base: tuple[str, ...]
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(self.base))
        object.__setattr__(self, "members", frozenset(self.members))
        for x in self.members:
            _check_width(x, len(self.base))

    @property
    def full(self) -> int:
        return full_mask(len(self.base))

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class Ultrafilter:
    """The principal ultrafilter generated by ``base[witness]``."""

    base: tuple[str, ...]
    witness: int

    def __contains__(self, x: int) -> bool:
        return bool(x >> self.witness & 1)

    @property
    def point(self) -> str:
        return self.base[self.witness]

    @cached_property
    def members(self) -> frozenset:
        n = len(self.base)
        if n > MATERIALIZE_CAP:
            raise SizeCapError(f"refusing to materialize 2^{n - 1} members")
        return frozenset(x for x in range(1 << n) if x >> self.witness & 1)

    def as_family(self) -> SetFamily:
        return SetFamily(self.base, self.members)

    def __repr__(self):
        return f"pi_{self.point}"


def _check_width(x, n):
    if x < 0 or x >> n:
        raise WidthMismatchError(f"set {x:#x} does not fit a base of {n} points")


def check_ultrafilter(fam: SetFamily) -> list[str]:
    """List the ultrafilter axioms that ``fam`` violates, each with a witness set.

    Clauses: (i) contains the whole base, (ii) closed under intersection,
    (iii) closed under supersets, (iv) excludes the empty set, (v) contains
    exactly one of each set and its complement.
    """
    n = len(fam.base)
    full = full_mask(n)
    mem = fam.members

    def show(x):
        return "{" + ",".join(fam.base[i] for i in range(n) if x >> i & 1) + "}"

    out = []
    if full not in mem:
        out.append(f"(i) base set {show(full)} missing")
    for x in sorted(mem):
        for y in sorted(mem):
            if x & y not in mem:
                out.append(f"(ii) {show(x)} & {show(y)} = {show(x & y)} missing")
                break
        else:
            continue
        break
    for x in sorted(mem):
        free = full & ~x
        sub = free
        missing = None
        while sub:
            if x | sub not in mem:
                missing = x | sub
            sub = (sub - 1) & free
        if missing is not None:
            out.append(f"(iii) superset {show(missing)} of {show(x)} missing")
            break
    if 0 in mem:
        out.append("(iv) contains the empty set {}")
    for x in range(1 << n):
        if (x in mem) == ((full & ~x) in mem):
            out.append(f"(v) witness {show(x)}: exactly one of it and its complement required")
            break
    return out


def principal(base, w: str) -> Ultrafilter:
    base = tuple(base)
    if w not in base:
        raise UnknownStateError(f"unknown state {w!r}")
    return Ultrafilter(base, base.index(w))


def principal_list(base) -> list[Ultrafilter]:
    base = tuple(base)
    return [Ultrafilter(base, i) for i in range(len(base))]


def _as_ultrafilter(fam: SetFamily) -> Ultrafilter:
    """Recover the witness of a family known to be an ultrafilter."""
    least = fam.full
    for x in fam.members:
        least &= x
    return Ultrafilter(fam.base, least.bit_length() - 1)


def all_ultrafilters(base) -> list[Ultrafilter]:
    """Find every ultrafilter over ``base`` by searching families of subsets.

    Up to three points every one of the 2^(2^n) families is checked against
    the axioms. At four points the search only visits families that pick one
    set from each complementary pair, as clause (v) demands.
    """
    base = tuple(base)
    n = len(base)
    if n > ENUMERATION_CAP:
        raise SizeCapError(f"ultrafilter enumeration is capped at {ENUMERATION_CAP} points")
    subsets = range(1 << n)
    found = []
    if n <= 3:
        for code in range(1 << (1 << n)):
            fam = SetFamily(base, (x for x in subsets if code >> x & 1))
            if not check_ultrafilter(fam):
                found.append(_as_ultrafilter(fam))
    else:
        full = full_mask(n)
        pairs = [x for x in subsets if x < full & ~x]
        for choice in product((0, 1), repeat=len(pairs)):
            members = [x if c else full & ~x for x, c in zip(pairs, choice)]
            fam = SetFamily(base, members)
            if not check_ultrafilter(fam):
                found.append(_as_ultrafilter(fam))
    return sorted(found, key=lambda u: u.witness)


def has_fip(fam: SetFamily) -> bool:
    """Finite intersection property; for a finite family, the total intersection is nonempty."""
    if not fam.members:
        return True
    acc = fam.full
    for x in fam.members:
        acc &= x
    return acc != 0


def extend_to_ultrafilter(fam: SetFamily) -> Ultrafilter:
    """Ultrafilter containing ``fam``: the principal one at the least common point."""
    if not has_fip(fam):
        raise NoFIPError("family lacks the finite intersection property")
    acc = fam.full
    for x in fam.members:
        acc &= x
    return Ultrafilter(fam.base, (acc & -acc).bit_length() - 1)


def hat(x: int, universe) -> int:
    """The ultrafilters of ``universe`` containing ``x``, as a bitmask over universe positions."""
    universe = list(universe)
    if universe:
        _check_width(x, len(universe[0].base))
    out = 0
    for k, u in enumerate(universe):
        if x in u:
            out |= 1 << k
    return out
