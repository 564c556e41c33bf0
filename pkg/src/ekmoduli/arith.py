"""Exact rationals and residues in Q/Z, plus unit square roots modulo l.

Rationals are plain :class:`fractions.Fraction` objects: they are always
stored in lowest terms with a positive denominator, which is exactly the
invariant every other module relies on.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Iterable, Union

Rat = Fraction
RatLike = Union[int, Fraction, str]


class DomainError(ValueError):
    """Raised when an input lies outside the domain an operation accepts."""


def rat(value: RatLike) -> Fraction:
    """Coerce ``value`` to a Fraction (accepts ints and "num/den" strings)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_rat(r: Fraction) -> str:
    """Serialize as "num/den", also for integers ("0/1", "3/1")."""
    return f"{r.numerator}/{r.denominator}"


@total_ordering
class ResMod1:
    """A class in Q/Z, stored by its representative in [0, 1)."""

    __slots__ = ("_rep",)

    def __init__(self, value: RatLike = 0):
        r = rat(value)
        self._rep = r - (r.numerator // r.denominator)

    @property
    def rep(self) -> Fraction:
        return self._rep

    def __add__(self, other: "ResMod1") -> "ResMod1":
        if not isinstance(other, ResMod1):
            return NotImplemented
        return ResMod1(self._rep + other._rep)

    def __neg__(self) -> "ResMod1":
        return ResMod1(-self._rep)

    def __sub__(self, other: "ResMod1") -> "ResMod1":
        if not isinstance(other, ResMod1):
            return NotImplemented
        return ResMod1(self._rep - other._rep)

    def __mul__(self, m: int) -> "ResMod1":
        if isinstance(m, bool) or not isinstance(m, int):
            return NotImplemented
        return ResMod1(self._rep * m)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ResMod1):
            return self._rep == other._rep
        return NotImplemented

    def __lt__(self, other: "ResMod1") -> bool:
        if not isinstance(other, ResMod1):
            return NotImplemented
        return self._rep < other._rep

    def __hash__(self) -> int:
        return hash(("ResMod1", self._rep))

    def __repr__(self) -> str:
        return f"ResMod1({format_rat(self._rep)})"

    def __str__(self) -> str:
        return format_rat(self._rep)


def residue_mod1(r: RatLike) -> ResMod1:
    return ResMod1(r)


def res_add(a: ResMod1, b: ResMod1) -> ResMod1:
    return a + b


def res_neg(a: ResMod1) -> ResMod1:
    return -a


def res_sum(values: Iterable[ResMod1]) -> ResMod1:
    total = ResMod1(0)
    for v in values:
        total = total + v
    return total


class UnitSqrtSet:
    """The residues gamma in [0, l) with gamma**2 == 1 (mod l)."""

    __slots__ = ("modulus", "roots")

    def __init__(self, modulus: int, roots: tuple[int, ...]):
        self.modulus = modulus
        self.roots = roots

    def __contains__(self, gamma: int) -> bool:
        return gamma % self.modulus in self.roots

    def __iter__(self):
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    def __repr__(self) -> str:
        return f"UnitSqrtSet(l={self.modulus}, roots={list(self.roots)})"


@lru_cache(maxsize=4096)
def unit_sqrts_mod(l: int) -> UnitSqrtSet:
    """Brute force over all residues; O(l), fine for l up to ~10**7.

    For l = 1 the only residue is 0, which counts as a root since every
    congruence mod 1 holds.
    """
    if isinstance(l, bool) or not isinstance(l, int):
        raise TypeError("modulus must be an int")
    if l < 1:
        raise DomainError(f"modulus must be >= 1, got {l}")
    if l == 1:
        return UnitSqrtSet(1, (0,))
    roots = tuple(g for g in range(l) if (g * g) % l == 1 % l)
    return UnitSqrtSet(l, roots)
