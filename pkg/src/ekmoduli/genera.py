"""Multiplicative sequences (A-hat and L genera) from characteristic power series.

Polynomials in the Pontryagin classes are dicts keyed by partitions, a
partition being a weakly decreasing tuple of positive ints: ``(2, 1, 1)``
stands for ``p2 * p1**2``.  Everything is exact.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .arith import DomainError, RatLike, rat

Partition = tuple[int, ...]
Poly = dict[Partition, Fraction]

AHAT = "AHAT"
L = "L"
# 1/cosh(sqrt(z)/2): the normal-bundle factor of the spin fixed-point
# contribution for an involution acting by -1 on the normal bundle.
AHAT_PI = "AHAT_PI"
SERIES_NAMES = (AHAT, L, AHAT_PI)


# -- truncated power series in z, coefficient lists of length order+1 ---------

def _series_mul(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a[: order + 1]):
        if ai:
            for j, bj in enumerate(b[: order + 1 - i]):
                out[i + j] += ai * bj
    return out


def _series_inv(a: list[Fraction], order: int) -> list[Fraction]:
    if a[0] == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv = [Fraction(0)] * (order + 1)
    inv[0] = 1 / a[0]
    for m in range(1, order + 1):
        acc = sum((a[j] * inv[m - j] for j in range(1, min(m, len(a) - 1) + 1)), Fraction(0))
        inv[m] = -acc * inv[0]
    return inv


def _series_log(a: list[Fraction], order: int) -> list[Fraction]:
    # log a = integral of a'/a, requires a[0] == 1
    assert a[0] == 1
    da = [(m + 1) * a[m + 1] for m in range(order)] + [Fraction(0)]
    q = _series_mul(da, _series_inv(a, order), order)
    return [Fraction(0)] + [q[m - 1] / m for m in range(1, order + 1)]


@dataclass(frozen=True)
class CharSeries:
    name: str
    coefficients: tuple[Fraction, ...]  # q_0 = 1, q_1, ..., q_order

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1


@lru_cache(maxsize=None)
def char_series(name: str, order: int) -> CharSeries:
    """Taylor coefficients in z of the characteristic series through z**order.

    AHAT is (sqrt(z)/2)/sinh(sqrt(z)/2), L is sqrt(z)/tanh(sqrt(z)) and
    AHAT_PI is 1/cosh(sqrt(z)/2); all are even functions of sqrt(z).
    """
    if order < 0:
        raise DomainError("order must be >= 0")
    fact = math.factorial
    if name == AHAT:
        # sinh(x)/x with x**2 = z/4
        den = [Fraction(1, 4**m * fact(2 * m + 1)) for m in range(order + 1)]
        coeffs = _series_inv(den, order)
    elif name == L:
        cosh = [Fraction(1, fact(2 * m)) for m in range(order + 1)]
        sinh_over_x = [Fraction(1, fact(2 * m + 1)) for m in range(order + 1)]
        coeffs = _series_mul(cosh, _series_inv(sinh_over_x, order), order)
    elif name == AHAT_PI:
        cosh_half = [Fraction(1, 4**m * fact(2 * m)) for m in range(order + 1)]
        coeffs = _series_inv(cosh_half, order)
    else:
        raise DomainError(f"unknown characteristic series {name!r}")
    return CharSeries(name, tuple(coeffs))


# -- graded polynomial algebra in p1, p2, ... -----------------------------------

def _weight(part: Partition) -> int:
    return sum(part)


def _pmul(a: Poly, b: Poly, max_weight: int | None = None) -> Poly:
    out: Poly = {}
    for pa, ca in a.items():
        for pb, cb in b.items():
            if max_weight is not None and _weight(pa) + _weight(pb) > max_weight:
                continue
            key = tuple(sorted(pa + pb, reverse=True))
            out[key] = out.get(key, Fraction(0)) + ca * cb
    return {k: v for k, v in out.items() if v}


def _padd(a: Poly, b: Poly, scale: Fraction = Fraction(1)) -> Poly:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, Fraction(0)) + scale * v
    return {k: v for k, v in out.items() if v}


def _power_sums(k: int) -> list[Poly]:
    """Power sums s_1..s_k of the formal roots in terms of p_i = e_i (Newton)."""
    s: list[Poly] = [{}]
    for j in range(1, k + 1):
        acc: Poly = {(j,): Fraction((-1) ** (j - 1) * j)}
        for i in range(1, j):
            acc = _padd(acc, _pmul({(i,): Fraction(1)}, s[j - i]), Fraction((-1) ** (i - 1)))
        s.append(acc)
    return s


@dataclass(frozen=True)
class GenusPoly:
    degree: int
    terms: tuple[tuple[Partition, Fraction], ...]  # sorted by partition, no zeros

    @classmethod
    def from_dict(cls, degree: int, terms: Mapping[Partition, Fraction]) -> "GenusPoly":
        items = []
        for part, c in terms.items():
            part = tuple(sorted(part, reverse=True))
            if _weight(part) != degree:
                raise DomainError(f"partition {part} is not a partition of {degree}")
            if c:
                items.append((part, Fraction(c)))
        return cls(degree, tuple(sorted(items)))

    def as_dict(self) -> dict[Partition, Fraction]:
        return dict(self.terms)

    def coeff(self, part: Partition) -> Fraction:
        return self.as_dict().get(tuple(sorted(part, reverse=True)), Fraction(0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c.numerator}/{c.denominator})*{monomial_str(p)}" for p, c in self.terms)


def monomial_str(part: Partition) -> str:
    """``(2, 1, 1)`` -> ``"p1^2*p2"`` (factors by increasing index)."""
    factors = []
    for idx in sorted(set(part)):
        mult = part.count(idx)
        factors.append(f"p{idx}" if mult == 1 else f"p{idx}^{mult}")
    return "*".join(factors) if factors else "1"


_FACTOR = re.compile(r"p(\d+)(?:\^(\d+))?")


def parse_monomial(text: str) -> Partition:
    """Inverse of :func:`monomial_str`; accepts factors in any order."""
    text = text.strip().replace(" ", "")
    pieces = [t for t in re.split(r"\*", text) if t] if text else []
    out: list[int] = []
    for piece in pieces:
        consumed = 0
        for m in _FACTOR.finditer(piece):
            if m.start() != consumed:
                break
            idx = int(m.group(1))
            mult = int(m.group(2) or 1)
            if idx < 1 or mult < 1:
                raise DomainError(f"bad monomial {text!r}")
            out.extend([idx] * mult)
            consumed = m.end()
        if consumed != len(piece):
            raise DomainError(f"bad monomial {text!r}")
    if not out:
        raise DomainError(f"bad monomial {text!r}")
    return tuple(sorted(out, reverse=True))


@lru_cache(maxsize=None)
def _sequence_cached(name: str, k: int) -> GenusPoly:
    q = list(char_series(name, k).coefficients)
    c = _series_log(q, k)
    s = _power_sums(k)
    # G = sum_j c_j s_j split by weight; exp via m F_m = sum_j j G_j F_{m-j}
    g = [dict() for _ in range(k + 1)]
    for j in range(1, k + 1):
        g[j] = {part: c[j] * v for part, v in s[j].items() if c[j] * v}
    f: list[Poly] = [{(): Fraction(1)}]
    for m in range(1, k + 1):
        acc: Poly = {}
        for j in range(1, m + 1):
            acc = _padd(acc, _pmul(g[j], f[m - j]), Fraction(j))
        f.append({part: v / m for part, v in acc.items()})
    return GenusPoly.from_dict(k, f[k])


def multiplicative_sequence(series: CharSeries | str, k: int) -> GenusPoly:
    """Degree-k polynomial K_k of the multiplicative sequence of ``series``."""
    if k < 1:
        raise DomainError("degree must be >= 1")
    name = series.name if isinstance(series, CharSeries) else series
    if isinstance(series, CharSeries) and series.order < k:
        raise DomainError(f"series order {series.order} < requested degree {k}")
    if name not in SERIES_NAMES:
        raise DomainError(f"unknown characteristic series {name!r}")
    return _sequence_cached(name, k)


def ahat(k: int) -> GenusPoly:
    return multiplicative_sequence(AHAT, k)


def lgenus(k: int) -> GenusPoly:
    return multiplicative_sequence(L, k)


def t_coeff(k: int) -> Fraction:
    """Ratio of the top-class (p_k) coefficients of A-hat_k and L_k."""
    return ahat(k).coeff((k,)) / lgenus(k).coeff((k,))


def a_coeff(k: int) -> int:
    if k < 1:
        raise DomainError("k must be >= 1")
    return 4 // (3 + (-1) ** k)


def evaluate_genus(poly: GenusPoly, numbers: Mapping[Partition, RatLike]) -> Fraction:
    """Pair the polynomial with characteristic numbers; missing keys count as 0."""
    canon = {tuple(sorted(p, reverse=True)): rat(v) for p, v in numbers.items()}
    return sum((c * canon.get(p, Fraction(0)) for p, c in poly.terms), Fraction(0))


def evaluate_on_classes(poly: GenusPoly, classes: Mapping[int, RatLike]) -> Fraction:
    """Evaluate with p_i replaced by numbers (products taken literally)."""
    vals = {i: rat(v) for i, v in classes.items()}
    total = Fraction(0)
    for part, c in poly.terms:
        term = c
        for idx in part:
            term *= vals.get(idx, Fraction(0))
        total += term
    return total


# -- fixed-point contributions of the fibrewise antipodal involution -----------

@dataclass(frozen=True)
class PontryaginData:
    """Characteristic data of the rank-4n bundle over S^{4n}, as multiples of the generator."""

    n: int
    p_fiber: int
    euler: int
    p1_of_xi_over_S8: int = 0

    @classmethod
    def from_bundle(cls, n: int, k: int, l: int) -> "PontryaginData":
        return cls(n=n, p_fiber=(4 * n - 2) * (2 * k + l), euler=l)


def local_spin_contribution(data: PontryaginData) -> tuple[Fraction, Fraction]:
    """The two signed values of the spin fixed-point contribution on S^{4n}.

    Integrates (2i)^{-2n} * prod 1/cosh(y_j/2) over the zero section.  Only
    degree-4n classes survive, so the answer is K_n of the 1/cosh series at
    the bundle's Pontryagin numbers.
    """
    if data.n not in (1, 2):
        raise DomainError(f"n must be 1 or 2, got {data.n}")
    if data.n == 2 and data.p1_of_xi_over_S8 != 0:
        raise DomainError("p1 of a bundle over S^8 vanishes")
    classes = {data.n: data.p_fiber}
    if data.n == 2:
        classes[1] = data.p1_of_xi_over_S8
    value = evaluate_on_classes(multiplicative_sequence(AHAT_PI, data.n), classes)
    value *= Fraction(1, (-4) ** data.n)
    return value, -value


def local_sign_contribution(data: PontryaginData) -> Fraction:
    """e(xi) * L(xi)^{-1} integrated over S^{4n}: only the Euler number survives."""
    return Fraction(data.euler)
