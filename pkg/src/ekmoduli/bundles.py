"""Total spaces M^{8n-1}_{k,l} of S^{4n-1}-bundles over S^{4n} and their invariants."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from . import _kernels
from .arith import DomainError, ResMod1, res_neg, res_sum

Q_N = _kernels.Q_N


def _check_n(n: int) -> None:
    if n not in (1, 2):
        raise DomainError(f"n must be 1 or 2, got {n!r}")


@dataclass(frozen=True, order=True)
class BundleId:
    """The bundle k[rho] + l[sigma] over S^{4n}; ``reversed`` marks the opposite orientation."""

    n: int
    k: int
    l: int
    reversed: bool = False

    def __post_init__(self):
        _check_n(self.n)
        if isinstance(self.k, bool) or not isinstance(self.k, int):
            raise DomainError("k must be an int")
        if isinstance(self.l, bool) or not isinstance(self.l, int):
            raise DomainError("l must be an int")
        if self.l == 0:
            raise DomainError("l = 0 is excluded: the total space is not a rational homology sphere")
        if self.l < 0:
            raise DomainError("l must be positive; use normalize() for l < 0")

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "l": self.l, "reversed": self.reversed}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "BundleId":
        return cls(int(data["n"]), int(data["k"]), int(data["l"]), bool(data.get("reversed", False)))


@dataclass(frozen=True)
class EkValue:
    value: ResMod1
    n: int
    k: int
    l: int

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "l": self.l, "mu": str(self.value)}


def normalize(n: int, k: int, l: int) -> BundleId:
    """Use M_{k,-l} = M_{k-l,l} to make l positive."""
    _check_n(n)
    if l == 0:
        raise DomainError("l = 0 is excluded: the total space is not a rational homology sphere")
    if l > 0:
        return BundleId(n, k, l)
    return BundleId(n, k + l, -l)


def reverse_orientation(b: BundleId) -> BundleId:
    """Fibre reflection: M_{k,l} = -M_{-k-l,l}.  Applying it twice is the identity."""
    return BundleId(b.n, -b.k - b.l, b.l, not b.reversed)


def characteristic_numbers(b: BundleId) -> dict[str, int]:
    c = 4 * b.n - 2
    return {"euler": b.l, "p_fiber": c * (2 * b.k + b.l), "p_boundary": c * 2 * b.k}


def char_number_pbar_sq(b: BundleId) -> Fraction:
    """<pbar_n^2(W), [W, M]> = (4n-2)^2 (2k+l)^2 / l."""
    return Fraction((4 * b.n - 2) ** 2 * (2 * b.k + b.l) ** 2, b.l)


def _ek_formula(n: int, k: int, l: int) -> ResMod1:
    return ResMod1(Fraction((2 * k + l) ** 2 - l, 8 * l * 2 ** (4 * n - 2) * Q_N[n]))


def ek_sphere(b: BundleId) -> EkValue:
    """Eells-Kuiper invariant of the total space.

    A reversed-orientation id gets the negated value; the raw formula only
    ever sees the orientation coming from sign(W) = 1.
    """
    mu = _ek_formula(b.n, b.k, b.l)
    if b.reversed:
        mu = res_neg(mu)
    return EkValue(mu, b.n, b.k, b.l)


def ek_connected_sum(values: Iterable[Union[EkValue, ResMod1]]) -> ResMod1:
    return res_sum(v.value if isinstance(v, EkValue) else v for v in values)


def period_sphere(n: int, l: int) -> int:
    """Step s = 2^{4n-1} l q_n with mu(k) = mu(k + s).

    Shifting k by s changes the numerator (2k+l)^2 - l by 4s(2k+l) + 4s^2,
    and over the denominator 2^{4n+1} l q_n that is (2k+l) + 2^{4n-2} l q_n,
    an integer.
    """
    _check_n(n)
    if l < 1:
        raise DomainError("l must be >= 1")
    return 2 ** (4 * n - 1) * l * Q_N[n]


def period_increment(n: int, k: int, l: int, m: int = 1) -> Fraction:
    """Exact change of mu (as a rational, before reduction) under k -> k + m*period."""
    s = m * period_sphere(n, l)
    return Fraction(4 * s * (2 * k + l) + 4 * s * s, 8 * l * 2 ** (4 * n - 2) * Q_N[n])


def verify_period_window(n: int, l: int, ks: np.ndarray | None = None) -> bool:
    """Exhaustively check mu(k) == mu(k + period) on a window (default: one period)."""
    s = period_sphere(n, l)
    if ks is None:
        ks = np.arange(s, dtype=np.int64)
    return bool(np.array_equal(_kernels.sphere_codes(ks, n, l), _kernels.sphere_codes(ks + s, n, l)))


def family(b: BundleId, count: int) -> list[BundleId]:
    """``count`` further bundles k + m*period, m = 1..count, all diffeomorphic to ``b``."""
    if count < 1:
        raise DomainError("count must be >= 1")
    s = period_sphere(b.n, b.l)
    return [BundleId(b.n, b.k + m * s, b.l) for m in range(1, count + 1)]
