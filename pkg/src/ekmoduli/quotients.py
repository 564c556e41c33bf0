"""Milnor and Shimada projective spaces Q^{8n-1}_k = M^{8n-1}_k / tau."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .arith import DomainError, ResMod1
from .bundles import BundleId, Q_N, _check_n, ek_sphere


@dataclass(frozen=True)
class QuotientId:
    n: int
    k: int

    def __post_init__(self):
        _check_n(self.n)
        if isinstance(self.k, bool) or not isinstance(self.k, int):
            raise DomainError("k must be an int")

    def sphere(self) -> BundleId:
        return BundleId(self.n, self.k, 1)


@dataclass(frozen=True, eq=False)
class EkPair:
    """Unordered pair of residues, one per spin structure.

    Which value belongs to which spin structure is never decided, so
    equality and hashing ignore slot order.  ``plus``/``minus`` are kept
    in ascending order of their representatives.
    """

    plus: ResMod1
    minus: ResMod1

    def __post_init__(self):
        if self.minus < self.plus:
            a, b = self.minus, self.plus
            object.__setattr__(self, "plus", a)
            object.__setattr__(self, "minus", b)

    def values(self) -> tuple[ResMod1, ResMod1]:
        return (self.plus, self.minus)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EkPair):
            return NotImplemented
        return self.values() == other.values()

    def __hash__(self) -> int:
        return hash(("EkPair",) + self.values())

    def to_dict(self) -> dict:
        return {"pair": [str(self.plus), str(self.minus)]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __str__(self) -> str:
        return f"{{{self.plus}, {self.minus}}}"


def _as_quotient(q) -> QuotientId:
    if isinstance(q, QuotientId):
        return q
    n, k = q
    return QuotientId(n, k)


def ek_quotient(q: QuotientId) -> EkPair:
    """k(k+1)/(2^{4n} q_n) +- (2k+1)/2^{4n+1} mod 1."""
    q = _as_quotient(q)
    base = Fraction(q.k * (q.k + 1), 2 ** (4 * q.n) * Q_N[q.n])
    shift = Fraction(2 * q.k + 1, 2 ** (4 * q.n + 1))
    return EkPair(ResMod1(base + shift), ResMod1(base - shift))


def ek_quotient_from_sphere(q: QuotientId) -> EkPair:
    """Half the sphere's invariant plus the spin fixed-point term.

    Uses the unreduced rational k(k+1)/(2^{4n-1} q_n); halving a residue
    that was already reduced mod 1 would be ambiguous up to 1/2.
    """
    q = _as_quotient(q)
    r = Fraction((2 * q.k + 1) ** 2 - 1, 8 * 2 ** (4 * q.n - 2) * Q_N[q.n])
    assert ResMod1(r) == ek_sphere(q.sphere()).value
    shift = Fraction(2 * q.k + 1, 2 ** (4 * q.n + 1))
    return EkPair(ResMod1(r / 2 + shift), ResMod1(r / 2 - shift))


def normal_invariant_beta(k: int) -> int:
    """28 mu(M^7_k) taken in {0, ..., 27}, reduced mod 4."""
    twenty_eight_mu = 28 * ek_sphere(BundleId(1, k, 1)).value.rep
    assert twenty_eight_mu.denominator == 1
    return int(twenty_eight_mu) % 4


def beta_witnesses(limit: int = 56) -> dict[int, int]:
    """Smallest k in [0, limit) hitting each residue of normal_invariant_beta."""
    found: dict[int, int] = {}
    for k in range(limit):
        found.setdefault(normal_invariant_beta(k), k)
    return dict(sorted(found.items()))


def browder_livesay(q: QuotientId) -> int:
    """The involution desuspends for every k and n, so the invariant is 0. Not computed."""
    _as_quotient(q)
    return 0


def period_quotient(n: int) -> int:
    """2^{4n-1} q_n: 56 for n = 1, 16256 for n = 2."""
    _check_n(n)
    return _kernels.sphere_modulus(n)


def verify_quotient_period(n: int, period: int | None = None) -> bool:
    """Pair equality ek_quotient(k) == ek_quotient(k + period) for k over one period."""
    period = period_quotient(n) if period is None else period
    ks = np.arange(period_quotient(n), dtype=np.int64)
    return bool(np.array_equal(_kernels.quotient_codes(ks, n), _kernels.quotient_codes(ks + period, n)))


def sphere_buckets(n: int) -> dict[ResMod1, list[int]]:
    """k in one period grouped by the sphere invariant, sorted by residue."""
    out: dict[ResMod1, list[int]] = {}
    for k in range(period_quotient(n)):
        out.setdefault(ek_sphere(BundleId(n, k, 1)).value, []).append(k)
    return dict(sorted(out.items()))


def count_distinct(n: int, replica: bool = True) -> dict:
    """Distinct sphere invariants and distinct quotient pairs over one period.

    With ``replica`` the quadratic last-occurrence loop (bound period - 1,
    16255 for n = 2) is also run and its two counters reported.
    """
    _check_n(n)
    ks = np.arange(period_quotient(n), dtype=np.int64)
    report = {
        "n": n,
        "sphere_values": int(np.unique(_kernels.sphere_codes(ks, n, 1)).size),
        "quotient_pairs": int(np.unique(_kernels.quotient_codes(ks, n)).size),
    }
    if replica:
        loop_bound = period_quotient(n) - 1
        countermu, countermuquo = _kernels.replica_counts(n, loop_bound)
        report.update(
            {"replica_loop_bound": loop_bound, "replica_countermu": countermu, "replica_countermuquo": countermuquo}
        )
    return report


def verify_mu_implication(n: int) -> tuple[bool, list[tuple[int, int]]]:
    """Equal sphere invariants imply equal quotient pairs, for all k0 < k1 in one period.

    Returns (holds, counterexamples) where each counterexample is
    (first k of the sphere bucket, k whose pair differs).
    """
    _check_n(n)
    ks = np.arange(period_quotient(n), dtype=np.int64)
    bucket = _kernels.sphere_codes(ks, n, 1)
    codes = _kernels.quotient_codes(ks, n)
    bad = _kernels.bucket_violations(bucket, codes)
    if bad.size == 0:
        return True, []
    _, first, inverse = np.unique(bucket, return_index=True, return_inverse=True)
    return False, [(int(ks[first[inverse[i]]]), int(ks[i])) for i in bad]
