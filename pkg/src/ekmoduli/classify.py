"""Diffeomorphism decisions, with type enumeration and separation certificates built on them."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from . import _kernels
from .arith import DomainError, ResMod1, format_rat, unit_sqrts_mod
from .bundles import BundleId, char_number_pbar_sq, ek_sphere, family, period_sphere, reverse_orientation, verify_period_window
from .genera import ahat, lgenus
from .quotients import count_distinct


class Reason(str, enum.Enum):
    OK = "OK"
    MU_DIFFERS = "MU_DIFFERS"
    NO_GAMMA = "NO_GAMMA"
    DIFFERENT_L = "DIFFERENT_L"


@dataclass(frozen=True)
class DiffeoVerdict:
    diffeomorphic: bool
    mu_left: ResMod1
    mu_right: ResMod1
    gamma_witness: Optional[int]
    reason: Reason

    def to_dict(self) -> dict:
        return {
            "diffeomorphic": self.diffeomorphic,
            "mu_left": str(self.mu_left),
            "mu_right": str(self.mu_right),
            "gamma_witness": self.gamma_witness,
            "reason": self.reason.value,
        }


@dataclass(frozen=True)
class AnyOrientationVerdict:
    """Both branches are kept: orientation preserving, and against the reversed second space."""

    preserving: DiffeoVerdict
    reversing: DiffeoVerdict

    @property
    def diffeomorphic(self) -> bool:
        return self.preserving.diffeomorphic or self.reversing.diffeomorphic

    def to_dict(self) -> dict:
        return {
            "diffeomorphic": self.diffeomorphic,
            "preserving": self.preserving.to_dict(),
            "reversing": self.reversing.to_dict(),
        }


def _gamma_witness(k1: int, k2: int, l: int) -> Optional[int]:
    for gamma in unit_sqrts_mod(l):
        if (2 * k1 - 2 * gamma * k2) % l == 0:
            return gamma
    return None


def _verdict(b1: BundleId, b2: BundleId) -> DiffeoVerdict:
    if b1.n != b2.n:
        raise DomainError("cannot compare total spaces of different dimension")
    mu1, mu2 = ek_sphere(b1).value, ek_sphere(b2).value
    if b1.l != b2.l:
        return DiffeoVerdict(False, mu1, mu2, None, Reason.DIFFERENT_L)
    if mu1 != mu2:
        return DiffeoVerdict(False, mu1, mu2, None, Reason.MU_DIFFERS)
    gamma = _gamma_witness(b1.k, b2.k, b1.l)
    if gamma is None:
        return DiffeoVerdict(False, mu1, mu2, None, Reason.NO_GAMMA)
    return DiffeoVerdict(True, mu1, mu2, gamma, Reason.OK)


def is_diffeomorphic(b1: BundleId, b2: BundleId) -> DiffeoVerdict:
    """Orientation-preserving diffeomorphism test for M_{k,l} and M_{k',l'}.

    True iff l = l', the invariants agree and 2k = 2 gamma k' (mod l) for a
    square root of unity gamma mod l; the smallest such gamma is returned.
    """
    if b1.reversed or b2.reversed:
        raise DomainError("is_diffeomorphic expects ids with their standard orientation")
    return _verdict(b1, b2)


def is_diffeomorphic_any_orientation(b1: BundleId, b2: BundleId) -> AnyOrientationVerdict:
    if b1.reversed or b2.reversed:
        raise DomainError("expects ids with their standard orientation")
    return AnyOrientationVerdict(_verdict(b1, b2), _verdict(b1, reverse_orientation(b2)))


def _class_keys(ks: np.ndarray, n: int, l: int):
    mu = _kernels.sphere_codes(ks, n, l)
    gammas = list(unit_sqrts_mod(l))
    if mu.dtype == object:
        orbit = np.array([min((2 * g * int(k)) % l for g in gammas) for k in ks], dtype=object)
    else:
        orbit = np.min(np.stack([(2 * g * ks) % l for g in gammas]), axis=0)
    return mu, orbit


def enumerate_types(n: int, l: int) -> dict:
    """Orientation-preserving diffeomorphism classes among M_{k,l}, k over one period.

    k and k + period are always equivalent (the invariant is periodic and
    2*period = 0 mod l), so a single period meets every class.  The
    periodicity is re-checked on the scanned window first.
    """
    if l < 1:
        raise DomainError("l must be >= 1")
    period = period_sphere(n, l)
    ks = np.arange(period, dtype=np.int64)
    if not verify_period_window(n, l, ks):
        raise RuntimeError(f"invariant is not {period}-periodic for n={n}, l={l}")
    mu, orbit = _class_keys(ks, n, l)
    if mu.dtype == object:
        reps: dict = {}
        for k, a, b in zip(ks.tolist(), mu.tolist(), orbit.tolist()):
            reps.setdefault((a, b), k)
        representatives = sorted(reps.values())
    else:
        keys = mu.astype(np.int64) * l + orbit
        _, first = np.unique(keys, return_index=True)
        representatives = sorted(int(ks[i]) for i in first)
    return {"n": n, "l": l, "count": len(representatives), "representatives": representatives}


def enumerate_quotient_types(n: int) -> dict:
    """Distinct invariant pairs of Q^{8n-1}_k.

    For n = 1 this is the exact number of classes; for n = 2 the normal
    invariants are not known, so it is only a lower bound.
    """
    count = count_distinct(n, replica=False)["quotient_pairs"]
    return {"n": n, "count": count, "kind": "exact" if n == 1 else "lower_bound"}


# -- separation certificates ------------------------------------------------------


def vanishing_system(n: int) -> dict:
    """The 2x2 system <A-hat, [X]> = 0, <L, [X]> = 0 on a closed spin X^{8n}.

    n = 1: unknowns <p1^2>, <p2>.  n = 2: p1 = 0 because H^4(X) = 0, which
    leaves <p4>, <p2^2>.  Coefficients come from the computed genera.
    """
    if n == 1:
        unknowns = [(1, 1), (2,)]
        polys = [ahat(2), lgenus(2)]
    elif n == 2:
        unknowns = [(4,), (2, 2)]
        polys = [ahat(4), lgenus(4)]
    else:
        raise DomainError(f"n must be 1 or 2, got {n!r}")
    matrix = [[p.coeff(u) for u in unknowns] for p in polys]
    rhs = [Fraction(0), Fraction(0)]
    det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    if det == 0:
        solution = None
    else:
        # Cramer's rule
        solution = [
            (rhs[0] * matrix[1][1] - matrix[0][1] * rhs[1]) / det,
            (matrix[0][0] * rhs[1] - rhs[0] * matrix[1][0]) / det,
        ]
    return {"unknowns": unknowns, "matrix": matrix, "rhs": rhs, "determinant": det, "solution": solution}


@dataclass(frozen=True)
class SeparationCertificate:
    n: int
    l: int
    k0: int
    k1: int
    delta: Fraction
    separated: bool
    system_solution: dict = field(repr=False)

    def to_dict(self) -> dict:
        from .genera import monomial_str

        sysd = self.system_solution
        return {
            "n": self.n,
            "l": self.l,
            "k0": self.k0,
            "k1": self.k1,
            "delta": format_rat(self.delta),
            "separated": self.separated,
            "system_solution": {
                "unknowns": [monomial_str(u) for u in sysd["unknowns"]],
                "matrix": [[format_rat(c) for c in row] for row in sysd["matrix"]],
                "rhs": [format_rat(c) for c in sysd["rhs"]],
                "determinant": format_rat(sysd["determinant"]),
                "solution": None if sysd["solution"] is None else [format_rat(c) for c in sysd["solution"]],
                "forced_zero": f"p{self.n}^2",
            },
            "interpretation": (
                "separated: delta is the value of <p_n^2> on the glued closed manifold, which the "
                "index and signature constraints force to vanish; the two metric classes lie in "
                "different path components of the moduli space"
                if self.separated
                else "not separated: delta vanishes, no obstruction"
            ),
        }


def separation_certificate(n: int, l: int, k0: int, k1: int) -> SeparationCertificate:
    b0, b1 = BundleId(n, k0, l), BundleId(n, k1, l)
    delta = char_number_pbar_sq(b0) - char_number_pbar_sq(b1)
    system = vanishing_system(n)
    if system["solution"] is None or any(system["solution"]):
        raise RuntimeError("vanishing system does not force a zero solution")
    return SeparationCertificate(n, l, k0, k1, delta, delta != 0, system)


def path_component_certificates(b: BundleId, count: int) -> list[SeparationCertificate]:
    if count < 1:
        raise DomainError("count must be >= 1")
    members = [b] + (family(b, count - 1) if count > 1 else [])
    return [separation_certificate(b.n, b.l, x.k, y.k) for x, y in combinations(members, 2)]


def path_component_lower_bound(b: BundleId, count: int) -> int:
    """Number of pairwise separated, mutually diffeomorphic members of b's family.

    Raises if any pair fails to separate.
    """
    for cert in path_component_certificates(b, count):
        if not cert.separated:
            raise RuntimeError(f"members k={cert.k0} and k={cert.k1} are not separated")
    return count
