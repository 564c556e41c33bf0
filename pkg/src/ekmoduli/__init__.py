"""Eells-Kuiper invariants and diffeomorphism types of sphere bundles over spheres and their quotients."""

__version__ = "0.1.0"

from .arith import DomainError, ResMod1, residue_mod1, unit_sqrts_mod  # noqa: E402
from .bundles import BundleId, ek_sphere, family, normalize, period_sphere  # noqa: E402
from .classify import enumerate_types, is_diffeomorphic, separation_certificate  # noqa: E402
from .genera import ahat, lgenus, multiplicative_sequence, t_coeff  # noqa: E402
from .quotients import EkPair, QuotientId, count_distinct, ek_quotient  # noqa: E402

__all__ = [
    "BundleId",
    "DomainError",
    "EkPair",
    "QuotientId",
    "ResMod1",
    "ahat",
    "count_distinct",
    "ek_quotient",
    "ek_sphere",
    "enumerate_types",
    "family",
    "is_diffeomorphic",
    "lgenus",
    "multiplicative_sequence",
    "normalize",
    "period_sphere",
    "residue_mod1",
    "separation_certificate",
    "t_coeff",
    "unit_sqrts_mod",
]
