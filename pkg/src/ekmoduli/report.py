"""Reproducibility report: one record per acceptance claim, fixed order."""

from __future__ import annotations

import json
import random
import time
from fractions import Fraction
from typing import Callable

import numpy as np

from . import __version__
from .arith import format_rat, unit_sqrts_mod
from .bundles import BundleId, ek_sphere, family, period_sphere
from .classify import (
    enumerate_types,
    is_diffeomorphic,
    path_component_certificates,
    path_component_lower_bound,
    separation_certificate,
    vanishing_system,
)
from .genera import GenusPoly, ahat, lgenus, t_coeff
from .quotients import count_distinct, ek_quotient, ek_quotient_from_sphere, period_quotient, verify_mu_implication

# Printed forms: (common denominator, {partition: numerator}).
PRINTED_GENERA = {
    ("AHAT", 1): (24, {(1,): -1}),
    ("AHAT", 2): (5760, {(2,): -4, (1, 1): 7}),
    ("AHAT", 4): (464486400, {(4,): -192, (3, 1): 512, (2, 2): 208, (2, 1, 1): -904, (1, 1, 1, 1): 381}),
    ("L", 1): (3, {(1,): 1}),
    ("L", 2): (45, {(2,): 7, (1, 1): -1}),
    ("L", 4): (14175, {(4,): 381, (3, 1): -71, (2, 2): -19, (2, 1, 1): 22, (1, 1, 1, 1): -3}),
}
# The closed-manifold index display carries -904 instead of +381 on p1^4.
ALT_AHAT4_P1_4 = Fraction(-904, 464486400)

SEED = 20240607


def printed_genus(name: str, k: int) -> GenusPoly:
    den, nums = PRINTED_GENERA[(name, k)]
    return GenusPoly.from_dict(k, {p: Fraction(c, den) for p, c in nums.items()})


def _c01():
    expected, computed = {}, {}
    for (name, k) in PRINTED_GENERA:
        key = f"{name.lower()}{k}"
        expected[key] = str(printed_genus(name, k))
        computed[key] = str(ahat(k) if name == "AHAT" else lgenus(k))
    p1_4 = ahat(4).coeff((1, 1, 1, 1))
    expected["ahat4_p1^4_sides_with"] = "+381"
    computed["ahat4_p1^4_sides_with"] = (
        "+381" if p1_4 == Fraction(381, 464486400) else "-904" if p1_4 == ALT_AHAT4_P1_4 else format_rat(p1_4)
    )
    return "A-hat_1,2,4 and L_1,2,4 from the characteristic series; p1^4 in A-hat_4: +381 vs -904", expected, computed


def _c02():
    return (
        "t_k = A-hat_k(0,...,0,1)/L_k(0,...,0,1)",
        {"t2": "-1/224", "t4": "-1/65024"},
        {"t2": format_rat(t_coeff(2)), "t4": format_rat(t_coeff(4))},
    )


def _c03():
    c1, c2 = count_distinct(1, replica=False), count_distinct(2, replica=False)
    return (
        "16 / 4096 sphere types; 16 / 4096 quotient pairs",
        {"enumerate_types(1,1)": 16, "enumerate_types(2,1)": 4096, "quotient_pairs(1)": 16, "quotient_pairs(2)": 4096},
        {
            "enumerate_types(1,1)": enumerate_types(1, 1)["count"],
            "enumerate_types(2,1)": enumerate_types(2, 1)["count"],
            "quotient_pairs(1)": c1["quotient_pairs"],
            "quotient_pairs(2)": c2["quotient_pairs"],
        },
    )


def _c04():
    c = count_distinct(2, replica=True)
    return (
        "counting loop, bound 16255: countermu, countermuquo",
        {"loop_bound": 16255, "countermu": 4096, "countermuquo": 4096, "matches_full_period": True},
        {
            "loop_bound": c["replica_loop_bound"],
            "countermu": c["replica_countermu"],
            "countermuquo": c["replica_countermuquo"],
            "matches_full_period": c["replica_countermu"] == c["sphere_values"]
            and c["replica_countermuquo"] == c["quotient_pairs"],
        },
    )


def _c05():
    out = {}
    for n in (1, 2):
        ok, bad = verify_mu_implication(n)
        out[f"n{n}"] = {"holds": ok, "counterexamples": len(bad), "range": period_quotient(n)}
    return (
        "mu(M_k0) = mu(M_k1) implies mu(Q_k0) = mu(Q_k1)",
        {"n1": {"holds": True, "counterexamples": 0, "range": 56}, "n2": {"holds": True, "counterexamples": 0, "range": 16256}},
        out,
    )


def _c06():
    computed = {}
    for n in (1, 2):
        period = period_quotient(n)
        computed[f"n{n}"] = sum(ek_quotient((n, k)) == ek_quotient_from_sphere((n, k)) for k in range(period))
    return (
        "k(k+1)/(2^{4n} q_n) +- (2k+1)/2^{4n+1} vs half the sphere invariant plus the fixed-point term",
        {"n1": 56, "n2": 16256},
        computed,
    )


def _random_family_cases(rng: random.Random, count: int):
    cases = []
    while len(cases) < count:
        n = rng.choice((1, 2))
        l = rng.randint(1, 12)
        k = rng.randint(-200, 200)
        m = rng.randint(1, 4)
        cases.append((n, k, l, m))
    return cases


def _c07():
    mu = lambda k: ek_sphere(BundleId(1, k, 1)).value  # noqa: E731
    cases = _random_family_cases(random.Random(SEED), 50)
    passed = 0
    for n, k, l, m in cases:
        b = BundleId(n, k, l)
        if all(is_diffeomorphic(b, member).diffeomorphic for member in family(b, m)):
            passed += 1
    return (
        "step 2^{4n-2} l q_n does not preserve mu; 2^{4n-1} l q_n does",
        {"mu(1,0,1)": "0/1", "mu(1,28,1)": "1/2", "mu(1,56,1)": "0/1", "step28_differs": True, "family_cases_passing": 50},
        {
            "mu(1,0,1)": str(mu(0)),
            "mu(1,28,1)": str(mu(28)),
            "mu(1,56,1)": str(mu(56)),
            "step28_differs": mu(0) != mu(28),
            "family_cases_passing": passed,
        },
    )


def _c08():
    v = is_diffeomorphic(BundleId(1, 0, 1), BundleId(1, 7, 1))
    cert = separation_certificate(1, 1, 0, 7)
    systems = {}
    for n in (1, 2):
        s = vanishing_system(n)
        systems[f"system_n{n}_unique_zero"] = s["determinant"] != 0 and s["solution"] == [0, 0]
    certs = path_component_certificates(BundleId(1, 0, 1), 5)
    return (
        "|2k_0+l| != |2k_1+l| against forced vanishing of <p_n^2>",
        {
            "diffeomorphic(0,7)": True,
            "separated(0,7)": True,
            "delta(0,7)": "-896/1",
            "system_n1_unique_zero": True,
            "system_n2_unique_zero": True,
            "path_component_lower_bound": 5,
            "pairwise_separated": 10,
        },
        {
            "diffeomorphic(0,7)": v.diffeomorphic,
            "separated(0,7)": cert.separated,
            "delta(0,7)": format_rat(cert.delta),
            **systems,
            "path_component_lower_bound": path_component_lower_bound(BundleId(1, 0, 1), 5),
            "pairwise_separated": sum(c.separated for c in certs),
        },
    )


def _oracle_diffeomorphic(n: int, k1: int, k2: int, l: int) -> bool:
    # independent route: raw formula reduced with % 1, gamma by exhaustive search
    q = {1: 7, 2: 127}[n]
    mu = lambda k: Fraction((2 * k + l) ** 2 - l, 8 * l * 2 ** (4 * n - 2) * q) % 1  # noqa: E731
    if mu(k1) != mu(k2):
        return False
    return any((g * g - 1) % l == 0 and (2 * k1 - 2 * g * k2) % l == 0 for g in range(l))


def _c09():
    rng = random.Random(SEED + 9)
    trials, samples = 20, 30
    related = violations = 0
    for _ in range(trials):
        n, l = 1, rng.randint(1, 6)
        span = 2 * period_sphere(n, l)
        ids = [BundleId(n, rng.randint(-span, span), l) for _ in range(samples)]
        rel = np.array([[is_diffeomorphic(a, b).diffeomorphic for b in ids] for a in ids])
        related += int(rel.sum()) - samples
        violations += int((~np.diag(rel)).sum())  # reflexive
        violations += int((rel != rel.T).sum())  # symmetric
        violations += int(((rel.astype(int) @ rel.astype(int) > 0) & ~rel).sum())  # transitive
    disagreements = 0
    for l in range(1, 51):
        if list(unit_sqrts_mod(l)) != [g for g in range(l) if (g * g - 1) % l == 0]:
            disagreements += 1
        for k1 in range(l):
            for k2 in range(l):
                got = is_diffeomorphic(BundleId(1, k1, l), BundleId(1, k2, l)).diffeomorphic
                disagreements += got != _oracle_diffeomorphic(1, k1, k2, l)
    return (
        "equivalence relation; 2k = 2 gamma k' mod l with gamma^2 = 1 by brute force for l <= 50",
        {"law_violations": 0, "nontrivial_pairs_seen": True, "oracle_disagreements_l<=50": 0},
        {"law_violations": violations, "nontrivial_pairs_seen": related > 0, "oracle_disagreements_l<=50": disagreements},
    )


CLAIMS: list[tuple[str, Callable]] = [
    ("C01-genus-golden", _c01),
    ("C02-t-constants", _c02),
    ("C03-counts", _c03),
    ("C04-counting-loop-replica", _c04),
    ("C05-mu-implication", _c05),
    ("C06-quotient-consistency", _c06),
    ("C07-family-step-guard", _c07),
    ("C08-separation-certificates", _c08),
    ("C09-equivalence-laws", _c09),
]


def _record(claim_id: str, fn: Callable, timings: bool) -> dict:
    start = time.perf_counter()
    anchor, expected, computed = fn()
    rec = {"claim_id": claim_id, "anchor": anchor, "expected": expected, "computed": computed, "match": expected == computed}
    if timings:
        rec["wall_time_s"] = round(time.perf_counter() - start, 4)
    return rec


def _render_claims(records: list[dict]) -> str:
    return json.dumps(records, indent=2, sort_keys=False)


def build_report(timings: bool = False) -> dict:
    records = [_record(cid, fn, timings) for cid, fn in CLAIMS]

    def _c10():
        again = [_record(cid, fn, False) for cid, fn in CLAIMS]
        first = [{k: v for k, v in r.items() if k != "wall_time_s"} for r in records]
        return (
            "report rendered twice is byte-identical",
            {"byte_identical": True, "all_other_claims_match": True},
            {"byte_identical": _render_claims(first) == _render_claims(again), "all_other_claims_match": all(r["match"] for r in records)},
        )

    records.append(_record("C10-determinism", _c10, timings))
    return {"tool": "ekmoduli", "version": __version__, "claims": records, "all_match": all(r["match"] for r in records)}


def render_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"
