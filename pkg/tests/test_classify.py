from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ekmoduli.arith import DomainError, ResMod1
from ekmoduli.bundles import BundleId, ek_sphere, family, period_sphere, reverse_orientation
from ekmoduli.classify import (
    Reason,
    enumerate_quotient_types,
    enumerate_types,
    is_diffeomorphic,
    is_diffeomorphic_any_orientation,
    path_component_certificates,
    path_component_lower_bound,
    separation_certificate,
    vanishing_system,
)
from ekmoduli.quotients import count_distinct


def oracle_related(n, k1, k2, l):
    q = {1: 7, 2: 127}[n]
    mu1 = Fraction((2 * k1 + l) ** 2 - l, 8 * l * 2 ** (4 * n - 2) * q) % 1
    mu2 = Fraction((2 * k2 + l) ** 2 - l, 8 * l * 2 ** (4 * n - 2) * q) % 1
    return mu1 == mu2 and any((g * g - 1) % l == 0 and (2 * k1 - 2 * g * k2) % l == 0 for g in range(l))


def oracle_class_count(n, l, window):
    # union-find over the pairwise oracle relation
    parent = list(range(window))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a in range(window):
        for b in range(a + 1, window):
            if oracle_related(n, a, b, l):
                parent[find(a)] = find(b)
    return len({find(i) for i in range(window)})


def B(n, k, l):
    return BundleId(n, k, l)


def test_examples():
    v = is_diffeomorphic(B(1, 0, 1), B(1, 7, 1))
    assert v.diffeomorphic and v.reason is Reason.OK
    v = is_diffeomorphic(B(1, 0, 1), B(1, 1, 1))
    assert not v.diffeomorphic and v.reason is Reason.MU_DIFFERS
    assert (v.mu_left.rep, v.mu_right.rep) == (0, Fraction(1, 28))
    v = is_diffeomorphic(B(1, 1, 5), B(1, -6, 5))
    assert v.diffeomorphic and v.gamma_witness == 4
    assert v.mu_left.rep == v.mu_right.rep == Fraction(11, 280)
    assert is_diffeomorphic(B(1, 3, 4), B(1, 3, 4)).gamma_witness == 1


def test_different_l_and_dimension():
    assert is_diffeomorphic(B(1, 0, 1), B(1, 0, 2)).reason is Reason.DIFFERENT_L
    with pytest.raises(DomainError):
        is_diffeomorphic(B(1, 0, 1), B(2, 0, 1))
    with pytest.raises(DomainError):
        is_diffeomorphic(reverse_orientation(B(1, 0, 1)), B(1, 0, 1))


def test_no_gamma_reason():
    # same invariant, congruence fails
    found = None
    for l in range(2, 30):
        for k1 in range(l):
            for k2 in range(period_sphere(1, l)):
                if oracle_related(1, k1, k2, l) is False and ek_sphere(B(1, k1, l)).value == ek_sphere(B(1, k2, l)).value:
                    found = (k1, k2, l)
                    break
            if found:
                break
        if found:
            break
    assert found is not None
    k1, k2, l = found
    assert is_diffeomorphic(B(1, k1, l), B(1, k2, l)).reason is Reason.NO_GAMMA


def test_any_orientation_examples():
    v = is_diffeomorphic_any_orientation(B(1, 1, 1), B(1, -2, 1))
    assert v.preserving.diffeomorphic
    assert not v.reversing.diffeomorphic and v.reversing.reason is Reason.MU_DIFFERS
    assert v.diffeomorphic
    v = is_diffeomorphic_any_orientation(B(1, 0, 1), B(1, 0, 1))
    assert v.preserving.diffeomorphic
    v = is_diffeomorphic_any_orientation(B(1, 0, 1), B(1, 1, 1))
    assert not v.preserving.diffeomorphic and not v.reversing.diffeomorphic
    assert set(v.to_dict()) == {"diffeomorphic", "preserving", "reversing"}


small = st.tuples(st.sampled_from([1, 2]), st.integers(1, 40))


@settings(max_examples=60, deadline=None)
@given(small, st.lists(st.integers(-3000, 3000), min_size=3, max_size=3))
def test_equivalence_laws(nl, ks):
    n, l = nl
    a, b, c = (B(n, k, l) for k in ks)
    rel = lambda x, y: is_diffeomorphic(x, y).diffeomorphic  # noqa: E731
    assert rel(a, a)
    assert rel(a, b) == rel(b, a)
    if rel(a, b) and rel(b, c):
        assert rel(a, c)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), st.integers(0, 40), st.data())
def test_transitivity_on_related_triples(l, k, data):
    # draw b, c from k's class so the implication is actually exercised
    s = period_sphere(1, l)
    cls = [j for j in range(s) if oracle_related(1, k, j, l)]
    j1, j2 = data.draw(st.sampled_from(cls)), data.draw(st.sampled_from(cls))
    assert is_diffeomorphic(B(1, j1, l), B(1, j2, l)).diffeomorphic


@pytest.mark.parametrize("l", range(1, 51))
def test_gamma_oracle_agreement(l):
    for k1 in range(l):
        for k2 in range(l):
            assert is_diffeomorphic(B(1, k1, l), B(1, k2, l)).diffeomorphic == oracle_related(1, k1, k2, l)


@pytest.mark.parametrize("n", [1, 2])
def test_l1_reduces_to_mu_equality(n):
    s = period_sphere(n, 1)
    base = B(n, 0, 1)
    step = 1 if n == 1 else 97
    for k in range(0, s, step):
        other = B(n, k, 1)
        assert is_diffeomorphic(base, other).diffeomorphic == (ek_sphere(base).value == ek_sphere(other).value)


def test_enumerate_examples():
    assert enumerate_types(1, 1)["count"] == 16
    assert enumerate_types(2, 1)["count"] == 4096


@pytest.mark.parametrize("n", [1, 2])
def test_enumerate_matches_count_distinct(n):
    assert enumerate_types(n, 1)["count"] == count_distinct(n, replica=False)["sphere_values"]


# frozen from the union-find oracle below, run over two periods
ENUMERATE_N1 = {2: 16, 3: 32, 4: 28, 5: 48, 6: 32}


@pytest.mark.parametrize("l", sorted(ENUMERATE_N1))
def test_enumerate_against_bruteforce(l):
    window = 2 * period_sphere(1, l)
    got = enumerate_types(1, l)
    assert got["count"] == ENUMERATE_N1[l] == oracle_class_count(1, l, window)
    reps = got["representatives"]
    assert reps == sorted(reps)
    assert all(not oracle_related(1, a, b, l) for i, a in enumerate(reps) for b in reps[i + 1 :])


def test_enumerate_l2_representatives():
    assert enumerate_types(1, 2)["representatives"] == [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 16, 20, 27]


def test_enumerate_rejects_l0():
    with pytest.raises(DomainError):
        enumerate_types(1, 0)


def test_enumerate_quotient_types():
    assert enumerate_quotient_types(1) == {"n": 1, "count": 16, "kind": "exact"}
    assert enumerate_quotient_types(2) == {"n": 2, "count": 4096, "kind": "lower_bound"}
    assert enumerate_quotient_types(1)["count"] == count_distinct(1, replica=False)["quotient_pairs"]


def test_vanishing_systems():
    s1, s2 = vanishing_system(1), vanishing_system(2)
    assert s1["determinant"] == Fraction(45, 259200)
    assert s2["determinant"] == Fraction(-75600, 464486400 * 14175)
    assert s1["solution"] == s2["solution"] == [0, 0]
    with pytest.raises(DomainError):
        vanishing_system(3)


@pytest.mark.parametrize(
    "args, delta, separated",
    [((1, 1, 0, 7), -896, True), ((1, 1, 5, 5), 0, False), ((1, 2, 0, -2), 0, False)],
)
def test_certificate_examples(args, delta, separated):
    c = separation_certificate(*args)
    assert c.delta == delta and c.separated is separated
    d = c.to_dict()
    assert d["delta"] == f"{delta}/1"
    assert d["system_solution"]["forced_zero"] == "p1^2"


def test_certificate_delta_formula():
    for n in (1, 2):
        for l in (1, 2, 7):
            for k0, k1 in [(0, 3), (-4, 9), (2, 2)]:
                expected = Fraction((4 * n - 2) ** 2 * ((2 * k0 + l) ** 2 - (2 * k1 + l) ** 2), l)
                assert separation_certificate(n, l, k0, k1).delta == expected


@pytest.mark.parametrize("b, count", [((1, 0, 1), 3), ((2, 0, 1), 2), ((1, 0, 1), 1), ((1, 0, 1), 5)])
def test_path_component_examples(b, count):
    assert path_component_lower_bound(B(*b), count) == count
    certs = path_component_certificates(B(*b), count)
    assert len(certs) == count * (count - 1) // 2 and all(c.separated for c in certs)


def test_path_component_raises_on_collision():
    # 2k + l = -112 meets its first family member at +112
    with pytest.raises(RuntimeError):
        path_component_lower_bound(B(1, -57, 2), 2)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([1, 2]), st.integers(1, 30), st.integers(0, 5000), st.integers(1, 4))
def test_family_diffeomorphic_and_separated(n, l, t, count):
    k = t - (l // 2)  # keeps 2k + l >= 0
    b = B(n, k, l)
    for member in family(b, count):
        assert is_diffeomorphic(b, member).diffeomorphic
        assert separation_certificate(n, l, b.k, member.k).separated
