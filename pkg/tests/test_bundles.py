from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ekmoduli.arith import DomainError, ResMod1, res_add, res_neg
from ekmoduli.bundles import (
    BundleId,
    char_number_pbar_sq,
    characteristic_numbers,
    ek_connected_sum,
    ek_sphere,
    family,
    normalize,
    period_increment,
    period_sphere,
    reverse_orientation,
    verify_period_window,
)

ns = st.sampled_from([1, 2])
ks = st.integers(-10**6, 10**6)
ls = st.integers(1, 500)


def mu(n, k, l):
    return ek_sphere(BundleId(n, k, l)).value


def raw_mu(n, k, l):
    q = {1: 7, 2: 127}[n]
    return Fraction((2 * k + l) ** 2 - l, 8 * l * 2 ** (4 * n - 2) * q) % 1


@pytest.mark.parametrize("args, expected", [((1, 3, 5), (1, 3, 5)), ((1, 3, -5), (1, -2, 5)), ((2, 0, -1), (2, -1, 1))])
def test_normalize_examples(args, expected):
    b = normalize(*args)
    assert (b.n, b.k, b.l) == expected


@given(ns, ks, st.integers(-500, 500).filter(bool))
def test_normalize_idempotent(n, k, l):
    b = normalize(n, k, l)
    assert normalize(b.n, b.k, b.l) == b
    assert b.l > 0


@pytest.mark.parametrize("args", [(1, 0, 0), (3, 0, 1), (0, 1, 1)])
def test_excluded_inputs(args):
    with pytest.raises(DomainError):
        normalize(*args)


def test_bundle_rejects_negative_l_and_non_int():
    with pytest.raises(DomainError):
        BundleId(1, 0, -1)
    with pytest.raises(DomainError):
        BundleId(1, 0.5, 1)


@pytest.mark.parametrize("b, expected", [((1, 1, 1), (1, -2, 1)), ((1, 0, 2), (1, -2, 2))])
def test_reverse_orientation_examples(b, expected):
    r = reverse_orientation(BundleId(*b))
    assert (r.n, r.k, r.l) == expected and r.reversed


@given(ns, ks, ls)
def test_reverse_orientation_involution(n, k, l):
    b = BundleId(n, k, l)
    assert reverse_orientation(reverse_orientation(b)) == b


def test_reversed_id_has_negated_invariant():
    b = BundleId(1, 1, 1)
    assert ek_sphere(reverse_orientation(b)).value == res_neg(mu(1, -2, 1))


@pytest.mark.parametrize(
    "b, expected",
    [((1, 1, 1), (1, 6, 4)), ((2, 0, 1), (1, 6, 0)), ((1, 0, 2), (2, 4, 0))],
)
def test_characteristic_numbers(b, expected):
    d = characteristic_numbers(BundleId(*b))
    assert (d["euler"], d["p_fiber"], d["p_boundary"]) == expected


@pytest.mark.parametrize("b, expected", [((1, 0, 1), 4), ((1, 1, 2), 32), ((2, 0, 1), 36)])
def test_pbar_sq_examples(b, expected):
    assert char_number_pbar_sq(BundleId(*b)) == expected


@given(ns, ks, ls)
def test_pbar_sq_sign(n, k, l):
    v = char_number_pbar_sq(BundleId(n, k, l))
    assert (v == 0) == (2 * k + l == 0)
    assert v >= 0


@pytest.mark.parametrize("b, expected", [((1, 0, 1), Fraction(0)), ((1, 1, 1), Fraction(1, 28)), ((1, 1, 2), Fraction(1, 32))])
def test_ek_sphere_examples(b, expected):
    assert ek_sphere(BundleId(*b)).value.rep == expected


@given(ns, ks, ls)
def test_ek_sphere_against_raw_formula(n, k, l):
    assert mu(n, k, l).rep == raw_mu(n, k, l)


@given(ns, ks, ls)
def test_formula_symmetry(n, k, l):
    assert mu(n, k, l) == mu(n, -k - l, l)


def test_connected_sum_examples():
    m = ek_sphere(BundleId(1, 1, 1))
    assert ek_connected_sum([m, m]).rep == Fraction(1, 14)
    assert ek_connected_sum([m, res_neg(m.value)]) == ResMod1(0)
    assert ek_connected_sum([]) == ResMod1(0)


@given(st.lists(st.tuples(ns, ks, ls), max_size=8), st.randoms(use_true_random=False))
def test_connected_sum_is_fold_in_any_order(ids, rnd):
    values = [mu(*t) for t in ids]
    folded = ResMod1(0)
    for v in values:
        folded = res_add(folded, v)
    shuffled = values[:]
    rnd.shuffle(shuffled)
    assert ek_connected_sum(values) == folded == ek_connected_sum(shuffled)


@pytest.mark.parametrize("n, l, expected", [(1, 1, 56), (2, 1, 16256), (1, 3, 168)])
def test_period_examples(n, l, expected):
    assert period_sphere(n, l) == expected


@pytest.mark.parametrize("n, l", [(1, 1), (2, 1), (1, 3)])
def test_period_exhaustive_one_window(n, l):
    s = period_sphere(n, l)
    assert all(raw_mu(n, k, l) == raw_mu(n, k + s, l) for k in range(s))
    assert verify_period_window(n, l)


@pytest.mark.parametrize("n", [1, 2])
def test_period_increment_integral_symbolically(n):
    k, l, m = sympy.symbols("k l m", integer=True)
    q = {1: 7, 2: 127}[n]
    s = 2 ** (4 * n - 1) * l * q * m
    delta = sympy.expand(sympy.cancel((4 * s * (2 * k + l) + 4 * s**2) / (8 * l * 2 ** (4 * n - 2) * q)))
    poly = sympy.Poly(delta, k, l, m)
    assert all(c.is_integer for c in poly.coeffs())


@given(ns, ks, ls, st.integers(-20, 20))
def test_period_increment_integral(n, k, l, m):
    assert period_increment(n, k, l, m).denominator == 1
    assert mu(n, k, l) == mu(n, k + m * period_sphere(n, l), l)


def test_half_step_counterexample_guard():
    # the undoubled step 28 moves mu(0) from 0 to 1/2
    assert mu(1, 0, 1).rep == 0
    assert mu(1, 28, 1).rep == Fraction(1, 2)
    assert mu(1, 0, 1) != mu(1, 28, 1)
    assert mu(1, 0, 1) == mu(1, 56, 1)


@pytest.mark.parametrize(
    "b, count, expected",
    [((1, 0, 1), 1, [56]), ((2, 0, 1), 1, [16256]), ((1, 1, 3), 2, [169, 337])],
)
def test_family_examples(b, count, expected):
    members = family(BundleId(*b), count)
    assert [m.k for m in members] == expected
    assert all(m.l == b[2] for m in members)


def test_bundle_json_round_trip():
    b = reverse_orientation(BundleId(2, 5, 3))
    import json

    assert BundleId.from_dict(json.loads(b.to_json())) == b
