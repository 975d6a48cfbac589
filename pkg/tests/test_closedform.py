"""Exact arithmetic layer: surds, polynomials, and the closed-form formulas."""

import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from hyperlag.closedform import (
    RationalPolynomial,
    Surd,
    alpha_k,
    astar_weight,
    exact_to_json,
    f_b2k,
    f_b2k_numeric_max,
    f_b2k_poly,
    f_b2k_prime,
    f_b2k_prime_poly,
    is_non_square_4k_minus_1,
    square_free_split,
    theorem1_bound_poly,
    theorem1_d0_critical_point,
    theorem1_d0_cubic,
    theorem1_d0_peak_value,
    theorem3_bound_chain,
    theorem3_cubic_part_poly,
    theorem3_g_poly,
    theorem3_gprime_poly,
    verify_theorem1_quartic_identity,
)

fractions_st = st.fractions(min_value=-10, max_value=10, max_denominator=60)
radicands = st.sampled_from([3, 7, 11, 15, 19])


def surd(p, q, d):
    return Surd(F(p), F(q), d)


# ---------------------------------------------------------------------------
# Surd arithmetic
# ---------------------------------------------------------------------------

@given(fractions_st, fractions_st, fractions_st, fractions_st, radicands)
def test_surd_add_sub_roundtrip(p1, q1, p2, q2, d):
    x, y = Surd(p1, q1, d), Surd(p2, q2, d)
    assert (x + y) - y == x


@given(fractions_st, fractions_st, fractions_st, fractions_st, radicands)
def test_surd_mul_div_roundtrip(p1, q1, p2, q2, d):
    x, y = Surd(p1, q1, d), Surd(p2, q2, d)
    if y == 0:
        with pytest.raises(ZeroDivisionError):
            x / y
    else:
        assert (x * y) / y == x


def test_surd_comparison_matches_floats():
    rng = random.Random(5)
    for _ in range(10_000):
        d = rng.choice([3, 7, 11, 15, 19])
        x = surd(F(rng.randint(-50, 50), rng.randint(1, 20)),
                 F(rng.randint(-50, 50), rng.randint(1, 20)), d)
        y = surd(F(rng.randint(-50, 50), rng.randint(1, 20)),
                 F(rng.randint(-50, 50), rng.randint(1, 20)), d)
        fx, fy = float(x), float(y)
        if abs(fx - fy) > 1e-9:
            assert (x < y) == (fx < fy)


def test_surd_square_free_normalization():
    assert Surd.sqrt(28) == surd(0, 2, 7)
    assert Surd.sqrt(F(1, 4)) == Surd(F(1, 2))
    assert surd(1, 1, 12) == surd(1, 2, 3)
    assert square_free_split(360) == (6, 10)


def test_surd_mixed_radicands_rejected():
    with pytest.raises(ValueError):
        Surd.sqrt(3) + Surd.sqrt(7)
    # rationals coerce into any radicand
    assert Surd.sqrt(3) + F(1, 2) - Surd.sqrt(3) == F(1, 2)


def test_surd_floor_exact():
    assert math.floor(Surd.sqrt(7)) == 2
    assert math.floor(-1 * Surd.sqrt(7)) == -3
    assert math.floor(surd(3, 0, 1)) == 3
    assert math.floor(surd(F(7, 2), F(-1, 2), 5)) == 2  # 3.5 - 1.118 = 2.38


def test_surd_sign_squaring_cases():
    assert surd(3, -1, 7).sign() == 1    # 3 > sqrt(7)
    assert surd(2, -1, 7).sign() == -1   # 2 < sqrt(7)
    assert surd(-3, 2, 3).sign() == 1    # 2 sqrt(3) > 3
    assert surd(0, 0, 7).sign() == 0


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

@given(st.lists(fractions_st, max_size=5), st.lists(fractions_st, max_size=5), fractions_st)
def test_polynomial_product_evaluates_pointwise(cs1, cs2, x):
    p, q = RationalPolynomial(tuple(cs1)), RationalPolynomial(tuple(cs2))
    assert (p * q)(x) == p(x) * q(x)


def test_polynomial_compose_and_derivative():
    p = RationalPolynomial((1, 0, 3))          # 1 + 3x^2
    inner = RationalPolynomial((2, -4))        # 2 - 4x
    assert p.compose(inner)(F(1, 2)) == p(inner(F(1, 2)))
    assert p.derivative() == RationalPolynomial((0, 6))
    assert RationalPolynomial(()).degree == -1


# ---------------------------------------------------------------------------
# alpha_k and the B(2k, n) objective
# ---------------------------------------------------------------------------

def test_alpha_2_closed_form():
    a2 = alpha_k(2)
    assert a2 == surd(F(20, 81), F(14, 81), 7)
    assert abs(float(a2) - 0.704204) < 1e-6


def test_alpha_1_smoke():
    assert alpha_k(1) == surd(0, F(1, 3), 3)  # sqrt(3)/3


@pytest.mark.parametrize("k", range(2, 7))
def test_alpha_matches_numeric_max(k):
    a_hat, peak = f_b2k_numeric_max(k)
    assert abs(6 * peak - float(alpha_k(k))) < 1e-10
    assert abs(a_hat - float(astar_weight(k))) < 1e-8


def test_astar_2_closed_form():
    a = astar_weight(2)
    assert a == surd(F(10, 9), F(-2, 9), 7)
    assert abs(float(a) - 0.523168) < 1e-5


@pytest.mark.parametrize("k", range(2, 9))
def test_astar_is_exact_critical_point(k):
    a = astar_weight(k)
    assert f_b2k_prime(a, k) == Surd(F(0))
    assert 6 * f_b2k(a, k) == alpha_k(k)


def test_f_b2k_values():
    assert f_b2k(F(0), 2) == 0
    assert f_b2k(F(1), 2) == F(1, 16)
    assert abs(f_b2k(float(astar_weight(2)), 2) - 0.117367) < 1e-6


@pytest.mark.parametrize("k", range(1, 9))
def test_f_b2k_prime_is_formal_derivative(k):
    assert f_b2k_poly(k).derivative() == f_b2k_prime_poly(k)


def test_alpha_k_is_irrational_sampled():
    rng = random.Random(31)
    for k in [1, 2, 3, 17, 1000, 10**6] + [rng.randint(1, 10**6) for _ in range(50)]:
        assert is_non_square_4k_minus_1(k)
        assert alpha_k(k).q != 0


# ---------------------------------------------------------------------------
# The 2/25 case formulas
# ---------------------------------------------------------------------------

def test_bound_poly_known_points():
    assert theorem1_bound_poly(F(0), F(2, 5), F(2, 5), F(1, 5)) == F(2, 25)
    assert theorem1_bound_poly(F(2, 3), F(1, 3), F(0), F(0)) == F(1, 27)
    assert theorem1_bound_poly(F(0), F(0), F(2, 3), F(1, 3)) == F(2, 27)


def test_bound_poly_rejects_off_simplex():
    with pytest.raises(ValueError):
        theorem1_bound_poly(0.5, 0.5, 0.5, 0.5)
    with pytest.raises(ValueError):
        theorem1_bound_poly(-0.2, 0.4, 0.4, 0.4)


def test_d0_cubic_values():
    assert theorem1_d0_cubic(F(1, 3)) == F(1, 27)
    assert theorem1_d0_cubic(F(1, 2)) == F(1, 16)
    bstar = theorem1_d0_critical_point()
    assert bstar == surd(F(7, 11), F(-1, 11), 5)
    peak = theorem1_d0_peak_value()
    assert (F(19, 250) - peak).sign() > 0          # strictly below 0.076
    assert abs(float(peak) - 0.0758706) < 1e-6


def test_quartic_identity_and_interior_contradictions():
    assert verify_theorem1_quartic_identity()
    # the stationarity eliminations at the roots, recomputed here from scratch
    for b, expect_c in ((F(2, 5), F(2, 5)), (F(4, 9), F(2, 9)), (F(2, 3), F(4, 3))):
        assert (13 * b * b - 6 * b) / (8 * b - 4) == expect_c
    b, c = F(4, 9), F(2, 9)
    a = 2 * b - 2 * c
    assert a == F(4, 9) and 1 - a - b - c == F(-1, 9)


# ---------------------------------------------------------------------------
# The alpha_k/6 chain
# ---------------------------------------------------------------------------

def test_cubic_part_endpoint_identity():
    val = F(11, 54) * F(1, 8) - F(5, 9) * F(1, 4) + F(5, 18) * F(1, 2) + F(1, 27)
    assert val == F(1, 16)
    assert theorem3_cubic_part_poly()(F(1, 2)) == F(1, 16)


def test_g_half_sits_below_alpha_over_6():
    g = theorem3_g_poly(2)
    assert g(F(1, 2)) == F(15, 128)
    assert g(F(1, 2)) == f_b2k(F(1, 2), 2)
    assert (alpha_k(2) / 6 - g(F(1, 2))).sign() > 0


@pytest.mark.parametrize("k", range(2, 9))
def test_gprime_is_formal_derivative(k):
    assert theorem3_g_poly(k).derivative() == theorem3_gprime_poly(k)


def test_k2_surd_inequality_both_forms():
    rhs_sq = F(11, 16) ** 2
    assert F(165, 324) > rhs_sq                      # the stated comparison
    assert F(36, 81) + F(1, 18) - F(1, 144) == F(71, 144)
    assert F(71, 144) > rhs_sq                       # the recomputed radicand


@pytest.mark.parametrize("k", (2, 3, 4, 5))
def test_bound_chain_passes(k):
    report = theorem3_bound_chain(k)
    assert report.ok, report.failing()
    assert {s.name for s in report.steps} == {
        "inner-maximizer", "endpoint-1/16", "gprime-positive",
        "sampled-monotone", "half-point-bound", "peak-identity",
    }


def test_exact_json_shape():
    blob = exact_to_json(alpha_k(2))
    assert blob == {"p": "20/81", "q": "14/81", "d": 7, "float": float(alpha_k(2))}
    assert exact_to_json(F(3)) == {"p": "3/1", "q": "0/1", "d": 1, "float": 3.0}
