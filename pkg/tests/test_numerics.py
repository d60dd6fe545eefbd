from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmflab.numerics import (
    IllConditionedFit,
    PrecisionContext,
    as_mpf,
    bernoulli_number,
    bernoulli_poly,
    fit_power_series,
    incomplete_gamma_upper,
    parse_number,
    principal_power,
    quad_vertical_to_infinity,
    truncation_bound,
)

CTX = PrecisionContext(digits=50)
MP = CTX.mp


def _gamma_by_quadrature(a, x, mp):
    # direct integral of w^(a-1) e^-w over [x, oo)
    return mp.quad(lambda w: w ** (a - 1) * mp.exp(-w), [x, x + 1, x + 10, mp.inf])


def test_context_validation():
    with pytest.raises(ValueError):
        PrecisionContext(digits=10)
    with pytest.raises(ValueError):
        PrecisionContext(trunc_margin=-1)
    with pytest.raises(ValueError):
        PrecisionContext(quad_target=0.0)
    c = PrecisionContext(digits=30)
    assert c.target_digits == 40
    assert c.mp.dps >= 30
    assert c.mp is not mpmath.mp


def test_incomplete_gamma_half_at_zero():
    assert abs(incomplete_gamma_upper(Fraction(1, 2), 0, CTX) - MP.sqrt(MP.pi)) < MP.mpf(10) ** -48


def test_incomplete_gamma_large_x():
    ctx = PrecisionContext(digits=30)
    assert abs(incomplete_gamma_upper(Fraction(1, 2), 200, ctx)) < ctx.mp.mpf(10) ** -30


def test_incomplete_gamma_minus_half_against_quadrature():
    g_half = incomplete_gamma_upper(Fraction(1, 2), 1, CTX)
    g_mhalf = incomplete_gamma_upper(Fraction(-1, 2), 1, CTX)
    # Gamma(1/2, 1) = -1/2 Gamma(-1/2, 1) + e^-1
    assert abs(g_half - (-g_mhalf / 2 + MP.exp(-1))) < MP.mpf(10) ** -45
    ref = _gamma_by_quadrature(MP.mpf(-1) / 2, MP.mpf(1), MP)
    assert abs(g_mhalf - ref) < MP.mpf(10) ** -40


@pytest.mark.parametrize("x", ["0.1", "1", "10"])
def test_incomplete_gamma_half_matches_definition(x):
    x = MP.mpf(x)
    val = incomplete_gamma_upper(Fraction(1, 2), x, CTX)
    assert abs(val - _gamma_by_quadrature(MP.mpf(1) / 2, x, MP)) < MP.mpf(10) ** -40
    # recurrence consistency
    rec = val + incomplete_gamma_upper(Fraction(-1, 2), x, CTX) / 2 - MP.exp(-x) / MP.sqrt(x)
    assert abs(rec) < MP.mpf(10) ** -45


def test_incomplete_gamma_domain():
    with pytest.raises(ValueError):
        incomplete_gamma_upper(Fraction(-1, 2), 0, CTX)
    with pytest.raises(ValueError):
        incomplete_gamma_upper(Fraction(3, 2), 1, CTX)
    with pytest.raises(ValueError):
        incomplete_gamma_upper(Fraction(1, 2), -1, CTX)


def test_bernoulli_examples():
    assert bernoulli_poly(0, Fraction(1, 3)) == 1
    assert bernoulli_poly(1, 0) == Fraction(-1, 2)
    assert bernoulli_poly(2, Fraction(1, 12)) == Fraction(13, 144)
    assert bernoulli_number(12) == Fraction(-691, 2730)
    with pytest.raises(ValueError):
        bernoulli_poly(65, 0)


@pytest.mark.parametrize("x", [Fraction(0), Fraction(1, 2), Fraction(1, 3), Fraction(2, 7)])
def test_bernoulli_difference_identity(x):
    for n in range(1, 11):
        assert bernoulli_poly(n, x + 1) - bernoulli_poly(n, x) == n * x ** (n - 1)


@given(st.fractions(min_value=-3, max_value=3, max_denominator=50), st.integers(0, 20))
def test_bernoulli_reflection(x, n):
    assert bernoulli_poly(n, 1 - x) == (-1) ** n * bernoulli_poly(n, x)


def test_bernoulli_numbers_match_mpmath():
    for n in range(0, 30):
        assert abs(MP.mpf(bernoulli_number(n).numerator) / bernoulli_number(n).denominator - MP.bernoulli(n)) < MP.mpf(10) ** -40


def test_quadrature_simple_integrals():
    v = quad_vertical_to_infinity(lambda y: MP.exp(-y), 1, CTX)
    assert abs(v - 1) < MP.mpf(10) ** -38
    v = quad_vertical_to_infinity(lambda y: MP.exp(-y) / MP.sqrt(y), 1, CTX)
    assert abs(v - MP.sqrt(MP.pi)) < MP.mpf(10) ** -38


def test_quadrature_is_deterministic():
    f = lambda y: MP.exp(-y - 1 / y)
    a = quad_vertical_to_infinity(f, 1, CTX)
    b = quad_vertical_to_infinity(f, 1, CTX)
    assert a == b
    # 2 K_1(2)
    assert abs(a - 2 * MP.besselk(1, 2)) < MP.mpf(10) ** -38


def test_fit_examples():
    ctx = PrecisionContext(digits=30)
    mp = ctx.mp
    ts = [mp.mpf(1) / 10 / 2**k for k in range(12)]
    s = fit_power_series([(t, 5) for t in ts], 2, ctx)
    assert all(abs(c - e) < mp.mpf(10) ** -20 for c, e in zip(s.coeffs, (5, 0, 0)))
    s = fit_power_series([(t, mp.exp(-t)) for t in ts], 2, ctx)
    assert all(abs(c - e) < 1e-6 for c, e in zip(s.coeffs, (1, -1, mp.mpf(1) / 2)))
    assert s.order == 2 and len(s.grid) == 12
    s = fit_power_series([(t, 0) for t in ts], 2, ctx)
    assert all(c == 0 for c in s.coeffs)


def test_fit_rejects_bad_input():
    ctx = PrecisionContext(digits=30)
    with pytest.raises(ValueError):
        fit_power_series([(1, 1), (0.5, 1)], 2, ctx)
    # coincident nodes make the design matrix singular
    with pytest.raises(IllConditionedFit):
        fit_power_series([(0.1, 1)] * 8, 2, ctx)


def test_truncation_bound_examples():
    assert truncation_bound(1, 12, PrecisionContext(digits=50, trunc_margin=10)) == 23
    assert truncation_bound(0.01, 2, PrecisionContext(digits=30, trunc_margin=10)) == 77
    assert truncation_bound(10**6, 12, CTX) == 1
    with pytest.raises(ValueError):
        truncation_bound(0, 12, CTX)


@given(st.floats(min_value=0.01, max_value=50), st.integers(2, 100))
@settings(max_examples=50)
def test_truncation_bound_is_minimal(y, M):
    n = truncation_bound(y, M, CTX)
    rhs = CTX.target_digits * MP.log(10)
    assert MP.pi * y * n * n / M > rhs
    assert n == 1 or not MP.pi * y * (n - 1) ** 2 / M > rhs


def test_principal_power_branch():
    w = MP.mpc(-1, 0)
    # arg(-1) = pi
    assert abs(principal_power(w, MP.mpf(1) / 2, MP) - 1j) < MP.mpf(10) ** -45
    with pytest.raises(ZeroDivisionError):
        principal_power(0, 1, MP)


def test_parse_number():
    assert parse_number("0.3+0.5i", MP) == MP.mpc("0.3", "0.5")
    assert parse_number("i/2", MP) == MP.mpc(0, "0.5")
    assert parse_number("1/10-1/2i", MP) == MP.mpc(MP.mpf(1) / 10, MP.mpf(-1) / 2)
    assert parse_number("-1", MP) == -1
    assert parse_number("(1+3i)/5", MP) == MP.mpc(MP.mpf(1) / 5, MP.mpf(3) / 5)
    for bad in ["", "abc", "1+", "__import__('os')"]:
        with pytest.raises(ValueError):
            parse_number(bad, MP)


def test_as_mpf_exact_fraction():
    assert as_mpf(Fraction(1, 3), MP) == MP.mpf(1) / 3
    assert as_mpf("0.25", MP) == MP.mpf("0.25")
