import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmflab.modgroup import MoebiusMap, NotInGroupError
from qmflab.numerics import PrecisionContext
from qmflab.periodic import ParityError, builder_from_name, char_chi12, char_chi_t, char_false_theta, char_psi
from qmflab.suites import sample_gamma
from qmflab.theta import (
    Theta_f,
    Theta_unary,
    decay_at_rational,
    product_form,
    theta_f,
    theta_unary,
    transform_residual_Theta,
    transform_residual_theta,
)

CTX = PrecisionContext(digits=50)
MP = CTX.mp
TINY = MP.mpf(10) ** -40


def test_frozen_series_values(frozen):
    for name, z, weight, (re, im) in frozen["theta"]:
        f = builder_from_name(name)
        fn = Theta_f if weight else theta_f
        val = fn(f, MP.mpc(complex(z)), CTX)
        ref = MP.mpc(MP.mpf(re), MP.mpf(im))
        assert abs(val - ref) < MP.mpf(10) ** -32 * max(1, abs(ref)), (name, z)


def test_series_and_modular_routes_agree():
    f = char_chi12()
    for z in [MP.mpc("0.1", "0.01"), MP.mpc("-0.37", "0.005"), MP.mpc("0.2", "0.3")]:
        a = theta_f(f, z, CTX, method="series")
        b = theta_f(f, z, CTX, method="modular")
        assert abs(a - b) < TINY * max(1, abs(a))
    g = char_false_theta(1, 4)
    z = MP.mpc("0.3", "0.01")
    assert abs(Theta_f(g, z, CTX, method="series") - Theta_f(g, z, CTX, method="modular")) < MP.mpf(10) ** -35


def test_product_form_examples():
    for f, z in [(char_chi12(), 1j), (char_psi(), 2j), (char_chi_t(2), 1j / 3)]:
        assert abs(product_form(f, z, CTX) - theta_f(f, z, CTX)) < TINY
    with pytest.raises(ParityError):
        product_form(char_false_theta(1, 3), 1j, CTX)


def test_psi_direct_sum():
    ref = MP.nsum(lambda k: MP.exp(-MP.pi * (2 * k + 1) ** 2 / 2), [0, MP.inf])
    assert abs(theta_f(char_psi(), 1j, CTX) - ref) < TINY


def test_leading_term_dominance():
    f = char_chi12()
    z = MP.mpc("0.3", 10)
    q = MP.expjpi(2 * z)
    lead = q ** (MP.mpf(1) / 24)
    assert abs(theta_f(f, z, CTX) - lead) < 2 * abs(q ** (MP.mpf(25) / 24))


def test_Theta_vanishes_at_infinity():
    assert abs(Theta_f(char_false_theta(1, 3), 200j, CTX)) < MP.mpf(10) ** -50


def test_unary_decompositions():
    f = char_chi12()
    z = MP.mpc(0, 1)
    s = sum(f.value_mp(k, MP) * theta_unary(z, k, 12, CTX) for k in f.M_f)
    assert abs(theta_f(f, z, CTX) - s) < TINY
    assert Theta_unary(MP.mpc("0.2", "0.7"), 0, 5, CTX) == 0
    g = char_false_theta(1, 3)
    z = MP.mpc(0, "0.2")
    s = sum(g.value_mp(k, MP) * Theta_unary(z, k, 3, CTX) for k in g.M_f)
    assert abs(Theta_f(g, z, CTX) - s) < TINY


@given(st.floats(-1, 1), st.floats(0.05, 2))
@settings(max_examples=20, deadline=None)
def test_decomposition_random_points(x, y):
    z = MP.mpc(x, y)
    tol = MP.mpf(10) ** -(CTX.digits - 10)
    f = char_chi_t(2)
    s = sum(f.value_mp(k, MP) * theta_unary(z, k, f.M, CTX) for k in f.M_f)
    assert abs(theta_f(f, z, CTX) - s) < tol
    g = char_false_theta(3, 8)
    s = sum(g.value_mp(k, MP) * Theta_unary(z, k, g.M, CTX) for k in g.M_f)
    assert abs(Theta_f(g, z, CTX) - s) < tol * max(1, abs(s))


def test_transform_examples():
    tol = MP.mpf(10) ** -35
    f = char_chi12()
    assert abs(transform_residual_theta(f, MoebiusMap(1, 1, 0, 1), 1j, CTX)) < TINY
    assert abs(transform_residual_theta(f, MoebiusMap(1, 0, 24, 1), 0.5j, CTX)) < tol
    z = MP.mpc(1, 3) / 5
    assert abs(transform_residual_theta(char_psi(), MoebiusMap(1, 0, 4, 1), z, CTX)) < tol
    assert abs(transform_residual_Theta(char_false_theta(1, 3), MoebiusMap(1, 2, 0, 1), 1j, CTX)) < tol
    assert abs(transform_residual_Theta(char_false_theta(1, 4), MoebiusMap(1, 0, 8, 1), MP.mpc(0, 1) / 3, CTX)) < tol
    assert transform_residual_Theta(char_false_theta(1, 4), MoebiusMap(1, 0, 0, 1), 1j, CTX) == 0


def test_transform_errors():
    with pytest.raises(NotInGroupError):
        transform_residual_theta(char_chi12(), MoebiusMap(1, 0, 12, 1), 1j, CTX)
    with pytest.raises(ParityError):
        transform_residual_theta(char_false_theta(1, 3), MoebiusMap(1, 2, 0, 1), 1j, CTX)
    with pytest.raises(ValueError):
        theta_f(char_chi12(), -1j, CTX)


@given(st.integers(0, 10**6), st.sampled_from(["chi12", "hikami:2:1", "psi", "false:1:4", "false:3:8"]), st.booleans())
@settings(max_examples=15, deadline=None)
def test_transform_random_gamma(seed, name, neg):
    f = builder_from_name(name)
    rng = random.Random(seed)
    g = sample_gamma(f.M, 10**4, rng, negative_d=neg)
    z = MP.mpc(rng.uniform(-0.5, 0.5), rng.uniform(0.05, 3))
    res = transform_residual_theta(f, g, z, CTX) if f.is_even() else transform_residual_Theta(f, g, z, CTX)
    assert abs(res) < MP.mpf(10) ** -(CTX.digits - 15)


def test_decay_examples():
    f = char_chi12()
    r = decay_at_rational(f, 0, Fraction(1, 20), CTX)
    assert abs(r.difference) < MP.mpf(10) ** -25
    y = MP.mpf(1) / 20
    envelope = MP.exp(-MP.pi / (12 * y)) / MP.sqrt(12 * y) * 2 * MP.sqrt(3)
    assert 0.5 < abs(r.direct) / envelope < 1.5
    r = decay_at_rational(f, 0, Fraction(1, 100), CTX)
    assert abs(r.normalized - 2 * MP.sqrt(3)) < 1e-3
    for a in [Fraction(1, 5), Fraction(1, 7)]:
        assert abs(decay_at_rational(f, a, Fraction(1, 20), CTX).difference) < MP.mpf(10) ** -30


def test_decay_ratio_tends_to_one():
    f = char_chi12()
    floor = MP.mpf(10) ** -(CTX.digits - 5)
    envs = []
    for k in range(7):
        y = Fraction(1, 20) / 2**k
        r = decay_at_rational(f, 0, y, CTX)
        dev = abs(r.normalized / r.c_f - 1)
        # the n = 2, 3, 4 dual terms cancel for chi12; next is n = 5
        env = 2 * MP.exp(-2 * MP.pi * y.denominator / MP.mpf(y.numerator)) + floor
        assert dev <= env, (k, dev)
        envs.append(env)
    assert all(b <= a for a, b in zip(envs, envs[1:]))


def test_decay_preconditions():
    with pytest.raises(ValueError):
        decay_at_rational(char_chi12(), Fraction(1, 24), Fraction(1, 20), CTX)
    with pytest.raises(ValueError):
        decay_at_rational(char_psi(), 0, Fraction(1, 20), CTX)
    with pytest.raises(ParityError):
        decay_at_rational(char_false_theta(1, 3), 0, Fraction(1, 20), CTX)
