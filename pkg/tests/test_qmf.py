from fractions import Fraction

import pytest

from qmflab.lvalues import radial_value, radial_value_exact
from qmflab.modgroup import MoebiusMap, NotInGroupError, RationalCusp
from qmflab.numerics import PrecisionContext
from qmflab.periodic import ParityError, char_chi12, char_chi_t, char_false_theta, char_psi
from qmflab.qmf import (
    CuspSetError,
    cocycle_r,
    default_t0,
    eichler_tilde,
    hat_Theta,
    infinite_order_agreement,
    qmf_residual_12,
    qmf_residual_32,
    radial_samples,
    theta_value_at_cusp,
)

CTX = PrecisionContext(digits=50)
MP = CTX.mp
CTX30 = PrecisionContext(digits=30)


def test_eichler_series_matches_quadrature():
    f = char_chi12()
    for z in [MP.mpc(0, 1), MP.mpc("0.3", "0.4")]:
        a = eichler_tilde(f, z, CTX, method="series")
        b = eichler_tilde(f, z, CTX, method="quad")
        assert abs(a - b) < MP.mpf(10) ** -30


def test_eichler_at_zero():
    val = eichler_tilde(char_chi12(), 0, CTX30)
    ref = 4 * MP.pi / MP.sqrt(12) * MP.expjpi(MP.mpf(-1) / 4)
    assert abs(val - ref) < 1e-20


def test_eichler_rejects():
    with pytest.raises(CuspSetError):
        eichler_tilde(char_psi(), 0, CTX30)
    with pytest.raises(CuspSetError):
        eichler_tilde(char_chi12(), "inf", CTX30)
    with pytest.raises(ParityError):
        eichler_tilde(char_false_theta(1, 3), 1j, CTX30)
    with pytest.raises(ValueError):
        eichler_tilde(char_chi12(), -1j, CTX30)


def test_theta_value_at_cusp():
    assert abs(theta_value_at_cusp(char_chi12(), 0, CTX30) + 2) < 1e-12
    f = char_chi_t(2)
    ref = radial_value(f, Fraction(3, 2), Fraction(0), CTX30)
    assert abs(theta_value_at_cusp(f, 0, CTX30) - ref) < 1e-10


def test_hat_theta_series_vs_quad():
    f = char_false_theta(1, 3)
    tau = MP.mpf(1) / 2 - 1j / (20 * MP.pi)
    a = hat_Theta(f, tau, CTX, method="series")
    b = hat_Theta(f, tau, CTX, method="quad")
    assert abs(a - b) < MP.mpf(10) ** -20


def test_hat_theta_vanishes_deep_in_lower_half_plane():
    # roughly exp(-pi |y| / 3)
    assert abs(hat_Theta(char_false_theta(1, 3), -300j, CTX)) < MP.mpf(10) ** -130


def test_hat_theta_at_cusps():
    f = char_false_theta(1, 3)
    ref = radial_value_exact(f, Fraction(1, 2), Fraction(1, 6)).to_complex(MP)
    assert abs(hat_Theta(f, Fraction(1, 6), CTX) - ref) < MP.mpf(10) ** -45
    with pytest.raises(CuspSetError):
        hat_Theta(f, 0, CTX)
    with pytest.raises(CuspSetError):
        hat_Theta(char_false_theta(1, 4), Fraction(1, 2), CTX)
    with pytest.raises(ValueError):
        hat_Theta(f, 1j, CTX)
    with pytest.raises(ParityError):
        hat_Theta(char_chi12(), -1j, CTX)


def test_cocycle_trivial_for_translations():
    assert cocycle_r(char_chi12(), "3/2", MoebiusMap(1, 12, 0, 1), 0.3, CTX) == 0
    with pytest.raises(NotInGroupError):
        cocycle_r(char_chi12(), "3/2", MoebiusMap(1, 0, 12, 1), 0.3, CTX)
    with pytest.raises(ZeroDivisionError):
        cocycle_r(char_chi12(), "3/2", MoebiusMap(1, 0, 24, 1), MP.mpf(-1) / 24, CTX)
    with pytest.raises(ValueError):
        cocycle_r(char_false_theta(1, 3), "1/2", MoebiusMap(1, 0, 3, 1), 1j, CTX)


def test_cocycle_path_independence():
    f = char_chi12()
    g = MoebiusMap(1, 0, 24, 1)
    x = MP.mpf(1) / 5
    a = cocycle_r(f, "3/2", g, x, CTX30)
    b = cocycle_r(f, "3/2", g, x, CTX30, path_shift=("0.05", "0.3"))
    assert abs(a - b) < 1e-20


def test_qmf32_chi12():
    rec = qmf_residual_32(char_chi12(), MoebiusMap(1, 0, 24, 1), 0, CTX30, tol=1e-10)
    assert rec.passed and rec.test == "qmf32"
    with pytest.raises(CuspSetError):
        qmf_residual_32(char_psi(), MoebiusMap(1, 0, 4, 1), 0, CTX30)


def test_qmf12_examples():
    rec = qmf_residual_12(char_false_theta(1, 3), MoebiusMap(1, 2, 0, 1), -1j, CTX)
    assert rec.residual < 1e-25
    tau = MP.mpf(1) / 8 - 1j / 3
    rec = qmf_residual_12(char_false_theta(1, 4), MoebiusMap(1, 0, 8, 1), tau, CTX)
    assert rec.residual < 1e-20
    with pytest.raises(CuspSetError):
        qmf_residual_12(char_false_theta(1, 4), MoebiusMap(1, 0, 8, 1), Fraction(1, 2), CTX)


@pytest.mark.parametrize("x", [Fraction(1, 5), Fraction(1, 3), Fraction(2, 7), Fraction(1, 11), Fraction(3, 4)])
def test_cocycle_relation(x):
    # r_{g1 g2}(x) = r_{g2}(x) + chi(g2)^-1 (c2 x + d2)^{-3/2} r_{g1}(g2 x)
    from qmflab.modgroup import multiplier_chi

    mp = CTX30.mp
    f = char_chi12()
    g1, g2 = MoebiusMap(1, 0, 24, 1), MoebiusMap(1, 0, 48, 1)
    xm = mp.mpf(x.numerator) / x.denominator
    gx = (g2.a * xm + g2.b) / (g2.c * xm + g2.d)
    lhs = cocycle_r(f, "3/2", g1 @ g2, xm, CTX30)
    auto = (g2.c * xm + g2.d) ** (mp.mpf(-3) / 2)
    rhs = cocycle_r(f, "3/2", g2, xm, CTX30) + auto / multiplier_chi(12, 1, g2, mp) * cocycle_r(f, "3/2", g1, gx, CTX30)
    assert abs(lhs - rhs) < 1e-8


def test_radial_samples_and_agreement():
    f = char_false_theta(1, 3)
    alpha = RationalCusp(0, 1)
    s = radial_samples(f, alpha, "hat", CTX30, K=4)
    t0 = default_t0(f, alpha)
    assert len(s) == 4 and abs(s[0][0] - CTX30.mp.mpf(t0.numerator) / t0.denominator) < 1e-35
    with pytest.raises(ValueError):
        radial_samples(f, alpha, "other", CTX30)
    rec = infinite_order_agreement(f, alpha, 2, CTX30)
    assert rec.passed
    with pytest.raises(ValueError):
        infinite_order_agreement(f, alpha, 5, CTX30)
