"""Eichler integrals, cocycles and quantum modularity residuals.

Weight 3/2 (even ``f``):

    Theta_f(alpha) - chi(g)^-1 (c alpha + d)^{-3/2} Theta_f(g alpha) = r_g(alpha),
    r_g(x) = -(sqrt(M) e^{i pi/4} / 2 pi) int_{g^-1(i oo)}^{i oo} theta_f(tau) (tau - conj(x))^{-3/2} dtau.

Weight 1/2 (odd ``f``), for ``tau`` in the lower half plane or a cusp
equivalent to ``i oo``:

    hatTheta_f(tau) - chi(g)^-1 (c tau + d)^{-1/2} hatTheta_f(g tau) = r_g(tau),
    r_g(tau) = (iM)^{-1/2} int_{g^-1(i oo)}^{i oo} Theta_f(w) (w - tau)^{-1/2} dw.

All integrals run along vertical lines and use
:func:`qmflab.numerics.quad_vertical_to_infinity`.
"""

from __future__ import annotations

from fractions import Fraction

from .lvalues import hat_expansion, radial_value, theta_expansion
from .modgroup import (
    MoebiusMap,
    NotInGroupError,
    RationalCusp,
    apply,
    automorphy,
    in_A_M,
    in_B_M,
    in_gamma_M,
    multiplier_chi,
)
from .numerics import (
    DEFAULT_CONTEXT,
    PrecisionContext,
    fit_power_series,
    incomplete_gamma_upper,
    principal_power,
    quad_vertical_to_infinity,
    truncation_bound,
)
from .periodic import ParityError, PeriodicCoeffs
from .records import VerificationRecord, timer
from .theta import Theta_f, theta_f

__all__ = [
    "CuspSetError",
    "eichler_tilde",
    "theta_value_at_cusp",
    "hat_Theta",
    "cocycle_r",
    "qmf_residual_32",
    "qmf_residual_12",
    "infinite_order_agreement",
    "radial_samples",
]


class CuspSetError(ValueError):
    """The rational point is outside the cusp set where the value is defined."""


def _decay_rate(f: PeriodicCoeffs, mp):
    k = min(f.M_f)
    return mp.pi * k * k / f.M


def _is_rational(x) -> bool:
    return isinstance(x, (RationalCusp, Fraction, int, str))


def _fname(f: PeriodicCoeffs) -> str:
    return f.name or "custom"


# ---------------------------------------------------------------------------
# weight 3/2 side


def _eichler_series(f: PeriodicCoeffs, z, ctx):
    mp = ctx.mp
    M = f.M
    y = z.imag
    N = truncation_bound(y, M, ctx) + 2
    zbar = mp.conj(z)
    total = mp.mpc(0)
    for n in range(1, N + 1):
        if not f.values[n % M]:
            continue
        x = 2 * mp.pi * n * n * y / M
        g = incomplete_gamma_upper(Fraction(-1, 2), x, ctx)
        total += n * f.value_mp(n, mp) * g * mp.expjpi(n * n * zbar / M)
    return mp.sqrt(mp.pi / M) * mp.expjpi(mp.mpf(-1) / 4) * total


def _eichler_quad(f: PeriodicCoeffs, z, ctx):
    mp = ctx.mp
    x, y = z.real, z.imag
    zbar = mp.conj(z)

    def integrand(u):
        tau = mp.mpc(x, y + u)
        return theta_f(f, tau, ctx) * principal_power(tau - zbar, mp.mpf(-3) / 2, mp) * 1j

    return quad_vertical_to_infinity(integrand, _decay_rate(f, mp), ctx)


def eichler_tilde(f: PeriodicCoeffs, z, ctx: PrecisionContext = DEFAULT_CONTEXT, method: str = "auto"):
    """Eichler integral ``int_z^{i oo} theta_f(tau) (tau - conj(z))^{-3/2} dtau``.

    Parameters
    ----------
    f : PeriodicCoeffs
        Even coefficients.
    z : complex or rational
        A point of the upper half plane, or a cusp in ``A_M``.
    method : {"auto", "series", "quad"}
        In the upper half plane ``auto`` uses the incomplete-gamma series.
        Rational points always use quadrature.
    """
    if not f.is_even():
        raise ParityError("eichler_tilde needs even f")
    mp = ctx.mp
    if _is_rational(z):
        alpha = RationalCusp.of(z)
        if alpha.is_infinity or not in_A_M(f, alpha):
            raise CuspSetError(f"{alpha} is not in A_M")
        a = mp.mpf(alpha.p) / alpha.q

        def integrand(u):
            return theta_f(f, mp.mpc(a, u), ctx) * principal_power(mp.mpc(0, u), mp.mpf(-3) / 2, mp) * 1j

        return quad_vertical_to_infinity(integrand, _decay_rate(f, mp), ctx)
    z = mp.mpc(z)
    if not z.imag > 0:
        raise ValueError("z must be in the upper half plane or a rational cusp")
    if method in ("auto", "series"):
        return _eichler_series(f, z, ctx)
    if method == "quad":
        return _eichler_quad(f, z, ctx)
    raise ValueError(f"unknown method {method!r}")


def theta_value_at_cusp(f: PeriodicCoeffs, alpha, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """``Theta_f(alpha) = -(sqrt(M)/2 pi) e^{i pi/4} eichler_tilde(alpha)`` by quadrature."""
    mp = ctx.mp
    et = eichler_tilde(f, RationalCusp.of(alpha), ctx)
    return -mp.sqrt(f.M) / (2 * mp.pi) * mp.expjpi(mp.mpf(1) / 4) * et


def cocycle_r(f: PeriodicCoeffs, weight, g: MoebiusMap, x, ctx: PrecisionContext = DEFAULT_CONTEXT, *, path_shift=None):
    """Period integral ``r_{g,f}(x)`` along the vertical line over ``-d/c``.

    Parameters
    ----------
    weight : {"3/2", "1/2"}
        3/2 needs even ``f`` and ``x`` in the closed upper half plane; 1/2
        needs odd ``f`` and ``x`` in the closed lower half plane.
    path_shift : (height, shift), optional
        Replace the vertical path by ``s -> s + i h -> s + shift + i h -> i oo``;
        used to probe path independence.

    Returns
    -------
    mpc
        Exactly zero when ``c = 0``.
    """
    weight = Fraction(weight)
    if not in_gamma_M(f.M, g):
        raise NotInGroupError(f"{g} is not in Gamma_M for M={f.M}")
    mp = ctx.mp
    if g.c == 0:
        return mp.mpc(0)
    s = mp.mpf(-g.d) / g.c
    x = mp.mpc(x)
    if x.imag == 0 and x.real == s:
        raise ZeroDivisionError("x is the excluded point g^-1(i oo)")
    M = f.M
    if weight == Fraction(3, 2):
        if not f.is_even():
            raise ParityError("weight 3/2 cocycle needs even f")
        if x.imag < 0:
            raise ValueError("weight 3/2 cocycle is defined on the closed upper half plane")
        xc = mp.conj(x)
        F = lambda tau: theta_f(f, tau, ctx)
        kern = lambda tau: principal_power(tau - xc, mp.mpf(-3) / 2, mp)
        pref = -mp.sqrt(M) * mp.expjpi(mp.mpf(1) / 4) / (2 * mp.pi)
    elif weight == Fraction(1, 2):
        if f.is_even():
            raise ParityError("weight 1/2 cocycle needs odd f")
        if x.imag > 0:
            raise ValueError("weight 1/2 cocycle is defined on the closed lower half plane")
        F = lambda w: Theta_f(f, w, ctx)
        kern = lambda w: principal_power(w - x, mp.mpf(-1) / 2, mp)
        pref = 1 / principal_power(mp.mpc(0, M), mp.mpf(1) / 2, mp)
    else:
        raise ValueError("weight must be 3/2 or 1/2")

    rate = _decay_rate(f, mp)
    if path_shift is None:
        val = quad_vertical_to_infinity(lambda u: F(mp.mpc(s, u)) * kern(mp.mpc(s, u)) * 1j, rate, ctx)
        return pref * val
    h, shift = (mp.mpf(v) for v in path_shift)
    # s -> s + ih
    first = quad_vertical_to_infinity(
        lambda u: (F(mp.mpc(s, h * u / (1 + u))) * kern(mp.mpc(s, h * u / (1 + u))) * 1j * h / (1 + u) ** 2),
        1,
        ctx,
    )
    seg = mp.quad(lambda v: F(mp.mpc(s + v, h)) * kern(mp.mpc(s + v, h)), [0, shift])
    last = quad_vertical_to_infinity(
        lambda u: F(mp.mpc(s + shift, h + u)) * kern(mp.mpc(s + shift, h + u)) * 1j, rate, ctx
    )
    return pref * (first + seg + last)


# ---------------------------------------------------------------------------
# weight 1/2 side


def _hat_series(f: PeriodicCoeffs, tau, ctx):
    mp = ctx.mp
    M = f.M
    y = -tau.imag
    N = truncation_bound(y, M, ctx) + 2
    total = mp.mpc(0)
    for n in range(1, N + 1):
        if not f.values[n % M]:
            continue
        x = 2 * mp.pi * y * n * n / M
        g = incomplete_gamma_upper(Fraction(1, 2), x, ctx)
        total += f.value_mp(n, mp) * mp.expjpi(n * n * tau / M) * g
    return total / mp.sqrt(mp.pi)


def _hat_quad(f: PeriodicCoeffs, tau, ctx):
    # (iM)^{-1/2} int_{conj(tau)}^{i oo} Theta_f(w) (w - tau)^{-1/2} dw
    mp = ctx.mp
    start = mp.conj(tau)
    rate = _decay_rate(f, mp)

    def integrand(u):
        w = start + mp.mpc(0, u)
        return Theta_f(f, w, ctx) * principal_power(w - tau, mp.mpf(-1) / 2, mp) * 1j

    return quad_vertical_to_infinity(integrand, rate, ctx) / principal_power(mp.mpc(0, f.M), mp.mpf(1) / 2, mp)


def hat_Theta(f: PeriodicCoeffs, tau, ctx: PrecisionContext = DEFAULT_CONTEXT, method: str = "auto"):
    """Non-holomorphic Eichler integral of ``Theta_f`` (odd ``f``).

    For ``Im tau < 0`` the default is the incomplete-gamma series
    ``pi^{-1/2} sum f(n) e^{pi i n^2 tau/M} Gamma(1/2, -2 pi y n^2/M)``; ``quad``
    integrates the defining integral.  At a cusp ``alpha`` in ``B_M`` the
    default returns the radial limit ``L(0, C_alpha)``; ``quad`` integrates
    ``Theta_f`` down to ``alpha`` instead.
    """
    if f.is_even():
        raise ParityError("hat_Theta needs odd f")
    mp = ctx.mp
    if _is_rational(tau):
        alpha = RationalCusp.of(tau)
        if alpha.is_infinity or not in_B_M(f.M, alpha):
            raise CuspSetError(f"{alpha} is not Gamma_M-equivalent to i oo")
        if method in ("auto", "lvalue"):
            return radial_value(f, Fraction(1, 2), alpha, ctx)
        if method == "quad":
            return _hat_quad(f, mp.mpc(mp.mpf(alpha.p) / alpha.q), ctx)
        raise ValueError(f"unknown method {method!r}")
    tau = mp.mpc(tau)
    if not tau.imag < 0:
        raise ValueError("tau must be in the lower half plane or a cusp in B_M")
    if method in ("auto", "series"):
        return _hat_series(f, tau, ctx)
    if method == "quad":
        return _hat_quad(f, tau, ctx)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# residual records


def _cusp_value(f, weight, alpha: RationalCusp, ctx):
    if weight == Fraction(3, 2):
        return radial_value(f, weight, alpha, ctx)
    return hat_Theta(f, alpha, ctx)


def qmf_residual_32(f: PeriodicCoeffs, g: MoebiusMap, alpha, ctx: PrecisionContext = DEFAULT_CONTEXT, tol=1e-10) -> VerificationRecord:
    """Weight 3/2 quantum modularity defect at a cusp ``alpha`` in ``A_M``.

    ``D = Theta_f(alpha) - chi(g)^-1 (c alpha + d)^{-3/2} Theta_f(g alpha) - r_g(alpha)``
    with both ``Theta_f`` values from L-values and ``r_g`` from quadrature.
    """
    if not f.is_even():
        raise ParityError("weight 3/2 quantum modularity needs even f")
    if not in_gamma_M(f.M, g):
        raise NotInGroupError(f"{g} is not in Gamma_M for M={f.M}")
    alpha = RationalCusp.of(alpha)
    if alpha.is_infinity:
        raise ValueError("alpha must be rational")
    if not in_A_M(f, alpha):
        raise CuspSetError(f"{alpha} is not in A_M")
    return _residual(f, Fraction(3, 2), g, alpha, ctx, tol, "qmf32")


def qmf_residual_12(f: PeriodicCoeffs, g: MoebiusMap, tau, ctx: PrecisionContext = DEFAULT_CONTEXT, tol=1e-10) -> VerificationRecord:
    """Weight 1/2 defect of ``hat_Theta`` at ``tau`` in the lower half plane or ``B_M``."""
    if f.is_even():
        raise ParityError("weight 1/2 quantum modularity needs odd f")
    if not in_gamma_M(f.M, g):
        raise NotInGroupError(f"{g} is not in Gamma_M for M={f.M}")
    if _is_rational(tau):
        tau = RationalCusp.of(tau)
        if tau.is_infinity or not in_B_M(f.M, tau):
            raise CuspSetError(f"{tau} is not in B_M")
    return _residual(f, Fraction(1, 2), g, tau, ctx, tol, "qmf12")


def _residual(f, weight, g, point, ctx, tol, test):
    mp = ctx.mp
    with timer() as tm:
        chi_bar = 1 / multiplier_chi(f.M, f.k0, g, mp)
        if isinstance(point, RationalCusp):
            image = apply(g, point)
            if image.is_infinity:
                raise ZeroDivisionError("alpha is the excluded point g^-1(i oo)")
            x = mp.mpf(point.p) / point.q
            lhs = _cusp_value(f, weight, point, ctx)
            other = _cusp_value(f, weight, image, ctx)
            point_s = str(point)
        else:
            x = mp.mpc(point)
            lhs = hat_Theta(f, x, ctx)
            gx = (g.a * x + g.b) / (g.c * x + g.d)
            other = hat_Theta(f, gx, ctx)
            point_s = mp.nstr(x, 15)
        auto = automorphy(g.c, g.d, x, -weight.numerator / mp.mpf(weight.denominator), mp)
        r = cocycle_r(f, weight, g, x, ctx)
        rhs = chi_bar * auto * other + r
    return VerificationRecord(
        test=test,
        inputs={"f": _fname(f), "weight": str(weight), "gamma": str(g), "point": point_s},
        lhs=lhs,
        rhs=rhs,
        residual=abs(lhs - rhs),
        tol=tol,
        digits=ctx.digits,
        runtime_ms=tm["ms"],
    )


# ---------------------------------------------------------------------------
# infinite-order agreement


def default_t0(f: PeriodicCoeffs, alpha: RationalCusp) -> Fraction:
    """Largest grid point for the radial fits.

    The expansion coefficients grow roughly like ``(P^2/M)^r`` with ``P`` the
    period of ``C_alpha``, so the grid is pulled in for large periods.
    """
    P = f.M * alpha.q if alpha.p % 2 == 0 else 2 * f.M * alpha.q
    return min(Fraction(1, 10), Fraction(43, 100) * Fraction(f.M, P * P) * 4)


def radial_samples(f, alpha: RationalCusp, side: str, ctx, t0=None, K: int = 12):
    """Samples ``(t_k, F(t_k))`` on ``t_k = t0 2^-k``.

    ``side="theta"`` samples ``theta_f(alpha + i t/2 pi)``; ``side="hat"``
    samples ``hat_Theta(alpha - i t/2 pi)``.
    """
    mp = ctx.mp
    if t0 is None:
        t0 = default_t0(f, alpha)
    a = mp.mpf(alpha.p) / alpha.q
    out = []
    for k in range(K):
        t = mp.mpf(Fraction(t0).numerator) / Fraction(t0).denominator / 2**k
        h = t / (2 * mp.pi)
        if side == "theta":
            v = theta_f(f, mp.mpc(a, h), ctx, method="series")
        elif side == "hat":
            v = _hat_series(f, mp.mpc(a, -h), ctx)
        else:
            raise ValueError("side must be 'theta' or 'hat'")
        out.append((t, v))
    return out


def infinite_order_agreement(f: PeriodicCoeffs, alpha, R: int = 2, ctx: PrecisionContext = DEFAULT_CONTEXT, tol=1e-6, t0=None) -> VerificationRecord:
    """Fit both radial expansions at ``alpha`` and compare with exact L-values.

    The residual is the largest deviation over ``r <= R`` of the fitted
    coefficients of ``theta_f(alpha + it/2pi)`` and
    ``hat_Theta(alpha - it/2pi)`` from
    ``L(-2r, C_alpha) (-+1/2M)^r / r!``.
    """
    if f.is_even():
        raise ParityError("agreement is stated for odd f")
    if not 0 <= R <= 4:
        raise ValueError("R must be in 0..4")
    alpha = RationalCusp.of(alpha)
    mp = ctx.mp
    with timer() as tm:
        exp_theta = theta_expansion(f, alpha, R, ctx)
        exp_hat = hat_expansion(f, alpha, R, ctx)
        fit_theta = fit_power_series(radial_samples(f, alpha, "theta", ctx, t0), R, ctx)
        fit_hat = fit_power_series(radial_samples(f, alpha, "hat", ctx, t0), R, ctx)
        dev = mp.mpf(0)
        for r in range(R + 1):
            dev = max(dev, abs(fit_theta.coeffs[r] - exp_theta.coeffs[r]))
            dev = max(dev, abs(fit_hat.coeffs[r] - exp_hat.coeffs[r]))
    return VerificationRecord(
        test="agreement",
        inputs={"f": _fname(f), "alpha": str(alpha), "R": R},
        lhs=fit_theta.coeffs[0],
        rhs=exp_theta.coeffs[0],
        residual=dev,
        tol=tol,
        digits=ctx.digits,
        runtime_ms=tm["ms"],
    )
