"""Partial theta series with periodic coefficients.

``theta_f(z) = sum_{n>=0} f(n) q^{n^2/2M}`` and
``Theta_f(z) = sum_{n>=0} n f(n) q^{n^2/2M}`` with ``q^{n^2/2M} = exp(pi i n^2 z / M)``.

Two evaluation routes are provided.  The *series* route sums the q-expansion
directly and needs ``O(1/sqrt(y))`` terms.  The *modular* route (available for
``theta_f`` with even ``f`` and ``Theta_f`` with odd ``f``) writes the series as
a combination of theta functions with rational characteristics and moves the
argument into the standard fundamental domain with ``T`` and ``S`` steps.  The
modular route never uses the multiplier of :mod:`qmflab.modgroup`, so the two
routes can check each other's conventions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .modgroup import MoebiusMap, NotInGroupError, RationalCusp, in_gamma_M, multiplier_chi, in_B_M
from .numerics import DEFAULT_CONTEXT, PrecisionContext, as_mpf, principal_power, truncation_bound
from .periodic import CoefficientError, ParityError, PeriodicCoeffs, c_f_constant, primed_sum

__all__ = [
    "theta_f",
    "Theta_f",
    "theta_unary",
    "Theta_unary",
    "product_form",
    "transform_sides",
    "transform_residual_theta",
    "transform_residual_Theta",
    "decay_at_rational",
    "DecayResult",
    "CROSSOVER_HEIGHT",
]

CROSSOVER_HEIGHT = 0.02


def _check_upper(z, mp):
    z = mp.mpc(z)
    if not z.imag > 0:
        raise ValueError("z must lie in the upper half plane")
    return z


# ---------------------------------------------------------------------------
# series route


def _series(f: PeriodicCoeffs, z, ctx: PrecisionContext, weight: int):
    mp = ctx.mp
    z = _check_upper(z, mp)
    M = f.M
    N = truncation_bound(z.imag, M, ctx)
    if weight:
        # the n factor grows; pad a little
        N += int(math.log10(N + 10)) + 2
    base = mp.expjpi(z / M)  # q^{1/2M}
    coeffs = [f.value_mp(r, mp) for r in range(M)]
    nonzero = [bool(f.values[r]) for r in range(M)]
    total = mp.mpc(0)
    # q^{n^2/2M} via successive ratios: q^{(n+1)^2} = q^{n^2} * q^{2n+1}
    term = mp.mpc(1)
    step = base
    base2 = base * base
    for n in range(N + 1):
        r = n % M
        if nonzero[r]:
            c = coeffs[r] * term
            total += n * c if weight else c
        term *= step
        step *= base2
    return total


# ---------------------------------------------------------------------------
# modular route: theta with characteristics
#
#   v[a,b](tau) = sum_n exp(pi i (n+a)^2 tau + 2 pi i (n+a) b)
#   v'[a,b]     = sum_n 2 pi i (n+a) exp(...)            (zeta derivative)
#
#   v[a,b](tau + m) = exp(-pi i m a (a+1)) v[a, b + m a + m/2](tau)
#   v[a,b](-1/tau)  = sqrt(-i tau) exp(2 pi i a b) v[b, -a](tau)
#   v'[a,b](-1/tau) = tau sqrt(-i tau) exp(2 pi i a b) v'[b, -a](tau)
#   v[a+1,b] = v[a,b],  v[a,b+1] = exp(2 pi i a) v[a,b]


def _moebius_value(G: MoebiusMap, w, mp):
    return (G.a * w + G.b) / (G.c * w + G.d)


def _char_theta(a: Fraction, b: Fraction, G: MoebiusMap, w, ctx: PrecisionContext, deriv: bool):
    """``v[a,b](G w)`` (or ``v'``) by reduction to the fundamental domain."""
    mp = ctx.mp
    phase = Fraction(0)  # accumulated exp(pi i * phase)
    scale = mp.mpc(1)
    tau = _moebius_value(G, w, mp)
    for _ in range(10000):
        # reduce characteristics
        sa = math.floor(a + Fraction(1, 2))
        a -= sa
        sb = math.floor(b + Fraction(1, 2))
        if sb:
            b -= sb
            phase += 2 * a * sb
        m = int(mp.nint(tau.real))
        if m:
            phase -= m * a * (a + 1)
            b = b + m * a + Fraction(m, 2)
            G = MoebiusMap(1, -m, 0, 1) @ G
            tau = _moebius_value(G, w, mp)
            continue
        if abs(tau) < 1 - mp.mpf(10) ** (-ctx.digits // 2):
            G = MoebiusMap(0, -1, 1, 0) @ G
            tau = _moebius_value(G, w, mp)
            scale *= mp.sqrt(-1j * tau)
            if deriv:
                scale *= tau
            phase += 2 * a * b
            a, b = b, -a
            continue
        break
    else:  # pragma: no cover
        raise ArithmeticError("fundamental-domain reduction did not terminate")
    sa = math.floor(a + Fraction(1, 2))
    a -= sa
    sb = math.floor(b + Fraction(1, 2))
    if sb:
        b -= sb
        phase += 2 * a * sb
    # direct sum at Im tau >= sqrt(3)/2
    y = tau.imag
    need = (ctx.target_digits + 5) * mp.log(10)
    K = int(mp.sqrt(need / (mp.pi * y))) + 2
    af = mp.mpf(a.numerator) / a.denominator
    bf = mp.mpf(b.numerator) / b.denominator
    total = mp.mpc(0)
    for n in range(-K - 1, K + 2):
        x = n + af
        t = mp.expjpi(x * x * tau + 2 * x * bf)
        total += x * t if deriv else t
    if deriv:
        total *= 2j * mp.pi
    phase %= 2
    return scale * total * mp.expjpi(mp.mpf(phase.numerator) / phase.denominator)


def _scaled_point(M: int, z, G: MoebiusMap | None, ctx):
    """Return ``(G_M, w)`` with ``M * (G z) = G_M(w)`` and ``w = M z``."""
    mp = ctx.mp
    w = M * mp.mpc(z)
    if G is None:
        return MoebiusMap(1, 0, 0, 1), w
    if G.c % M:
        raise ValueError("M must divide c for the tracked modular route")
    return MoebiusMap(G.a, M * G.b, G.c // M, G.d), w


def _modular(f: PeriodicCoeffs, z, ctx, weight: int, G: MoebiusMap | None = None):
    M = f.M
    GM, w = _scaled_point(M, z, G, ctx)
    mp = ctx.mp
    total = mp.mpc(0)
    for j in f.support():
        val = _char_theta(Fraction(j, M), Fraction(0), GM, w, ctx, bool(weight))
        total += f.value_mp(j, mp) * val
    if weight:
        total *= M / (2j * mp.pi)
    return total / 2


def _modular_ok(f: PeriodicCoeffs, weight: int) -> bool:
    return f.is_even() if weight == 0 else not f.is_even()


def _evaluate(f, z, ctx, weight, method):
    mp = ctx.mp
    z = _check_upper(z, mp)
    if method == "auto":
        if z.imag < CROSSOVER_HEIGHT and _modular_ok(f, weight):
            method = "modular"
        else:
            method = "series"
    if method == "series":
        return _series(f, z, ctx, weight)
    if method == "modular":
        if not _modular_ok(f, weight):
            raise ParityError("modular route needs even f for theta_f, odd f for Theta_f")
        return _modular(f, z, ctx, weight)
    raise ValueError(f"unknown method {method!r}")


def theta_f(f: PeriodicCoeffs, z, ctx: PrecisionContext = DEFAULT_CONTEXT, method: str = "auto"):
    """Evaluate ``theta_f(z)`` for ``z`` in the upper half plane.

    Parameters
    ----------
    f : PeriodicCoeffs
    z : complex
        Point with ``Im z > 0``.
    ctx : PrecisionContext
    method : {"auto", "series", "modular"}
        ``auto`` uses the series above height 0.02 and the modular route below
        it when ``f`` is even.

    Returns
    -------
    mpc
    """
    return _evaluate(f, z, ctx, 0, method)


def Theta_f(f: PeriodicCoeffs, z, ctx: PrecisionContext = DEFAULT_CONTEXT, method: str = "auto"):
    """Evaluate ``Theta_f(z) = sum n f(n) q^{n^2/2M}``; see :func:`theta_f`."""
    return _evaluate(f, z, ctx, 1, method)


def theta_unary(z, k: int, M: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Bilateral sum ``sum_{n in Z} q^{(Mn+k)^2/2M}``."""
    return _unary(z, k, M, ctx, 0)


def Theta_unary(z, k: int, M: int, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Bilateral sum ``sum_{n in Z} (Mn+k) q^{(Mn+k)^2/2M}``."""
    return _unary(z, k, M, ctx, 1)


def _unary(z, k, M, ctx, weight):
    if not 0 <= k < M:
        raise ValueError("need 0 <= k < M")
    mp = ctx.mp
    z = _check_upper(z, mp)
    N = truncation_bound(z.imag, M, ctx) // M + 3

    def term(m):
        t = mp.expjpi(m * m * z / M)
        return m * t if weight else t

    # pair n with -n so that the odd sum at k = 0 cancels exactly
    total = term(k)
    for n in range(1, N + 1):
        total += term(M * n + k) + term(-M * n + k)
    return total


# ---------------------------------------------------------------------------
# product form


def _qpow(z, x, mp):
    # q^x with q = e^{2 pi i z}
    return mp.expjpi(2 * z * x)


def product_form(f: PeriodicCoeffs, z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """``theta_f`` through Jacobi's triple product.

    ``q^{k0/2M} (q^M;q^M) sum' q^{k'} f(k) (-q^{M/2-k};q^M) (-q^{M/2+k};q^M)``
    with ``k' = (k^2 - k0)/2M``.
    """
    if not f.is_even():
        raise ParityError("product form needs even f")
    mp = ctx.mp
    z = _check_upper(z, mp)
    M = f.M
    kprime = {}
    for k in f.M_f:
        num = k * k - f.k0
        if num % (2 * M) or num < 0:
            raise CoefficientError(f"k'={Fraction(num, 2 * M)} is not a nonnegative integer for k={k}")
        kprime[k] = num // (2 * M)
    qM = _qpow(z, M, mp)
    cutoff = mp.mpf(10) ** (-ctx.target_digits - 5)
    # number of factors until |q^{M j}| < cutoff
    J = int(mp.ceil(ctx.target_digits * mp.log(10) / (2 * mp.pi * z.imag * M))) + 3

    def poch(a):
        # (a; q^M)_inf
        p = mp.mpc(1)
        x = mp.mpc(a)
        for _ in range(J):
            p *= 1 - x
            x *= qM
            if abs(x) < cutoff:
                break
        return p

    euler = poch(qM)
    total = mp.mpc(0)
    for k in f.M_f:
        w = mp.mpf(1) / 2 if 2 * k == M else 1
        half = mp.mpf(M) / 2
        prod = poch(-_qpow(z, half - k, mp)) * poch(-_qpow(z, half + k, mp))
        total += w * f.value_mp(k, mp) * _qpow(z, kprime[k], mp) * prod
    return _qpow(z, mp.mpf(f.k0) / (2 * M), mp) * euler * total


# ---------------------------------------------------------------------------
# transformation laws


def transform_sides(f: PeriodicCoeffs, g: MoebiusMap, z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Both sides of the transformation law of weight 1/2 (even) or 3/2 (odd).

    Returns ``(lhs, rhs)`` with ``lhs = F(g z)`` evaluated by the modular
    route with ``g`` tracked exactly, and ``rhs = chi(g) (c z + d)^k F(z)``
    with ``F(z)`` from the series.  The identity acts trivially and both
    sides are then the same series value.
    """
    if not in_gamma_M(f.M, g):
        raise NotInGroupError(f"{g} is not in Gamma_M for M={f.M}")
    mp = ctx.mp
    z = _check_upper(z, mp)
    weight = 0 if f.is_even() else 1
    k = mp.mpf(1) / 2 if weight == 0 else mp.mpf(3) / 2
    base = _series(f, z, ctx, weight)
    if g == MoebiusMap(1, 0, 0, 1):
        return base, base
    lhs = _modular(f, z, ctx, weight, G=g)
    rhs = multiplier_chi(f.M, f.k0, g, mp) * principal_power(g.c * z + g.d, k, mp) * base
    return lhs, rhs


def transform_residual_theta(f: PeriodicCoeffs, g: MoebiusMap, z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """``theta_f(g z) - chi(g) (cz+d)^{1/2} theta_f(z)`` for even ``f``."""
    if not f.is_even():
        raise ParityError("theta_f transforms for even f")
    lhs, rhs = transform_sides(f, g, z, ctx)
    return lhs - rhs


def transform_residual_Theta(f: PeriodicCoeffs, g: MoebiusMap, z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """``Theta_f(g z) - chi(g) (cz+d)^{3/2} Theta_f(z)`` for odd ``f``."""
    if f.is_even():
        raise ParityError("Theta_f transforms for odd f")
    lhs, rhs = transform_sides(f, g, z, ctx)
    return lhs - rhs


# ---------------------------------------------------------------------------
# decay at rationals


@dataclass
class DecayResult:
    dual: object
    direct: object
    difference: object
    normalized: object = None
    c_f: object = None


def decay_at_rational(f: PeriodicCoeffs, alpha, y, ctx: PrecisionContext = DEFAULT_CONTEXT) -> DecayResult:
    """Compare the dual (Poisson) sum for ``theta_f(alpha + i y)`` with the series.

    The dual sum is
    ``(M (y - i alpha))^{-1/2} sum' f(k) sum_{n != 0} exp(-pi n^2/(M(y - i alpha)) + 2 pi i n k / M)``.
    At ``alpha = 0`` the normalized value ``theta_f(iy) sqrt(My) exp(pi/(My))``
    is also returned together with ``c_f``.

    The series value has size about ``exp(-pi Re(1/u))`` with ``u = M(y - i alpha)``
    while its terms are of size one, so it is summed with that many extra
    digits to keep its relative accuracy.
    """
    if not f.is_even():
        raise ParityError("decay formula needs even f")
    if primed_sum(f):
        raise CoefficientError("decay formula needs sum' f(k) = 0")
    alpha = RationalCusp.of(alpha)
    if alpha.is_infinity or in_B_M(f.M, alpha):
        raise ValueError(f"{alpha} is Gamma_M-equivalent to infinity")
    mp = ctx.mp
    M = f.M
    a = mp.mpf(alpha.p) / alpha.q
    y_in = y
    y = as_mpf(y, mp)
    u = M * (y - 1j * a)
    inv = 1 / u
    rate = mp.pi * inv.real
    need = (ctx.target_digits + 5) * mp.log(10)
    K = int(mp.sqrt(need / rate)) + 2
    dual = mp.mpc(0)
    for k in f.M_f:
        w = mp.mpf(1) / 2 if 2 * k == M else 1
        s = mp.mpc(0)
        for n in range(1, K + 1):
            g = mp.exp(-mp.pi * n * n * inv)
            s += g * 2 * mp.cospi(mp.mpf(2 * n * k) / M)
        dual += w * f.value_mp(k, mp) * s
    dual /= mp.sqrt(u)
    lost = int(mp.ceil(rate / mp.log(10))) + 5
    hi = replace(ctx, digits=ctx.digits + lost, quad_target=None)
    hmp = hi.mp
    z = hmp.mpf(alpha.p) / alpha.q + 1j * as_mpf(y_in, hmp)
    direct = mp.mpc(theta_f(f, z, hi, method="series"))
    res = DecayResult(dual=dual, direct=direct, difference=dual - direct)
    if alpha.p == 0:
        res.normalized = direct * mp.sqrt(M * y) * mp.exp(mp.pi / (M * y))
        res.c_f = c_f_constant(f, mp)
    return res
