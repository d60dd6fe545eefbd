"""Periodic L-values at nonpositive integers and radial limits at rationals.

For a mean-zero function ``C`` of period ``P``,

    L(-n, C) = -P**n / (n + 1) * sum_{a=1}^{P} C(a) B_{n+1}(a / P),

computed exactly in a cyclotomic field.  Radial limits of ``theta_f`` and
``Theta_f`` at ``alpha = p/q`` are such L-values for
``C_alpha(n) = f(n) exp(pi i p n^2 / (M q))``.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cyclotomic import Cyclo, lcm
from .modgroup import RationalCusp
from .numerics import DEFAULT_CONTEXT, AsymptoticSeries, PrecisionContext, bernoulli_number
from .periodic import ParityError, PeriodicCoeffs, PeriodicFunction

__all__ = [
    "AsymptoticSeries",
    "DivergentCuspError",
    "MeanValueError",
    "l_at_negative_int",
    "build_C",
    "theta_expansion",
    "hat_expansion",
    "radial_value",
    "radial_value_exact",
]


class MeanValueError(ValueError):
    """The periodic function does not have mean value zero."""


class DivergentCuspError(MeanValueError):
    """The radial limit at this cusp diverges."""


def l_at_negative_int(C: PeriodicFunction, n: int) -> Cyclo:
    """Exact ``L(-n, C)`` for a mean-zero periodic ``C``.

    Parameters
    ----------
    C : PeriodicFunction
    n : int
        Nonnegative integer.

    Returns
    -------
    Cyclo
        Use ``.rational_value()`` or ``.to_complex(mp)`` to read it out.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not C.has_mean_zero:
        raise MeanValueError("L(-n, C) needs C of mean value zero")
    P = C.P
    # P^{n+1} B_{n+1}(a/P) = sum_k binom(n+1, k) B_{n+1-k} a^k P^{n+1-k}
    m = n + 1
    bk = [math.comb(m, k) * bernoulli_number(m - k) * Fraction(P) ** (m - k) for k in range(m + 1)]
    D = math.lcm(*(b.denominator for b in bk))
    ik = [int(b * D) for b in bk]

    def weight(a):
        return sum(c * a**k for k, c in enumerate(ik) if c)

    total = C.weighted_sum(weight)
    return total * Fraction(-(P**n), (n + 1) * D * P**m)


def _period_and_order(f: PeriodicCoeffs, alpha: RationalCusp):
    p, q = alpha.p, alpha.q
    P = f.M * q if p % 2 == 0 else 2 * f.M * q
    L = 2 * f.M * q
    if not f.is_real():
        L = lcm(L, 4)
    return P, L


def build_C(f: PeriodicCoeffs, alpha) -> PeriodicFunction:
    """``C_alpha(n) = f(n) exp(pi i p n^2 / (M q))`` as a periodic function.

    The period is ``M q`` for even ``p`` (including ``alpha = 0``) and
    ``2 M q`` for odd ``p``.
    """
    alpha = RationalCusp.of(alpha)
    if alpha.is_infinity:
        raise ValueError("alpha must be a finite rational")
    p, q = alpha.p, alpha.q
    P, L = _period_and_order(f, alpha)
    # exp(pi i p n^2/(Mq)) = zeta_L^{p n^2 s},  i = zeta_L^{L/4}
    s = L // (2 * f.M * q)
    terms = []
    for n in range(P):
        fv = f(n)
        if not fv:
            terms.append(())
            continue
        e = (p * n * n * s) % L
        t = []
        if fv.re:
            t.append((e, fv.re))
        if fv.im:
            t.append(((e + L // 4) % L, fv.im))
        terms.append(tuple(t))
    return PeriodicFunction(P, L, tuple(terms))


def _expansion(f: PeriodicCoeffs, alpha, R: int, ctx: PrecisionContext, sign: int) -> AsymptoticSeries:
    if f.is_even():
        raise ParityError("expansion is stated for odd f")
    if R < 0:
        raise ValueError("R must be nonnegative")
    alpha = RationalCusp.of(alpha)
    C = build_C(f, alpha)
    mp = ctx.mp
    exact = []
    coeffs = []
    for r in range(R + 1):
        w = Fraction(sign, 2 * f.M) ** r / math.factorial(r)
        val = l_at_negative_int(C, 2 * r) * w
        exact.append(val)
        coeffs.append(val.to_complex(mp))
    return AsymptoticSeries(coeffs=coeffs, residual=0, base=alpha, scale="t", exact=tuple(exact))


def theta_expansion(f: PeriodicCoeffs, alpha, R: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> AsymptoticSeries:
    """Coefficients of ``theta_f(p/q + i t / 2 pi) ~ sum c_r t^r``.

    ``c_r = L(-2r, C_alpha) (-1/2M)^r / r!``.
    """
    return _expansion(f, alpha, R, ctx, -1)


def hat_expansion(f: PeriodicCoeffs, alpha, R: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> AsymptoticSeries:
    """Coefficients of the non-holomorphic companion at ``p/q - i t / 2 pi``.

    ``c_r = L(-2r, C_alpha) (1/2M)^r / r!``.
    """
    return _expansion(f, alpha, R, ctx, +1)


def radial_value_exact(f: PeriodicCoeffs, weight, alpha) -> Cyclo:
    """Exact radial limit at ``alpha``.

    Weight 1/2 (odd ``f``) gives ``L(0, C_alpha)``, the limit of
    ``theta_f(alpha + i t / 2 pi)``.  Weight 3/2 (even ``f``) gives
    ``L(-1, C_alpha)``, the limit of ``Theta_f(alpha + i t / 2 pi)``; it exists
    only when ``C_alpha`` has mean zero.
    """
    weight = Fraction(weight)
    alpha = RationalCusp.of(alpha)
    if alpha.is_infinity:
        raise ValueError("radial limits are taken at finite rationals")
    if weight == Fraction(1, 2):
        if f.is_even():
            raise ParityError("weight 1/2 radial value needs odd f")
        return l_at_negative_int(build_C(f, alpha), 0)
    if weight == Fraction(3, 2):
        if not f.is_even():
            raise ParityError("weight 3/2 radial value needs even f")
        C = build_C(f, alpha)
        if not C.has_mean_zero:
            raise DivergentCuspError(
                f"Theta_f diverges at {alpha}: coefficient mean is {C.mean_value}"
            )
        return l_at_negative_int(C, 1)
    raise ValueError("weight must be 1/2 or 3/2")


def radial_value(f: PeriodicCoeffs, weight, alpha, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Radial limit at ``alpha`` as an mp number; see :func:`radial_value_exact`."""
    return radial_value_exact(f, weight, alpha).to_complex(ctx.mp)
