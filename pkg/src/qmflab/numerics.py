"""Precision-parameterized scalar kernels.

Every routine takes a :class:`PrecisionContext`.  Each context owns a private
``mpmath.MPContext``, so no routine here touches mpmath's global ``mp`` object
and computations at different precisions can run side by side in threads.
"""

from __future__ import annotations

import ast
import math
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence

import mpmath

__all__ = [
    "PrecisionContext",
    "DEFAULT_CONTEXT",
    "AsymptoticSeries",
    "QuadratureError",
    "IllConditionedFit",
    "incomplete_gamma_upper",
    "bernoulli_number",
    "bernoulli_poly",
    "quad_vertical_to_infinity",
    "fit_power_series",
    "truncation_bound",
    "principal_power",
    "parse_number",
    "as_mpf",
]

BERNOULLI_CAP = 64


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision and error goals for one computation.

    Parameters
    ----------
    digits : int
        Working precision in decimal digits.
    quad_target : float, optional
        Absolute error goal for quadrature.  Defaults to ``10**-(digits - 10)``.
    trunc_margin : int
        Extra decimal digits of headroom used when truncating series.
    guard : int
        Guard digits added to the internal mpmath precision.
    """

    digits: int = 50
    quad_target: float | None = None
    trunc_margin: int = 10
    guard: int = 10

    def __post_init__(self):
        if self.digits < 15:
            raise ValueError("digits must be >= 15")
        if self.trunc_margin < 0:
            raise ValueError("trunc_margin must be >= 0")
        if self.quad_target is None:
            object.__setattr__(self, "quad_target", 10.0 ** -(self.digits - 10))
        if not self.quad_target > 0:
            raise ValueError("quad_target must be positive")

    @cached_property
    def mp(self) -> mpmath.ctx_mp.MPContext:
        ctx = mpmath.MPContext()
        ctx.dps = self.digits + self.guard
        return ctx

    @property
    def target_digits(self) -> int:
        return self.digits + self.trunc_margin

    def eps(self):
        """Target precision ``10**-digits`` as an mpf."""
        return self.mp.mpf(10) ** (-self.digits)

    def with_digits(self, digits: int) -> "PrecisionContext":
        return PrecisionContext(digits=digits, trunc_margin=self.trunc_margin, guard=self.guard)


DEFAULT_CONTEXT = PrecisionContext()


class QuadratureError(ArithmeticError):
    """Raised when the trapezoid refinement fails to converge."""

    def __init__(self, message, estimates=()):
        super().__init__(message)
        self.estimates = tuple(estimates)


class IllConditionedFit(ArithmeticError):
    """Raised when a least-squares power-series fit is numerically unreliable."""


def principal_power(w, k, mp):
    """``w**k`` with ``arg w`` in ``(-pi, pi]``."""
    w = mp.mpc(w)
    if w == 0:
        raise ZeroDivisionError("zero base")
    return mp.exp(k * (mp.log(abs(w)) + 1j * mp.arg(w)))


# ---------------------------------------------------------------------------
# incomplete gamma


def incomplete_gamma_upper(a, x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Upper incomplete gamma ``Gamma(a, x)`` for ``a`` in ``{1/2, -1/2}``.

    ``Gamma(1/2, x) = sqrt(pi) * erfc(sqrt(x))`` and the ``a = -1/2`` case uses
    ``Gamma(-1/2, x) = 2 * (x**-1/2 * exp(-x) - Gamma(1/2, x))``.
    """
    a = Fraction(a)
    if a not in (Fraction(1, 2), Fraction(-1, 2)):
        raise ValueError("only a = 1/2 and a = -1/2 are supported")
    mp = ctx.mp
    x = mp.mpf(x)
    if x < 0:
        raise ValueError("x must be nonnegative")
    half = mp.sqrt(mp.pi) * mp.erfc(mp.sqrt(x))
    if a > 0:
        return half
    if x == 0:
        raise ValueError("Gamma(-1/2, 0) diverges")
    return 2 * (mp.exp(-x) / mp.sqrt(x) - half)


# ---------------------------------------------------------------------------
# Bernoulli numbers and polynomials (exact)

_bernoulli_lock = threading.Lock()
_bernoulli_table: list[Fraction] = [Fraction(1)]


def bernoulli_number(n: int) -> Fraction:
    """``B_n`` with the convention ``B_1 = -1/2``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > BERNOULLI_CAP + 1:
        raise ValueError(f"Bernoulli index {n} exceeds cap {BERNOULLI_CAP + 1}")
    with _bernoulli_lock:
        table = _bernoulli_table
        for m in range(len(table), n + 1):
            # sum_{k=0}^{m} C(m+1, k) B_k = 0
            s = sum(math.comb(m + 1, k) * table[k] for k in range(m))
            table.append(-s / (m + 1))
        return table[n]


def bernoulli_poly(n: int, x, cap: int = BERNOULLI_CAP) -> Fraction:
    """Exact Bernoulli polynomial ``B_n(x)`` at a rational ``x``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > cap:
        raise ValueError(f"degree {n} exceeds cap {cap}")
    x = Fraction(x)
    total = Fraction(0)
    xp = Fraction(1)
    # B_n(x) = sum_k C(n, k) B_{n-k} x^k
    for k in range(n + 1):
        total += math.comb(n, k) * bernoulli_number(n - k) * xp
        xp *= x
    return total


# ---------------------------------------------------------------------------
# quadrature


def quad_vertical_to_infinity(
    integrand: Callable,
    decay_rate,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
    *,
    max_level: int = 9,
    h0: float = 0.25,
):
    """Integrate ``integrand(y)`` over ``(0, oo)`` with the exp-sinh transform.

    The substitution ``y = exp(pi/2 * sinh t)`` gives double-exponential decay
    in ``t`` for integrands that are exponentially small at both ends.  The
    trapezoid step is halved until two successive levels agree to within
    ``ctx.quad_target``.

    Parameters
    ----------
    integrand : callable
        Maps an mpf ``y > 0`` to a (complex) mp number.
    decay_rate : float
        A rate ``a`` with ``|integrand(y)| <~ exp(-a y)`` for large ``y``; sets
        the minimal upper extent of the node range.
    """
    mp = ctx.mp
    target = mp.mpf(ctx.quad_target)
    negligible = target * mp.mpf(10) ** -6
    half_pi = mp.pi / 2

    cache: dict[Fraction, object] = {}

    def term(t: Fraction):
        v = cache.get(t)
        if v is None:
            tt = mp.mpf(t.numerator) / t.denominator
            u = half_pi * mp.sinh(tt)
            y = mp.exp(u)
            if y == 0 or not mp.isfinite(y):
                v = mp.mpc(0)
            else:
                v = mp.mpc(integrand(y)) * y * half_pi * mp.cosh(tt)
            cache[t] = v
        return v

    step = Fraction(h0)
    # upper extent required by the stated decay
    y_hi = (mp.log(1 / negligible) + 10) / mp.mpf(decay_rate)
    t_hi_min = Fraction(math.ceil(float(mp.asinh(mp.log(max(y_hi, mp.e)) / half_pi)) / h0)) * step
    limit = Fraction(9)

    def extent(direction: int, minimum: Fraction) -> Fraction:
        t = Fraction(0)
        quiet = 0
        while abs(t) < limit:
            t += direction * step
            if abs(term(t)) < negligible:
                quiet += 1
            else:
                quiet = 0
            if quiet >= 4 and abs(t) >= minimum:
                return t
        return t

    t_lo = extent(-1, Fraction(1))
    t_hi = extent(+1, t_hi_min)

    def level_sum(h: Fraction, offset: Fraction):
        s = mp.mpc(0)
        j0 = math.ceil((t_lo - offset) / h)
        j1 = math.floor((t_hi - offset) / h)
        for j in range(j0, j1 + 1):
            s += term(offset + j * h)
        return s

    total = level_sum(step, Fraction(0))
    estimate = total * (mp.mpf(step.numerator) / step.denominator)
    history = [estimate]
    h = step
    for _ in range(max_level):
        total += level_sum(h, h / 2)
        h = h / 2
        new = total * (mp.mpf(h.numerator) / h.denominator)
        history.append(new)
        if len(history) >= 3 and abs(new - history[-2]) <= target:
            return new
    raise QuadratureError(
        "exp-sinh quadrature did not converge", estimates=history[-2:]
    )


# ---------------------------------------------------------------------------
# power-series fitting


@dataclass
class AsymptoticSeries:
    """Coefficients ``c_0..c_R`` of an expansion in ``t``.

    ``base`` is the rational point the expansion is taken at (``None`` for a
    plain fit), ``residual`` is a fit or truncation error estimate.
    """

    coeffs: list
    residual: object = 0
    base: object = None
    scale: str = "t"
    grid: tuple = ()
    fit_degree: int | None = None
    condition: object = None
    exact: tuple | None = None

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


def fit_power_series(
    samples: Sequence,
    R: int,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
    *,
    extra_terms: int | None = None,
    max_condition=None,
) -> AsymptoticSeries:
    """Least-squares fit of ``h(t) ~ sum_r c_r t**r`` from ``(t_k, h(t_k))``.

    The fit uses ``R + extra_terms`` monomials so that the reported
    ``c_0..c_R`` are not biased by the neglected higher-order terms; the
    default uses all but two of the spare degrees of freedom (at most 8).
    Columns are scaled by the largest ``t``.
    """
    mp = ctx.mp
    pts = [(mp.mpf(t), mp.mpc(h)) for t, h in samples]
    if len(pts) < 2 * (R + 1):
        raise ValueError("need at least 2(R+1) samples")
    if extra_terms is None:
        extra_terms = max(0, min(8, len(pts) - (R + 1) - 2))
    degree = R + extra_terms
    tmax = max(t for t, _ in pts)
    A = mp.matrix(len(pts), degree + 1)
    for i, (t, _) in enumerate(pts):
        s = t / tmax
        p = mp.mpf(1)
        for j in range(degree + 1):
            A[i, j] = p
            p *= s
    sv = mp.svd_r(A, compute_uv=False)
    smin = min(abs(s) for s in sv)
    cond = mp.inf if smin == 0 else max(abs(s) for s in sv) / smin
    if max_condition is None:
        max_condition = mp.mpf(10) ** (ctx.digits - 10)
    if cond > max_condition:
        raise IllConditionedFit(f"condition estimate {mp.nstr(cond, 5)} too large")
    # real and imaginary parts solved separately (qr_solve is real-only)
    re = mp.matrix([h.real for _, h in pts])
    im = mp.matrix([h.imag for _, h in pts])
    xr, rr = mp.qr_solve(A, re)
    xi, ri = mp.qr_solve(A, im)
    coeffs = []
    for j in range(R + 1):
        coeffs.append(mp.mpc(xr[j], xi[j]) / tmax**j)
    return AsymptoticSeries(
        coeffs=coeffs,
        residual=mp.sqrt(rr**2 + ri**2),
        grid=tuple(t for t, _ in pts),
        fit_degree=degree,
        condition=cond,
    )


def truncation_bound(y, M: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> int:
    """Smallest ``N`` with ``pi*y*N**2/M > (digits + margin)*ln 10``."""
    mp = ctx.mp
    y = mp.mpf(y)
    if y <= 0:
        raise ValueError("y must be positive")
    rhs = ctx.target_digits * mp.log(10)
    n = int(mp.floor(mp.sqrt(rhs * M / (mp.pi * y))))
    n = max(n - 1, 1)
    while not (mp.pi * y * n * n / M > rhs):
        n += 1
    return n


_IMAG_RE = re.compile(r"(?<=[\d.)])\s*i\b")


def parse_number(text: str, mp=mpmath.mp):
    """Parse ``"0.3+0.5i"``, ``"i/2"``, ``"1/10-1/2i"`` and the like exactly.

    Accepts numeric literals, ``i`` (or ``j``), ``+ - * /`` and parentheses.
    Decimal literals go to mpmath as text, so nothing passes through a float.
    """
    src = _IMAG_RE.sub("*i", text.strip().replace("j", "i"))
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError:
        raise ValueError(f"cannot parse number {text!r}") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return mp.mpf(ast.get_source_segment(src, node))
        if isinstance(node, ast.Name) and node.id == "i":
            return mp.mpc(0, 1)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Add, ast.Sub, ast.Mult, ast.Div)):
            x, y = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return x + y
            if isinstance(node.op, ast.Sub):
                return x - y
            if isinstance(node.op, ast.Mult):
                return x * y
            return x / y
        raise ValueError(f"cannot parse number {text!r}")

    return ev(tree)


def as_mpf(x, mp):
    """``mp.mpf(x)`` that also takes a ``Fraction`` exactly."""
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)
