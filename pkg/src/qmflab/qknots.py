"""Finite q-hypergeometric sums at roots of unity and their strange identities.

The sums here (``F``, the torus knot series ``F_t``, Hikami's ``X_m^(l)``
and the colored Jones expressions) terminate at a root of unity because of a
``(q)_n`` factor.  Each is evaluated in one of two backends:

* exact: the group ring ``Z[x]/(x^N - 1)`` with ``q = x^p`` for
  ``zeta = exp(2 pi i p/N)``, reduced to ``Q(zeta_N)`` at the end;
* numeric: mpmath complex arithmetic.

Gaussian binomials are built from the integer Pascal recurrence and only then
evaluated, so no ratio of vanishing Pochhammer symbols is ever formed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import Cyclo
from .lvalues import DivergentCuspError, radial_value_exact
from .modgroup import RationalCusp, in_A_M
from .numerics import DEFAULT_CONTEXT, PrecisionContext
from .periodic import PeriodicCoeffs, char_chi12, char_chi_t, char_hikami, char_psi
from .records import VerificationRecord, timer

__all__ = [
    "RootOfUnity",
    "TorusKnotParams",
    "EXACT_MAX_ORDER",
    "pochhammer",
    "gauss_binomial",
    "gauss_binomial_poly",
    "kz_F",
    "jones_t32",
    "kz_Ft",
    "exponent_integrality",
    "jones_t32t",
    "hikami_X",
    "UnimodalResult",
    "unimodal_closed",
    "unimodal_coefficients",
    "StrangeSide",
    "parse_side",
    "strange_exact",
    "strange_check",
    "as_mp",
]

EXACT_MAX_ORDER = 60


@dataclass(frozen=True)
class RootOfUnity:
    """``zeta = exp(2 pi i alpha)`` for rational ``alpha`` in ``[0, 1)``.

    Rational powers are defined by ``zeta**r = exp(2 pi i alpha r)``.
    """

    alpha: Fraction

    def __post_init__(self):
        a = Fraction(self.alpha) % 1
        object.__setattr__(self, "alpha", a)

    @classmethod
    def of(cls, x) -> "RootOfUnity":
        if isinstance(x, RootOfUnity):
            return x
        if isinstance(x, RationalCusp):
            return cls(x.as_fraction())
        return cls(Fraction(x))

    @classmethod
    def primitive(cls, N: int) -> "RootOfUnity":
        """``zeta_N = exp(2 pi i / N)``."""
        if N < 1:
            raise ValueError("order must be positive")
        return cls(Fraction(1, N))

    @property
    def order(self) -> int:
        return self.alpha.denominator

    N = order

    @property
    def p(self) -> int:
        return self.alpha.numerator

    def power_exact(self, k: int) -> Cyclo:
        return Cyclo.root(self.order, self.p * k)

    def power(self, r, mp):
        return mp.expjpi(2 * _mpq(self.alpha * Fraction(r), mp))

    def to_mp(self, mp):
        return self.power(1, mp)


def _mpq(x: Fraction, mp):
    return mp.mpf(x.numerator) / x.denominator


@dataclass(frozen=True)
class TorusKnotParams:
    """Constants attached to the torus knot ``T(3, 2^t)``."""

    t: int

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("t must be a positive integer")
        if self.t >= 2 and (3 * self.a - 1) % self.m:
            raise AssertionError("3 a(t) = 1 mod m(t) fails")

    @property
    def m(self) -> int:
        return 2 ** (self.t - 1)

    @property
    def h_double_prime(self) -> int:
        t = self.t
        return (2**t - 1) // 3 if t % 2 == 0 else (2**t - 2) // 3

    @property
    def h_prime(self) -> int:
        t = self.t
        return (2**t - 4) // 3 if t % 2 == 0 else (2**t - 5) // 3

    @property
    def a(self) -> int:
        t = self.t
        return (2 ** (t - 1) + 1) // 3 if t % 2 == 0 else (2**t + 1) // 3

    @property
    def s(self) -> Fraction:
        return Fraction((2 ** (self.t + 1) - 3) ** 2, 3 * 2 ** (self.t + 2))


# ---------------------------------------------------------------------------
# arithmetic backends


class _Exact:
    """``Z[x]/(x^N - 1)`` with ``q = x^p``."""

    def __init__(self, zeta: RootOfUnity):
        self.N = zeta.order
        self.p = zeta.p

    def zero(self):
        return [0] * self.N

    def one(self):
        return self.mono(0)

    def mono(self, k: int, c: int = 1):
        v = [0] * self.N
        v[(self.p * k) % self.N] = c
        return v

    def add(self, a, b):
        return [x + y for x, y in zip(a, b)]

    def scale(self, a, c: int):
        return [c * x for x in a]

    def shift(self, a, k: int):
        # multiply by q^k
        s = (self.p * k) % self.N
        return a[-s:] + a[:-s] if s else list(a)

    def mul(self, a, b):
        N = self.N
        out = [0] * N
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[(i + j) % N] += x * y
        return out

    def poly(self, coeffs):
        N, p = self.N, self.p
        v = [0] * N
        for i, c in enumerate(coeffs):
            if c:
                v[(p * i) % N] += c
        return v

    def is_zero(self, a) -> bool:
        return not any(a)

    def finish(self, a) -> Cyclo:
        return Cyclo(self.N, a)


class _Numeric:
    def __init__(self, zeta: RootOfUnity, mp):
        self.mp = mp
        self.alpha = zeta.alpha
        self.N = zeta.order

    def zero(self):
        return self.mp.mpc(0)

    def one(self):
        return self.mp.mpc(1)

    def mono(self, k: int, c: int = 1):
        # reduce the angle exactly before going to floating point
        ang = (2 * self.alpha * k) % 2
        return c * self.mp.expjpi(_mpq(ang, self.mp))

    def add(self, a, b):
        return a + b

    def scale(self, a, c: int):
        return c * a

    def shift(self, a, k: int):
        return a * self.mono(k)

    def mul(self, a, b):
        return a * b

    def poly(self, coeffs):
        q = self.mono(1)
        acc = self.mp.mpc(0)
        for c in reversed(coeffs):
            acc = acc * q + c
        return acc

    def is_zero(self, a) -> bool:
        return a == 0

    def finish(self, a):
        return a


def _ring(zeta: RootOfUnity, backend: str, ctx: PrecisionContext):
    if backend == "auto":
        backend = "exact" if zeta.order <= EXACT_MAX_ORDER else "numeric"
    if backend == "exact":
        return _Exact(zeta)
    if backend == "numeric":
        return _Numeric(zeta, ctx.mp)
    raise ValueError(f"unknown backend {backend!r}")


def as_mp(value, ctx: PrecisionContext = DEFAULT_CONTEXT):
    """Convert a backend result (``Cyclo`` or mp number) to an mp complex."""
    if isinstance(value, Cyclo):
        return value.to_complex(ctx.mp)
    return ctx.mp.mpc(value)


# ---------------------------------------------------------------------------
# q-Pochhammer and Gaussian binomials


@lru_cache(maxsize=None)
def gauss_binomial_poly(n: int, k: int) -> tuple[int, ...]:
    """Integer coefficients of the Gaussian binomial ``[n, k]_q``.

    Uses ``[n, k] = [n-1, k-1] + q^k [n-1, k]``.  ``k > n`` gives ``()``.
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k > n:
        return ()
    if k == 0 or k == n:
        return (1,)
    left = gauss_binomial_poly(n - 1, k - 1)
    right = gauss_binomial_poly(n - 1, k)
    out = [0] * (k * (n - k) + 1)
    for i, c in enumerate(left):
        out[i] += c
    for i, c in enumerate(right):
        out[i + k] += c
    return tuple(out)


def _eval_poly_number(coeffs, q):
    acc = 0 * q
    for c in reversed(coeffs):
        acc = acc * q + c
    return acc


def pochhammer(q, n: int, ctx: PrecisionContext = DEFAULT_CONTEXT, backend: str = "auto"):
    """``(q; q)_n = prod_{k=1}^n (1 - q^k)`` by direct product.

    ``q`` may be a :class:`RootOfUnity` (result in the chosen backend) or a
    number (result in the same number type).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if isinstance(q, RootOfUnity):
        R = _ring(q, backend, ctx)
        acc = R.one()
        for k in range(1, n + 1):
            acc = R.mul(acc, R.add(R.one(), R.mono(k, -1)))
        return R.finish(acc)
    acc = q**0
    qk = q**0
    for _ in range(n):
        qk = qk * q
        acc = acc * (1 - qk)
    return acc


def gauss_binomial(n: int, k: int, q, ctx: PrecisionContext = DEFAULT_CONTEXT, backend: str = "auto"):
    """Gaussian binomial ``[n, k]`` evaluated at ``q``; zero when ``k > n``."""
    coeffs = gauss_binomial_poly(n, k)
    if isinstance(q, RootOfUnity):
        R = _ring(q, backend, ctx)
        return R.finish(R.poly(coeffs))
    return _eval_poly_number(coeffs, q) if coeffs else 0 * q


# ---------------------------------------------------------------------------
# the sums


def _check_order(zeta: RootOfUnity, N: int | None):
    if N is not None and zeta.order != N:
        raise ValueError(f"zeta has order {zeta.order}, expected {N}")


def kz_F(zeta, ctx: PrecisionContext = DEFAULT_CONTEXT, backend: str = "auto", extra_terms: int = 0):
    """``F(zeta) = sum_{n>=0} (zeta)_n``, which stops at ``n = N - 1``.

    ``extra_terms`` runs the sum further; the added terms vanish exactly.
    """
    zeta = RootOfUnity.of(zeta)
    R = _ring(zeta, backend, ctx)
    total = R.zero()
    poch = R.one()
    for n in range(zeta.order + extra_terms):
        total = R.add(total, poch)
        poch = R.mul(poch, R.add(R.one(), R.mono(n + 1, -1)))
    return R.finish(total)


def jones_t32(N: int, zeta=None, ctx: PrecisionContext = DEFAULT_CONTEXT, backend: str = "auto", extra_terms: int = 0):
    """Colored Jones polynomial of the trefoil ``T(3,2)`` at a root of unity of order ``N``.

    Evaluates ``q^{1-N} sum_n q^{-nN} (q^{1-N})_n`` literally in the backend.
    """
    zeta = RootOfUnity.primitive(N) if zeta is None else RootOfUnity.of(zeta)
    _check_order(zeta, N)
    R = _ring(zeta, backend, ctx)
    total = R.zero()
    poch = R.one()  # (q^{1-N})_n
    for n in range(N + extra_terms):
        total = R.add(total, R.shift(poch, -n * N))
        poch = R.mul(poch, R.add(R.one(), R.mono(1 - N + n, -1)))
    return R.finish(R.shift(total, 1 - N))


def _j_tuples(m: int, a: int, bound: int):
    """Tuples ``(j_1..j_{m-1})`` in ``[0, bound]`` with ``3 sum l j_l = 1 mod m``.

    Since ``3 a = 1 mod m`` and ``m`` is a power of two this is
    ``sum l j_l = a mod m``; the last index is solved for, not scanned.
    """
    if m == 1:
        yield ()
        return
    last = m - 1
    inv = pow(last, -1, m)
    for head in itertools.product(range(bound + 1), repeat=m - 2):
        S = sum(l * j for l, j in enumerate(head, 1))
        r = ((a - S) * inv) % m
        for jl in range(r, bound + 1, m):
            yield head + (jl,)


def _torus_inner(R, P: TorusKnotParams, n: int, N: int | None, j_slack: int, binom_cache: dict):
    """``sum_j (-q^{-N})^{sum j} q^{e(j)} sum_k q^{-kN} prod [n+I(l<=k), j_l]``.

    With ``N=None`` the ``q^{-N}`` factors are dropped (the series ``F_t``).
    """
    m, a = P.m, P.a

    def binom(top, j):
        key = (top, j)
        if key not in binom_cache:
            binom_cache[key] = R.poly(gauss_binomial_poly(top, j)) if j <= top else None
        return binom_cache[key]

    inner = R.zero()
    for js in _j_tuples(m, a, n + 1 + j_slack):
        S = sum(l * j for l, j in enumerate(js, 1))
        if (3 * S - 1) % m:
            raise AssertionError("enumerated tuple violates the congruence")
        num = S - a
        if num % m:
            raise ArithmeticError(f"non-integral exponent ({num})/{m} for j={js}")
        e = num // m + sum(j * (j - 1) // 2 for j in js)
        # [n+1, j_l] for l <= k and [n, j_l] for l > k: prefix times suffix
        lo = [binom(n, j) for j in js]
        hi = [binom(n + 1, j) for j in js]
        suffix = [R.one()]
        for b in reversed(lo):
            suffix.append(None if b is None or suffix[-1] is None else R.mul(b, suffix[-1]))
        suffix.reverse()  # suffix[k] = prod_{l > k} [n, j_l]
        ksum = R.zero()
        prefix = R.one()
        for k in range(m):
            if k:
                b = hi[k - 1]
                prefix = None if b is None or prefix is None else R.mul(prefix, b)
            if prefix is None:
                break
            if suffix[k] is None:
                continue
            prod = R.mul(prefix, suffix[k])
            if N is not None:
                prod = R.shift(prod, -k * N)
            ksum = R.add(ksum, prod)
        if R.is_zero(ksum):
            continue
        sj = sum(js)
        term = R.scale(R.shift(ksum, e), -1 if sj % 2 else 1)
        if N is not None:
            term = R.shift(term, -N * sj)
        inner = R.add(inner, term)
    return inner


def exponent_integrality(t: int, N: int) -> int:
    """Certify that ``(-a + sum l j_l)/m`` is an integer on every term at order ``N``.

    Tracks the reachable residues of ``sum l j_l`` mod ``m`` over all tuples
    with ``0 <= j_l <= n + 1`` and ``n < N``, then checks every residue that
    meets the congruence.  Returns the number of tuples meeting it.
    """
    P = TorusKnotParams(t)
    m, a = P.m, P.a
    count = 0
    for n in range(N):
        ways = [0] * m
        ways[0] = 1
        for l in range(1, m):
            nxt = [0] * m
            for r, w in enumerate(ways):
                if w:
                    for j in range(n + 2):
                        nxt[(r + l * j) % m] += w
            ways = nxt
        for r, w in enumerate(ways):
            if w and (3 * r - 1) % m == 0:
                if (r - a) % m:
                    raise ArithmeticError(f"non-integral exponent for residue {r} at n={n}")
                count += w
    return count


def kz_Ft(t: int, zeta, ctx: PrecisionContext = DEFAULT_CONTEXT, backend: str = "auto", extra_terms: int = 0, j_slack: int = 0):
    """Kontsevich-Zagier type series for the torus knot ``T(3, 2^t)`` at ``zeta``.

    ``(-1)^{h''} q^{-h'} sum_n (q)_n sum_j (-1)^{sum j} q^{(-a + sum l j_l)/m + sum C(j_l, 2)}
    sum_k prod_l [n + I(l <= k), j_l]`` over ``3 sum l j_l = 1 (mod m)``.

    ``extra_terms`` and ``j_slack`` enlarge the ``n`` and ``j`` ranges past
    the point where every term vanishes.
    """
    if t < 2:
        raise ValueError("t must be at least 2; use kz_F for the trefoil")
    zeta = RootOfUnity.of(zeta)
    P = TorusKnotParams(t)
    R = _ring(zeta, backend, ctx)
    cache: dict = {}
    total = R.zero()
    poch = R.one()
    for n in range(zeta.order + extra_terms):
        if not R.is_zero(poch):
            total = R.add(total, R.mul(poch, _torus_inner(R, P, n, None, j_slack, cache)))
        poch = R.mul(poch, R.add(R.one(), R.mono(n + 1, -1)))
    sign = -1 if P.h_double_prime % 2 else 1
    return R.finish(R.scale(R.shift(total, -P.h_prime), sign))


def jones_t32t(t: int, N: int, zeta=None, ctx: PrecisionContext = DEFAULT_CONTEXT, backend: str = "auto"):
    """Colored Jones polynomial of ``T(3, 2^t)`` at a root of unity of order ``N``.

    The q-hypergeometric expression is evaluated as written, including every
    ``q^{-N}`` factor and ``(q^{1-N})_n``; the backend reduces them.
    """
    if t < 2:
        raise ValueError("t must be at least 2; use jones_t32 for the trefoil")
    zeta = RootOfUnity.primitive(N) if zeta is None else RootOfUnity.of(zeta)
    _check_order(zeta, N)
    P = TorusKnotParams(t)
    R = _ring(zeta, backend, ctx)
    cache: dict = {}
    total = R.zero()
    poch = R.one()  # (q^{1-N})_n
    for n in range(N):
        if not R.is_zero(poch):
            inner = _torus_inner(R, P, n, N, 0, cache)
            total = R.add(total, R.shift(R.mul(poch, inner), -N * n * P.m))
        poch = R.mul(poch, R.add(R.one(), R.mono(1 - N + n, -1)))
    sign = -1 if P.h_double_prime % 2 else 1
    return R.finish(R.scale(R.shift(total, 2**t - 1 - P.h_prime - N), sign))


def hikami_X(m: int, ell: int, zeta, ctx: PrecisionContext = DEFAULT_CONTEXT, backend: str = "auto", extra_terms: int = 0):
    """Hikami's series ``X_m^(l)`` for the torus knot ``T(2, 2m+1)`` at ``zeta``.

    ``sum (q)_{k_m} q^{k_1^2 + ... + k_{m-1}^2 + k_{l+1} + ... + k_{m-1}}
    prod_{i<m} [k_{i+1} + delta_{i,l}, k_i]``.
    """
    if m < 1 or not 0 <= ell <= m - 1:
        raise ValueError("need m >= 1 and 0 <= l <= m-1")
    zeta = RootOfUnity.of(zeta)
    R = _ring(zeta, backend, ctx)
    binoms: dict = {}

    def binom(top, j):
        if (top, j) not in binoms:
            binoms[(top, j)] = R.poly(gauss_binomial_poly(top, j))
        return binoms[(top, j)]

    def descend(i, k_next, acc, expo):
        # choose k_i given k_{i+1} = k_next
        if i == 0:
            return R.shift(acc, expo)
        top = k_next + (1 if i == ell else 0)
        out = R.zero()
        for k in range(top + 1):
            e = expo + k * k + (k if i >= ell + 1 else 0)
            out = R.add(out, descend(i - 1, k, R.mul(acc, binom(top, k)), e))
        return out

    total = R.zero()
    poch = R.one()
    for km in range(zeta.order + extra_terms):
        total = R.add(total, descend(m - 1, km, poch, 0))
        poch = R.mul(poch, R.add(R.one(), R.mono(km + 1, -1)))
    return R.finish(total)


# ---------------------------------------------------------------------------
# odd-balanced unimodal sequences


@dataclass
class UnimodalResult:
    """Both sides of ``q^{-7/4} V(-1, q^{-2}) = -1/2 Theta_psi``."""

    lhs: object
    rhs: object
    difference: object


def unimodal_closed(z, ctx: PrecisionContext = DEFAULT_CONTEXT) -> UnimodalResult:
    """Compare the closed form of ``q^{-7/4} V(-1, q^{-2})`` with ``-Theta_psi / 2``.

    The left side is ``q^{-7/4} * (-(q^2)/2) * sum (2n+1) q^{n(n+1)}`` with
    ``q^r = exp(2 pi i z r)``; the right side comes from the theta module.
    """
    from .theta import Theta_f

    mp = ctx.mp
    z = mp.mpc(z)
    if z.imag <= 0:
        raise ValueError("z must lie in the upper half plane")
    eps = mp.mpf(10) ** (-ctx.target_digits)
    s = mp.mpc(0)
    n = 0
    while True:
        term = (2 * n + 1) * mp.expjpi(2 * z * n * (n + 1))
        s += term
        if abs(term) < eps * max(1, abs(s)) and n > 2:
            break
        n += 1
    lhs = mp.expjpi(2 * z * mp.mpf(-7) / 4) * (-mp.expjpi(4 * z) / 2) * s
    rhs = -Theta_f(char_psi(), z, ctx) / 2
    return UnimodalResult(lhs=lhs, rhs=rhs, difference=abs(lhs - rhs))


def unimodal_coefficients(count: int = 20) -> list[tuple[Fraction, Fraction, Fraction]]:
    """First ``count`` exponents of both sides as ``(exponent, lhs, rhs)``.

    The left side is expanded from the closed form, the right side from
    ``-1/2 sum n psi(n) q^{n^2/4}``.
    """
    lhs: dict[Fraction, Fraction] = {}
    n = 0
    while len(lhs) < count:
        e = Fraction(-7, 4) + 2 + n * (n + 1)
        lhs[e] = lhs.get(e, Fraction(0)) + Fraction(-(2 * n + 1), 2)
        n += 1
    psi = char_psi()
    rhs: dict[Fraction, Fraction] = {}
    n = 0
    cut = max(lhs)
    while Fraction(n * n, 4) <= cut:
        c = psi(n).re * n
        if c:
            e = Fraction(n * n, 4)
            rhs[e] = rhs.get(e, Fraction(0)) - c / 2
        n += 1
    keys = sorted(set(lhs) | set(rhs))[:count]
    return [(e, lhs.get(e, Fraction(0)), rhs.get(e, Fraction(0))) for e in keys]


# ---------------------------------------------------------------------------
# strange identities at order 0


@dataclass(frozen=True)
class StrangeSide:
    """One q-hypergeometric side together with its theta character and phase."""

    name: str
    f: PeriodicCoeffs
    phase: Fraction  # LHS is exp(2 pi i phase alpha) * series(zeta)
    params: tuple = ()

    def series(self, zeta: RootOfUnity, ctx, backend="auto"):
        kind = self.name.split(":")[0]
        if kind == "F":
            return kz_F(zeta, ctx, backend)
        if kind == "Ft":
            return kz_Ft(self.params[0], zeta, ctx, backend)
        if kind == "X":
            return hikami_X(self.params[0], self.params[1], zeta, ctx, backend)
        raise ValueError(f"side {self.name} has no finite sum")


def parse_side(text: str) -> StrangeSide:
    """``F``, ``Ft:t``, ``X:m:l`` or ``V``."""
    parts = text.strip().split(":")
    try:
        if parts == ["F"]:
            return StrangeSide("F", char_chi12(), Fraction(1, 24))
        if parts[0] == "Ft" and len(parts) == 2:
            t = int(parts[1])
            return StrangeSide(text, char_chi_t(t), TorusKnotParams(t).s, (t,))
        if parts[0] == "X" and len(parts) == 3:
            m, ell = int(parts[1]), int(parts[2])
            return StrangeSide(text, char_hikami(m, ell), Fraction((2 * m - 2 * ell - 1) ** 2, 8 * (2 * m + 1)), (m, ell))
        if parts == ["V"]:
            return StrangeSide("V", char_psi(), Fraction(7, 4))
    except ValueError as exc:
        raise ValueError(f"bad side {text!r}: {exc}") from None
    raise ValueError(f"unknown side {text!r}; expected F, Ft:t, X:m:l or V")


def _check_cusp(side: StrangeSide, alpha: RationalCusp):
    """Return a note; raise when the radial value does not exist."""
    from .qmf import CuspSetError

    if in_A_M(side.f, alpha):
        return ""
    try:
        radial_value_exact(side.f, Fraction(3, 2), alpha)
    except DivergentCuspError as exc:
        raise CuspSetError(f"{alpha} is outside A_M and {exc}") from None
    return "alpha outside A_M; radial limit exists"


def strange_exact(side, alpha) -> tuple[Cyclo, Cyclo]:
    """Both sides of the order-0 strange identity as exact cyclotomic numbers.

    Returns ``(exp(2 pi i s alpha) * series(zeta), -1/2 * L(-1, C_alpha))``.
    """
    side = parse_side(side) if isinstance(side, str) else side
    alpha = RationalCusp.of(alpha)
    if side.name == "V":
        raise ValueError("V is a q-series identity; use unimodal_closed")
    a = alpha.as_fraction()
    series = side.series(RootOfUnity(a), DEFAULT_CONTEXT, "exact")
    ph = side.phase * a
    lhs = Cyclo.root(ph.denominator, ph.numerator) * series
    rhs = radial_value_exact(side.f, Fraction(3, 2), alpha) * Fraction(-1, 2)
    return lhs, rhs


def strange_check(side, alpha, ctx: PrecisionContext = DEFAULT_CONTEXT, tol=1e-10, exact: bool | None = None) -> VerificationRecord:
    """Order-0 strange identity at ``alpha``.

    ``LHS = exp(2 pi i s alpha) * series(exp(2 pi i alpha))`` and
    ``RHS = -1/2 * lim Theta_f(alpha + i t)``; the record holds ``|LHS - RHS|``.
    For ``side = "V"`` the identity is one of q-series and is compared at
    ``z = alpha + i / (2 pi)`` instead.

    ``exact`` (default: when the order is at most ``EXACT_MAX_ORDER``) also
    compares both sides in the cyclotomic field and notes the outcome.
    """
    side_obj = parse_side(side) if isinstance(side, str) else side
    alpha = RationalCusp.of(alpha)
    if alpha.is_infinity:
        raise ValueError("alpha must be rational")
    mp = ctx.mp
    note = ""
    with timer() as tm:
        if side_obj.name == "V":
            z = mp.mpf(alpha.p) / alpha.q + mp.mpc(0, 1) / (2 * mp.pi)
            res = unimodal_closed(z, ctx)
            lhs, rhs = res.lhs, res.rhs
        else:
            note = _check_cusp(side_obj, alpha)
            a = alpha.as_fraction()
            zeta = RootOfUnity(a)
            if exact is None:
                exact = zeta.order <= EXACT_MAX_ORDER
            if exact:
                lx, rx = strange_exact(side_obj, alpha)
                tag = "exact sides agree" if lx == rx else "exact sides differ"
                note = f"{note}; {tag}" if note else tag
            backend = "exact" if exact else "numeric"
            # numeric phase and separately evaluated sides for the residual
            ser = as_mp(side_obj.series(zeta, ctx, backend), ctx)
            lhs = mp.expjpi(2 * _mpq(side_obj.phase * a, mp)) * ser
            rhs = -radial_value_exact(side_obj.f, Fraction(3, 2), alpha).to_complex(mp) / 2
    return VerificationRecord(
        test="strange",
        inputs={"side": side_obj.name, "alpha": str(alpha)},
        lhs=lhs,
        rhs=rhs,
        residual=abs(lhs - rhs),
        tol=tol,
        digits=ctx.digits,
        runtime_ms=tm["ms"],
        note=note,
    )
