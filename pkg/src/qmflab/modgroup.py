"""Integer matrix machinery: congruence subgroups, multiplier, cusps."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "MoebiusMap",
    "RationalCusp",
    "INF",
    "parse_cusp",
    "parse_gamma",
    "NotInGroupError",
    "in_gamma1",
    "in_gamma_M",
    "epsilon_d",
    "jacobi_extended",
    "multiplier_phase",
    "multiplier_chi",
    "apply",
    "cusp_equivalent",
    "in_B_M",
    "in_A_M",
    "automorphy",
]


class NotInGroupError(ValueError):
    """Matrix is not in the required congruence subgroup."""


@dataclass(frozen=True)
class MoebiusMap:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self} is not 1")

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return MoebiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def __neg__(self):
        return MoebiusMap(-self.a, -self.b, -self.c, -self.d)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def height(self) -> int:
        return max(abs(x) for x in self.entries())

    def __str__(self):
        return f"{self.a} {self.b} {self.c} {self.d}"


IDENTITY = MoebiusMap(1, 0, 0, 1)
T = MoebiusMap(1, 1, 0, 1)
S = MoebiusMap(0, -1, 1, 0)


@dataclass(frozen=True, order=True)
class RationalCusp:
    """Reduced ``p/q`` with ``q >= 0``; ``1/0`` is the cusp at infinity."""

    p: int
    q: int

    def __post_init__(self):
        if self.q < 0:
            raise ValueError("q must be nonnegative")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"{self.p}/{self.q} is not reduced")
        if self.q == 0 and self.p != 1:
            raise ValueError("infinity must be encoded as 1/0")

    @classmethod
    def of(cls, x) -> "RationalCusp":
        if isinstance(x, RationalCusp):
            return x
        if isinstance(x, str):
            return parse_cusp(x)
        fr = Fraction(x)
        return cls(fr.numerator, fr.denominator)

    @property
    def is_infinity(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if self.is_infinity:
            raise ValueError("infinity has no rational value")
        return Fraction(self.p, self.q)

    def __str__(self):
        if self.is_infinity:
            return "inf"
        return str(self.p) if self.q == 1 else f"{self.p}/{self.q}"


INF = RationalCusp(1, 0)


def parse_cusp(text: str) -> RationalCusp:
    s = text.strip().lower()
    if s in ("inf", "oo", "i*inf", "iinf", "1/0", "infinity"):
        return INF
    return RationalCusp.of(Fraction(s))


def parse_gamma(text) -> MoebiusMap:
    if isinstance(text, MoebiusMap):
        return text
    if isinstance(text, str):
        parts = text.replace(",", " ").split()
    else:
        parts = list(text)
    if len(parts) != 4:
        raise ValueError("gamma needs four integers 'a b c d'")
    return MoebiusMap(*(int(x) for x in parts))


def _cusp_from_pair(num: int, den: int) -> RationalCusp:
    if den == 0:
        return INF
    g = math.gcd(num, den)
    num, den = num // g, den // g
    if den < 0:
        num, den = -num, -den
    return RationalCusp(num, den)


# ---------------------------------------------------------------------------
# membership


def in_gamma1(N: int, g: MoebiusMap) -> bool:
    return g.c % N == 0 and (g.a - 1) % N == 0 and (g.d - 1) % N == 0


def in_gamma_M(M: int, g: MoebiusMap) -> bool:
    """Membership in ``Gamma_1(2M)``, with ``b`` even in addition when ``M`` is odd."""
    if M < 2:
        raise ValueError("M must be >= 2")
    if not in_gamma1(2 * M, g):
        return False
    return M % 2 == 0 or g.b % 2 == 0


# ---------------------------------------------------------------------------
# multiplier


def epsilon_d(d: int) -> complex:
    if d % 2 == 0:
        raise ValueError("d must be odd")
    return 1 if d % 4 == 1 else 1j


def _jacobi_pos(a: int, n: int) -> int:
    # n odd positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def jacobi_extended(a: int, d: int) -> int:
    """Extended Jacobi symbol ``(a/d)`` for odd ``d`` of either sign.

    ``(a/d) = (a/|d|)`` times ``-1`` when both ``a < 0`` and ``d < 0``;
    ``(0/1) = (0/-1) = 1``.
    """
    if d % 2 == 0:
        raise ValueError("d must be odd")
    val = _jacobi_pos(a, abs(d))
    if d < 0 and a < 0:
        val = -val
    return val


def multiplier_phase(M: int, k0: int, g: MoebiusMap) -> Fraction:
    """Exponent ``E`` with ``chi(g) = exp(pi i E)``, reduced mod 2.

    ``chi(g) = exp(pi i a b k0 / M) * (2cM / d) * eps_d**-1``.
    """
    if not in_gamma_M(M, g):
        raise NotInGroupError(f"{g} is not in Gamma_M for M={M}")
    e = Fraction(g.a * g.b * k0, M)
    j = jacobi_extended(2 * g.c * M, g.d)
    if j == 0:
        raise ArithmeticError("Jacobi symbol vanished on a group element")
    if j == -1:
        e += 1
    if g.d % 4 == 3:
        e -= Fraction(1, 2)
    return e % 2


def multiplier_chi(M: int, k0: int, g: MoebiusMap, mp=None):
    """``chi(g)`` as a complex unit (an mp number when ``mp`` is given)."""
    e = multiplier_phase(M, k0, g)
    if mp is None:
        import cmath

        return cmath.exp(1j * cmath.pi * float(e))
    return mp.expjpi(mp.mpf(e.numerator) / e.denominator)


# ---------------------------------------------------------------------------
# action


def apply(g: MoebiusMap, x, mp=None):
    """Moebius action on a :class:`RationalCusp` or a complex number."""
    if isinstance(x, RationalCusp):
        if x.is_infinity:
            return _cusp_from_pair(g.a, g.c)
        return _cusp_from_pair(g.a * x.p + g.b * x.q, g.c * x.p + g.d * x.q)
    if mp is not None:
        x = mp.mpc(x)
    den = g.c * x + g.d
    if den == 0:
        raise ZeroDivisionError("pole of the Moebius map")
    return (g.a * x + g.b) / den


def automorphy(c: int, d: int, x, k, mp):
    """``(c x + d)**k`` on the principal branch.

    For real ``x`` (a boundary point) with ``c x + d < 0`` the argument is
    taken as the limit from the lower half plane: ``-pi`` when ``c > 0`` and
    ``+pi`` when ``c < 0``.
    """
    x = mp.mpc(x)
    w = c * x + d
    if w == 0:
        raise ZeroDivisionError("automorphy factor vanishes")
    if x.imag == 0 and w.real < 0:
        arg = -mp.pi if c > 0 else mp.pi
        return mp.exp(k * (mp.log(abs(w)) + 1j * arg))
    return mp.exp(k * (mp.log(abs(w)) + 1j * mp.arg(w)))


# ---------------------------------------------------------------------------
# cusps


def _g_of(x: RationalCusp) -> MoebiusMap:
    """An element of SL2(Z) sending infinity to ``x``."""
    if x.is_infinity:
        return IDENTITY
    p, q = x.p, x.q
    # p*u + q*v = 1
    g, u, v = _egcd(p, q)
    if g < 0:
        u, v = -u, -v
    return MoebiusMap(p, -v, q, u)


def _egcd(a: int, b: int):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    return a, x0, y0


def cusp_equivalent(M: int, alpha, beta):
    """Decide Gamma_M-equivalence of two cusps.

    Returns ``(True, witness)`` with ``apply(witness, alpha) == beta`` or
    ``(False, None)``.  Every element sending ``alpha`` to ``beta`` has the
    form ``+-g_beta T^j g_alpha^-1``; the congruence conditions are periodic
    in ``j`` with period dividing ``2M``, so one period decides.
    """
    alpha = RationalCusp.of(alpha)
    beta = RationalCusp.of(beta)
    if alpha == beta:
        return True, IDENTITY
    ga, gb = _g_of(alpha), _g_of(beta)
    ga_inv = ga.inverse()
    period = 2 * M
    best = None
    for j in range(-period, period):
        base = gb @ MoebiusMap(1, j, 0, 1) @ ga_inv
        for cand in (base, -base):
            if in_gamma_M(M, cand):
                if best is None or cand.height() < best.height():
                    best = cand
    if best is None:
        return False, None
    return True, best


def in_B_M(M: int, alpha) -> bool:
    return cusp_equivalent(M, alpha, INF)[0]


def in_A_M(f, alpha) -> bool:
    """Cusp set where the weight 3/2 quantum value is defined."""
    from .periodic import primed_sum

    if primed_sum(f):
        return in_B_M(f.M, alpha)
    return in_B_M(f.M, alpha) or cusp_equivalent(f.M, alpha, RationalCusp(0, 1))[0]
