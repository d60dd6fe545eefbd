"""Exact arithmetic in the cyclotomic field Q(zeta_L).

Elements are coefficient tuples of rationals in the power basis of
``zeta_L = exp(2 pi i / L)``, reduced modulo the cyclotomic polynomial.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

__all__ = ["cyclotomic_poly", "Cyclo", "zeta", "lcm"]


def lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _primes(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients (lowest degree first) of ``Phi_n``.

    Uses ``Phi_n(x) = Phi_rad(x^(n/rad))`` and, for squarefree ``rad > 1``,
    ``Phi_rad = prod_{d | rad} (1 - x^d)^mu(rad/d)`` expanded as a power
    series truncated at the degree.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return (-1, 1)
    primes = _primes(n)
    rad = math.prod(primes)
    deg = math.prod(p - 1 for p in primes)
    c = [0] * (deg + 1)
    c[0] = 1
    for mask in range(1 << len(primes)):
        e = math.prod(p for i, p in enumerate(primes) if mask >> i & 1)
        d = rad // e
        if d > deg:
            continue  # (1 - x^d)^{+-1} is 1 modulo x^(deg+1)
        if bin(mask).count("1") % 2 == 0:
            for i in range(deg, d - 1, -1):
                c[i] -= c[i - d]
        else:
            for i in range(d, deg + 1):
                c[i] += c[i - d]
    s = n // rad
    out = [0] * (deg * s + 1)
    for i, v in enumerate(c):
        out[i * s] = v
    return tuple(out)


def _reduce(coeffs: list[Fraction], L: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_poly(L)
    deg = len(phi) - 1
    c = list(coeffs)
    # x^L = 1 first, then the monic remainder
    if len(c) > L:
        folded = [Fraction(0)] * L
        for i, v in enumerate(c):
            folded[i % L] += v
        c = folded
    nz = [(j, p) for j, p in enumerate(phi[:-1]) if p]
    for i in range(len(c) - 1, deg - 1, -1):
        v = c[i]
        if v:
            c[i] = Fraction(0)
            base = i - deg
            for j, p in nz:
                c[base + j] -= v * p
    c = c[:deg] + [Fraction(0)] * max(0, deg - len(c))
    return tuple(c)


class Cyclo:
    """Element of ``Q(zeta_L)``.

    Parameters
    ----------
    order : int
        The conductor ``L``.
    coeffs : sequence
        Coefficients of ``1, zeta, zeta**2, ...`` (any length; reduced on entry).
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=()):
        self.order = int(order)
        self.coeffs = _reduce([Fraction(c) for c in coeffs], self.order)

    @classmethod
    def rational(cls, order: int, value) -> "Cyclo":
        return cls(order, [Fraction(value)])

    @classmethod
    def root(cls, order: int, k: int) -> "Cyclo":
        """``zeta_order**k``."""
        k %= order
        c = [Fraction(0)] * (k + 1)
        c[k] = Fraction(1)
        return cls(order, c)

    @classmethod
    def gaussian(cls, order: int, re, im) -> "Cyclo":
        """``re + i*im``; ``order`` must be divisible by 4 when ``im != 0``."""
        out = cls.rational(order, re)
        if Fraction(im) != 0:
            if order % 4:
                raise ValueError("i is not in Q(zeta_L) unless 4 | L")
            out = out + cls.root(order, order // 4) * Fraction(im)
        return out

    def lift(self, new_order: int) -> "Cyclo":
        if new_order % self.order:
            raise ValueError("new order must be a multiple")
        s = new_order // self.order
        c = [Fraction(0)] * (s * len(self.coeffs) + 1)
        for i, v in enumerate(self.coeffs):
            c[s * i] = v
        return Cyclo(new_order, c)

    def _coerce(self, other) -> tuple["Cyclo", "Cyclo"]:
        if isinstance(other, Cyclo):
            if other.order == self.order:
                return self, other
            L = lcm(self.order, other.order)
            return self.lift(L), other.lift(L)
        return self, Cyclo.rational(self.order, Fraction(other))

    def __add__(self, other):
        a, b = self._coerce(other)
        n = max(len(a.coeffs), len(b.coeffs))
        ac = a.coeffs + (Fraction(0),) * (n - len(a.coeffs))
        bc = b.coeffs + (Fraction(0),) * (n - len(b.coeffs))
        return Cyclo(a.order, [x + y for x, y in zip(ac, bc)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.order, [-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclo) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Cyclo):
            f = Fraction(other)
            return Cyclo(self.order, [x * f for x in self.coeffs])
        a, b = self._coerce(other)
        out = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        out[i + j] += x * y
        return Cyclo(a.order, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclo):
            r = other.rational_value()
            if r is None:
                raise NotImplementedError("division by irrational cyclotomic element")
            other = r
        return self * (1 / Fraction(other))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers unsupported")
        out = Cyclo.rational(self.order, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclo.rational(self.order, other)
        if not isinstance(other, Cyclo):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        r = self.rational_value()
        return hash(r) if r is not None else hash((self.order, self.coeffs))

    def rational_value(self) -> Fraction | None:
        """The rational number this element equals, or ``None``."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def conjugate(self) -> "Cyclo":
        # zeta -> zeta^-1
        c = [Fraction(0)] * self.order
        for i, v in enumerate(self.coeffs):
            c[(-i) % self.order] += v
        return Cyclo(self.order, c)

    def to_complex(self, mp):
        z = mp.expjpi(mp.mpf(2) / self.order)
        s = mp.mpc(0)
        p = mp.mpc(1)
        for v in self.coeffs:
            if v:
                s += (mp.mpf(v.numerator) / v.denominator) * p
            p *= z
        return s

    def __complex__(self):
        import cmath

        return sum(
            complex(v) * cmath.exp(2j * cmath.pi * i / self.order)
            for i, v in enumerate(self.coeffs)
        )

    def format(self) -> str:
        """Human-readable form such as ``5 - zeta3`` or ``1/2 + 3*zeta8^2``."""
        r = self.rational_value()
        if r is not None:
            return str(r)
        name = f"zeta{self.order}"
        out = ""
        for i, v in enumerate(self.coeffs):
            if not v:
                continue
            mono = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
            mag = abs(v)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out = body if v > 0 else f"-{body}"
            else:
                out += f" + {body}" if v > 0 else f" - {body}"
        return out

    def __repr__(self):
        r = self.rational_value()
        if r is not None:
            return f"Cyclo({self.order}, {r})"
        terms = [f"{v}*z^{i}" for i, v in enumerate(self.coeffs) if v]
        return f"Cyclo({self.order}, {' + '.join(terms)})"


def zeta(order: int, k: int = 1) -> Cyclo:
    return Cyclo.root(order, k)
