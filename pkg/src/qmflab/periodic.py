"""Periodic coefficient functions and the named builders.

A :class:`PeriodicCoeffs` is an even or odd function ``f: Z -> Q(i)`` of period
``M`` whose support sits on residues ``k`` with ``k**2 = k0 (mod 2M)``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .cyclotomic import Cyclo

__all__ = [
    "GaussQ",
    "CoefficientError",
    "ParityError",
    "SupportError",
    "PeriodicCoeffs",
    "PeriodicFunction",
    "EMPTY",
    "make_periodic",
    "char_chi12",
    "char_chi_t",
    "char_hikami",
    "char_false_theta",
    "char_psi",
    "decompose",
    "primed_sum",
    "c_f_constant",
    "builder_from_name",
    "load_json",
    "BUILDER_NAMES",
]


class GaussQ(NamedTuple):
    """Exact Gaussian rational ``re + i*im``."""

    re: Fraction
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, v) -> "GaussQ":
        if isinstance(v, GaussQ):
            return v
        if isinstance(v, complex):
            return cls(Fraction(v.real), Fraction(v.imag))
        if isinstance(v, (tuple, list)) and len(v) == 2:
            return cls(Fraction(v[0]), Fraction(v[1]))
        return cls(Fraction(v), Fraction(0))

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __add__(self, other):
        o = GaussQ.of(other)
        return GaussQ(self.re + o.re, self.im + o.im)

    def __sub__(self, other):
        o = GaussQ.of(other)
        return GaussQ(self.re - o.re, self.im - o.im)

    def scale(self, r) -> "GaussQ":
        r = Fraction(r)
        return GaussQ(self.re * r, self.im * r)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def to_mp(self, mp):
        return mp.mpc(
            mp.mpf(self.re.numerator) / self.re.denominator,
            mp.mpf(self.im.numerator) / self.im.denominator,
        )

    def to_cyclo(self, order: int) -> Cyclo:
        return Cyclo.gaussian(order, self.re, self.im)

    def __str__(self):
        if not self.im:
            return str(self.re)
        return f"{self.re}+{self.im}i"


class CoefficientError(ValueError):
    """Invalid periodic coefficient data."""


class ParityError(CoefficientError):
    pass


class SupportError(CoefficientError):
    pass


@dataclass(frozen=True)
class PeriodicCoeffs:
    """Validated periodic coefficient function.

    Use :func:`make_periodic` rather than the constructor directly; it fills
    in ``M_f`` and ``S_f``.
    """

    M: int
    values: tuple
    k0: int
    parity: str
    M_f: tuple = ()
    S_f: tuple = ()
    name: str = ""

    def __call__(self, n: int) -> GaussQ:
        return self.values[n % self.M]

    def is_even(self) -> bool:
        return self.parity == "even"

    def value_mp(self, n: int, mp):
        return self(n).to_mp(mp)

    def support(self) -> list[int]:
        return [n for n in range(self.M) if self.values[n]]

    def is_real(self) -> bool:
        return not any(v.im for v in self.values)

    def to_json(self) -> dict:
        vals = [
            [v.re.numerator, v.re.denominator, v.im.numerator, v.im.denominator]
            for v in self.values
        ]
        return {"M": self.M, "k0": self.k0, "parity": self.parity, "values": vals}


@dataclass(frozen=True)
class PeriodicFunction:
    """Period-``P`` function with values in ``Q(zeta_L)``.

    Values are kept as sparse sums of powers of ``zeta_L``: ``terms[j]`` is a
    tuple of ``(exponent, rational)`` pairs giving ``C(j)`` for
    ``j = 0..P-1`` (so ``C(P) = C(0)``).  Only aggregated sums are reduced
    modulo the cyclotomic polynomial, which keeps long periods cheap.
    """

    P: int
    order: int
    terms: tuple
    mean_value: Cyclo = field(default=None, compare=False)

    def __post_init__(self):
        if self.P < 1 or len(self.terms) != self.P:
            raise CoefficientError("terms must have length P >= 1")
        if self.mean_value is None:
            object.__setattr__(self, "mean_value", self.weighted_sum(lambda j: 1) / self.P)

    @classmethod
    def from_values(cls, values: Sequence[Cyclo]) -> "PeriodicFunction":
        if not values:
            raise CoefficientError("empty value list")
        L = 1
        for v in values:
            L = L * v.order // math.gcd(L, v.order)
        terms = []
        for v in values:
            w = v.lift(L) if v.order != L else v
            terms.append(tuple((i, c) for i, c in enumerate(w.coeffs) if c))
        return cls(len(values), L, tuple(terms))

    def __call__(self, n: int) -> Cyclo:
        L = self.order
        acc = [Fraction(0)] * L
        for e, c in self.terms[n % self.P]:
            acc[e % L] += c
        return Cyclo(L, acc)

    @property
    def values(self) -> tuple:
        return tuple(self(j) for j in range(self.P))

    def is_zero_at(self, n: int) -> bool:
        return not self.terms[n % self.P]

    def weighted_sum(self, weight) -> Cyclo:
        """``sum_{j=1}^{P} weight(j) C(j)`` as a reduced cyclotomic number.

        ``weight`` may return ints or Fractions; integer weights keep the
        accumulation in integer arithmetic.
        """
        L = self.order
        den = self._common_den
        acc = [0] * L
        wden = 1
        for j in range(1, self.P + 1):
            t = self.terms[j % self.P]
            if not t:
                continue
            w = weight(j)
            if not w:
                continue
            if not isinstance(w, int):
                w = Fraction(w)
                if w.denominator != 1:
                    # rescale everything accumulated so far
                    g = w.denominator // math.gcd(wden, w.denominator)
                    if g != 1:
                        acc = [a * g for a in acc]
                        wden *= g
                w = w.numerator * (wden // w.denominator)
            else:
                w *= wden
            for e, c in t:
                acc[e % L] += w * (c.numerator * (den // c.denominator))
        return Cyclo(L, [Fraction(a, den * wden) for a in acc])

    @property
    def _common_den(self) -> int:
        den = 1
        for t in self.terms:
            for _, c in t:
                den = den * c.denominator // math.gcd(den, c.denominator)
        return den

    def value_mp(self, n: int, mp):
        L = self.order
        total = mp.mpc(0)
        for e, c in self.terms[n % self.P]:
            total += (mp.mpf(c.numerator) / c.denominator) * mp.expjpi(mp.mpf(2 * e) / L)
        return total

    @property
    def has_mean_zero(self) -> bool:
        return self.mean_value.is_zero()


class _Empty:
    """Marker for a vanishing parity part in :func:`decompose`."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __bool__(self):
        return False

    def __repr__(self):
        return "EMPTY"


EMPTY = _Empty()


def _candidate_set(M: int, k0: int) -> list[int]:
    return [k for k in range(1, M // 2 + 1) if (k * k - k0) % (2 * M) == 0]


def _support_data(M: int, values: Sequence[GaussQ], k0: int):
    M_f = tuple(k for k in _candidate_set(M, k0) if values[k] or values[(M - k) % M])
    if not M_f:
        raise SupportError(f"M_f(k0) is empty for M={M}, k0={k0}")
    S_f = tuple(sorted({k % M for k in M_f} | {(M - k) % M for k in M_f}))
    for n in range(M):
        if values[n] and n not in S_f:
            raise SupportError(
                f"f({n}) != 0 but {n} is not in S_f(k0) for k0={k0}"
            )
    return M_f, S_f


def make_periodic(M: int, values, k0: int, parity: str, name: str = "") -> PeriodicCoeffs:
    """Validate and build a :class:`PeriodicCoeffs`.

    Parameters
    ----------
    M : int
        Period, at least 2.
    values : sequence
        ``f(0), ..., f(M-1)``; each entry is an int, Fraction, complex or a
        ``(re, im)`` pair.
    k0 : int
        Residue with ``1 <= k0 < 2M``.
    parity : {"even", "odd"}

    Raises
    ------
    ParityError, SupportError, CoefficientError
    """
    M = int(M)
    if M < 2:
        raise CoefficientError("period M must be >= 2")
    if parity not in ("even", "odd"):
        raise CoefficientError("parity must be 'even' or 'odd'")
    if not 1 <= k0 < 2 * M:
        raise CoefficientError("k0 must satisfy 1 <= k0 < 2M")
    vals = tuple(GaussQ.of(v) for v in values)
    if len(vals) != M:
        raise CoefficientError(f"expected {M} values, got {len(vals)}")
    sign = 1 if parity == "even" else -1
    for n in range(M):
        m = (M - n) % M
        if vals[m] != (vals[n] if sign == 1 else -vals[n]):
            raise ParityError(f"f({m}) violates {parity} parity against f({n})")
    M_f, S_f = _support_data(M, vals, k0)
    return PeriodicCoeffs(M, vals, k0, parity, M_f, S_f, name)


def _table(M: int, entries: dict[int, int]) -> list[int]:
    vals = [0] * M
    for r, v in entries.items():
        vals[r % M] = v
    return vals


def char_chi12() -> PeriodicCoeffs:
    """The quadratic character of conductor 12."""
    return make_periodic(12, _table(12, {1: 1, 5: -1, 7: -1, 11: 1}), 1, "even", "chi12")


def char_chi_t(t: int) -> PeriodicCoeffs:
    """Period ``3*2**(t+1)`` character attached to the torus knot ``T(3, 2**t)``."""
    if t < 1:
        raise CoefficientError("t must be >= 1")
    M = 3 * 2 ** (t + 1)
    a = 2 ** (t + 1)
    tab = _table(M, {a - 3: 1, 3 + 2 * a: 1, a + 3: -1, 2 * a - 3: -1})
    k0 = (a - 3) ** 2 % (2 * M)
    return make_periodic(M, tab, k0, "even", f"chi_t:{t}")


def char_hikami(m: int, ell: int) -> PeriodicCoeffs:
    """Period ``8m+4`` character attached to the torus knot ``T(2, 2m+1)``."""
    if m < 1 or not 0 <= ell <= m - 1:
        raise CoefficientError("need m >= 1 and 0 <= ell <= m-1")
    M = 8 * m + 4
    tab = _table(
        M,
        {
            2 * m - 2 * ell - 1: 1,
            6 * m + 2 * ell + 5: 1,
            2 * m + 2 * ell + 3: -1,
            6 * m - 2 * ell + 1: -1,
        },
    )
    k0 = (2 * m - 2 * ell - 1) ** 2 % (2 * M)
    return make_periodic(M, tab, k0, "even", f"hikami:{m}:{ell}")


def char_false_theta(j: int, M: int) -> PeriodicCoeffs:
    """Odd coefficients of the false theta function ``F_{j,M}``."""
    if not 1 <= j < M:
        raise CoefficientError("need 1 <= j < M")
    if 2 * j == M:
        raise CoefficientError("j = M/2 gives the zero function")
    tab = _table(M, {j: 1, M - j: -1})
    k = j if 2 * j < M else M - j
    k0 = k * k % (2 * M)
    if k0 == 0:
        k0 = 2 * M  # never happens for 1 <= k < M/2, kept for safety
    return make_periodic(M, tab, k0, "odd", f"false:{j}:{M}")


def char_psi() -> PeriodicCoeffs:
    """Indicator of odd integers, period 2."""
    return make_periodic(2, [0, 1], 1, "even", "psi")


def decompose(M: int, values, k0: int):
    """Split a period-``M`` function into even and odd parts.

    Returns ``(f_e, f_o)``; a part that vanishes identically is returned as
    :data:`EMPTY`.
    """
    vals = [GaussQ.of(v) for v in values]
    if len(vals) != M:
        raise CoefficientError(f"expected {M} values")
    cand = _candidate_set(M, k0)
    allowed = {k % M for k in cand} | {(M - k) % M for k in cand}
    for n, v in enumerate(vals):
        if v and n not in allowed:
            raise SupportError(f"f({n}) lies outside the admissible support")
    half = Fraction(1, 2)
    even = [(vals[n] + vals[(-n) % M]).scale(half) for n in range(M)]
    odd = [(vals[n] - vals[(-n) % M]).scale(half) for n in range(M)]
    f_e = make_periodic(M, even, k0, "even") if any(even) else EMPTY
    f_o = make_periodic(M, odd, k0, "odd") if any(odd) else EMPTY
    return f_e, f_o


def primed_sum(f: PeriodicCoeffs) -> GaussQ:
    """``sum' f(k)`` over ``M_f(k0)``, with ``f(M/2)`` halved."""
    total = GaussQ(Fraction(0))
    for k in f.M_f:
        v = f(k)
        if 2 * k == f.M:
            v = v.scale(Fraction(1, 2))
        total = total + v
    return total


def c_f_constant(f: PeriodicCoeffs, mp):
    """Decay constant ``2 * sum' f(k) cos(2 pi k / M)``."""
    if not f.is_even():
        raise ParityError("c_f is defined for even f only")
    total = mp.mpc(0)
    for k in f.M_f:
        w = mp.mpf(1) / 2 if 2 * k == f.M else 1
        total += w * f.value_mp(k, mp) * mp.cospi(mp.mpf(2 * k) / f.M)
    return 2 * total


# ---------------------------------------------------------------------------
# name registry

BUILDER_NAMES = ("chi12", "chi_t:t", "hikami:m:l", "false:j:M", "psi")


def builder_from_name(name: str) -> PeriodicCoeffs:
    """Build from a registry name like ``chi_t:2`` or a ``@file.json`` path."""
    name = name.strip()
    if name.startswith("@"):
        with open(name[1:]) as fh:
            return load_json(json.load(fh))
    parts = name.split(":")
    head, args = parts[0], parts[1:]
    try:
        nums = [int(a) for a in args]
    except ValueError:
        raise CoefficientError(f"bad builder arguments in {name!r}") from None
    if head == "chi12" and not nums:
        return char_chi12()
    if head == "psi" and not nums:
        return char_psi()
    if head == "chi_t" and len(nums) == 1:
        return char_chi_t(nums[0])
    if head == "hikami" and len(nums) == 2:
        return char_hikami(*nums)
    if head == "false" and len(nums) == 2:
        return char_false_theta(*nums)
    raise CoefficientError(f"unknown builder {name!r}; known: {', '.join(BUILDER_NAMES)}")


def load_json(data: dict) -> PeriodicCoeffs:
    """Build from the ``{"M", "k0", "parity", "values"}`` JSON layout."""
    try:
        M = int(data["M"])
        k0 = int(data["k0"])
        parity = data["parity"]
        raw = data["values"]
        values = []
        for entry in raw:
            nr, dr, ni, di = (int(x) for x in entry)
            values.append(GaussQ(Fraction(nr, dr), Fraction(ni, di)))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise CoefficientError(f"malformed coefficient JSON: {exc}") from None
    return make_periodic(M, values, k0, parity, "json")
