import cmath
from fractions import Fraction

import mpmath
from hypothesis import given
from hypothesis import strategies as st

from qmflab.cyclotomic import Cyclo, cyclotomic_poly, zeta


def _polydiv(num, den):
    # exact integer division of polynomials, lowest degree first
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    assert not any(num)
    return out


def _phi_by_division(n, cache={}):
    if n not in cache:
        p = [-1] + [0] * (n - 1) + [1]
        for d in range(1, n):
            if n % d == 0:
                p = _polydiv(p, _phi_by_division(d))
        cache[n] = tuple(p)
    return cache[n]


def test_cyclotomic_poly_against_division():
    for n in range(1, 200):
        assert cyclotomic_poly(n) == _phi_by_division(n), n


def test_cyclotomic_poly_known():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    # first coefficient outside {-1, 0, 1}
    assert -2 in cyclotomic_poly(105)


def test_roots_and_reduction():
    z = zeta(5)
    assert z**5 == 1
    assert 1 + z + z**2 + z**3 + z**4 == 0
    assert zeta(12, 3) ** 2 == -1
    assert Cyclo.gaussian(4, 0, 1) == zeta(4)
    assert zeta(6).lift(12) == zeta(12, 2)
    assert (zeta(3) + zeta(4)).order == 12


def test_format():
    assert Cyclo(3, [5, -1]).format() == "5 - zeta3"
    assert Cyclo(8, [Fraction(1, 2), 0, 3]).format() == "1/2 + 3*zeta8^2"
    assert Cyclo.rational(7, Fraction(-2, 9)).format() == "-2/9"


def test_conjugate_and_complex():
    z = zeta(7, 2)
    assert z.conjugate() == zeta(7, 5)
    assert abs(complex(z) - cmath.exp(4j * cmath.pi / 7)) < 1e-14
    mp = mpmath.MPContext()
    mp.dps = 40
    assert abs(z.to_complex(mp) - mp.expjpi(mp.mpf(4) / 7)) < mp.mpf(10) ** -38


_coeffs = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=1, max_size=12)


@given(_coeffs, _coeffs, _coeffs, st.sampled_from([3, 8, 12, 15]))
def test_ring_axioms(a, b, c, L):
    x, y, w = Cyclo(L, a), Cyclo(L, b), Cyclo(L, c)
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y) * w == x * (y * w)
    assert x * (y + w) == x * y + x * w
    assert x - x == 0
    assert abs(complex(x * y) - complex(x) * complex(y)) < 1e-9 * (1 + abs(complex(x)) * abs(complex(y)))


@given(_coeffs, st.sampled_from([5, 9, 20]))
def test_conjugate_is_complex_conjugate(a, L):
    x = Cyclo(L, a)
    assert abs(complex(x.conjugate()) - complex(x).conjugate()) < 1e-9
    # x * conj(x) is real and nonnegative
    n = complex(x * x.conjugate())
    assert abs(n.imag) < 1e-9 and n.real > -1e-9
