import json
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmflab.periodic import (
    EMPTY,
    CoefficientError,
    ParityError,
    SupportError,
    builder_from_name,
    c_f_constant,
    char_chi12,
    char_chi_t,
    char_false_theta,
    char_hikami,
    char_psi,
    decompose,
    load_json,
    make_periodic,
    primed_sum,
)

MP = mpmath.MPContext()
MP.dps = 40

CHI12 = [0, 1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1]


def test_make_periodic_chi12():
    f = make_periodic(12, CHI12, 1, "even")
    assert f.M_f == (1, 5)
    assert f.S_f == (1, 5, 7, 11)


def test_make_periodic_psi():
    f = make_periodic(2, [0, 1], 1, "even")
    assert f.M_f == (1,)


def test_make_periodic_rejects():
    with pytest.raises(ParityError):
        make_periodic(12, CHI12, 1, "odd")
    with pytest.raises(SupportError):
        make_periodic(12, [0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0], 1, "even")
    with pytest.raises(SupportError):
        make_periodic(12, [0] * 12, 1, "even")
    with pytest.raises(CoefficientError):
        make_periodic(12, CHI12[:11], 1, "even")
    with pytest.raises(CoefficientError):
        make_periodic(12, CHI12, 0, "even")


def test_chi12_values():
    f = char_chi12()
    assert f(1).re == 1 and f(5).re == -1 and f(6).re == 0
    assert f(-1) == f(11)


def test_chi_t():
    f = char_chi_t(2)
    assert f.M == 24 and f.M_f == (5, 11) and f.k0 == 25
    assert f(19).re == 1
    assert char_chi_t(1).values == char_chi12().values
    for t in range(1, 6):
        f = char_chi_t(t)
        for r in f.support():
            assert (r * r - f.k0) % (3 * 2 ** (t + 2)) == 0
        assert not primed_sum(f)


def test_hikami():
    f = char_hikami(1, 0)
    assert f.values == char_chi12().values
    f = char_hikami(2, 0)
    assert f.M_f == (3, 7) and f.k0 == 9
    assert not primed_sum(f)
    with pytest.raises(CoefficientError):
        char_hikami(2, 2)


def test_false_theta():
    f = char_false_theta(1, 3)
    assert f.parity == "odd" and f(1).re == 1 and f(2).re == -1 and f.k0 == 1
    g = char_false_theta(2, 3)
    # k0 = (M - j)^2 = 1, the only choice with nonempty M_f
    assert g(2).re == 1 and g(1).re == -1 and g.k0 == 1
    assert g.S_f == f.S_f
    with pytest.raises(CoefficientError):
        char_false_theta(2, 4)


def test_decompose_examples():
    fe, fo = decompose(12, CHI12, 1)
    assert fe.values == char_chi12().values and fo is EMPTY
    fe, fo = decompose(3, [0, 1, -1], 1)
    assert fe is EMPTY and fo.values == char_false_theta(1, 3).values
    fe, fo = decompose(3, [0, 2, 0], 1)
    assert fe(1).re == 1 and fe(2).re == 1
    assert fo(1).re == 1 and fo(2).re == -1
    with pytest.raises(SupportError):
        decompose(3, [1, 0, 0], 1)


@given(st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_decompose_is_additive(vals):
    # arbitrary values on S_f = {1, 5, 7, 11} for M = 12, k0 = 1
    full = [0] * 12
    for r, v in zip((1, 5, 7, 11), vals):
        full[r] = v
    fe, fo = decompose(12, full, 1)
    for n in range(12):
        e = fe(n).re if fe else 0
        o = fo(n).re if fo else 0
        assert e + o == full[n]
        if fe:
            assert fe(-n) == fe(n)
        if fo:
            assert fo(-n) == -fo(n)


def test_primed_sum():
    assert not primed_sum(char_chi12())
    assert primed_sum(char_psi()).re == Fraction(1, 2)
    assert not primed_sum(char_hikami(2, 0))


def test_c_f_constant():
    assert abs(c_f_constant(char_chi12(), MP) - 2 * MP.sqrt(3)) < MP.mpf(10) ** -35
    assert abs(c_f_constant(char_psi(), MP) + 1) < MP.mpf(10) ** -35
    with pytest.raises(ParityError):
        c_f_constant(char_false_theta(1, 3), MP)


def test_builder_names_and_json(tmp_path):
    for name in ["chi12", "chi_t:2", "hikami:2:1", "false:3:8", "psi"]:
        f = builder_from_name(name)
        assert f.name == name
        g = load_json(json.loads(json.dumps(f.to_json())))
        assert g.values == f.values and g.k0 == f.k0 and g.parity == f.parity
    p = tmp_path / "f.json"
    p.write_text(json.dumps(char_chi12().to_json()))
    assert builder_from_name(f"@{p}").values == char_chi12().values
    for bad in ["chi13", "chi_t:x", "false:1", "hikami:1:1"]:
        with pytest.raises(CoefficientError):
            builder_from_name(bad)
    with pytest.raises(CoefficientError):
        load_json({"M": 3})


def test_complex_coefficients_allowed():
    # an even function with Gaussian rational values
    f = make_periodic(12, [0, (1, 1), 0, 0, 0, 0, 0, 0, 0, 0, 0, (1, 1)], 1, "even")
    assert not f.is_real()
    assert f(1).im == 1
