import json

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qmflab.records import VerificationRecord, format_complex, parse_complex

MP = mpmath.MPContext()
MP.dps = 60


def _rec(residual="1e-40", tol="1e-35", **kw):
    return VerificationRecord(
        test="transform",
        inputs={"f": "chi12", "gamma": "(1,0,24,1)", "z": "1/2i"},
        lhs=MP.mpc("0.5", "-0.25"),
        rhs=MP.mpc("0.5", "-0.25"),
        residual=MP.mpf(residual),
        tol=MP.mpf(tol),
        digits=40,
        **kw,
    )


def test_json_fields_and_order():
    d = json.loads(_rec(suite="transforms").to_json())
    assert list(d)[:5] == ["suite", "test", "f", "gamma", "z"]
    assert d["pass"] is True and d["residual"] == "1.0e-40"
    assert "runtime_ms" not in json.loads(_rec().to_json(include_runtime=False))


def test_round_trip():
    r = _rec(note="exact sides agree")
    back = VerificationRecord.from_dict(json.loads(r.to_json()), MP)
    assert back.inputs == r.inputs and back.note == r.note
    assert abs(back.lhs - r.lhs) < MP.mpf(10) ** -39
    assert back.passed == r.passed


def test_reserved_names_rejected():
    r = _rec()
    r.inputs["pass"] = 1
    with pytest.raises(ValueError):
        r.to_dict()


def test_csv_row_matches_header():
    r = _rec()
    assert len(r.csv_row()) == len(VerificationRecord.CSV_HEADER)
    assert r.csv_row()[9] == "true"


def test_format_complex():
    s = format_complex(MP.mpc(1, -2), 5)
    assert s == "1.0000 - 2.0000i"
    assert parse_complex(s, MP) == MP.mpc(1, -2)
    assert parse_complex("3.5", MP) == MP.mpc("3.5")


@given(st.integers(-80, 0), st.integers(-80, 0), st.integers(1, 9))
def test_pass_iff_residual_within_tol(re_exp, tol_exp, mant):
    res = MP.mpf(mant) * MP.mpf(10) ** re_exp
    tol = MP.mpf(10) ** tol_exp
    assert _rec(residual=res, tol=tol).passed == (res <= tol)


def test_pass_at_equality():
    assert _rec(residual="1e-10", tol="1e-10").passed
