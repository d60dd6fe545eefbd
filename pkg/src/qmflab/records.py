"""Verification records: one checked identity instance with its residual."""

from __future__ import annotations

import json
import re
import time
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import libmp

__all__ = ["VerificationRecord", "format_complex", "parse_complex", "timer"]

_COMPLEX_RE = re.compile(r"^\s*(\S+)\s+([+-])\s+(\S+)i\s*$")


def _parts(x):
    # keep the full precision of numbers from a private context
    if hasattr(x, "_mpc_"):
        return x.real, x.imag
    if hasattr(x, "_mpf_"):
        return x, mpmath.mpf(0)
    x = complex(x)
    return mpmath.mpf(x.real), mpmath.mpf(x.imag)


def _exact(x) -> Fraction:
    if hasattr(x, "_mpf_"):
        return Fraction(*(int(v) for v in libmp.to_rational(x._mpf_)))
    if isinstance(x, str):
        return _exact(mpmath.mpf(x))
    return Fraction(x)


def format_complex(x, digits: int) -> str:
    """Render ``x`` as ``"re + imi"`` with ``digits`` significant digits."""
    re_v, im = _parts(x)
    re_s = mpmath.nstr(re_v, digits, strip_zeros=False, min_fixed=-1, max_fixed=-1)
    sign = "-" if im < 0 else "+"
    im_s = mpmath.nstr(abs(im), digits, strip_zeros=False, min_fixed=-1, max_fixed=-1)
    return f"{re_s} {sign} {im_s}i"


def parse_complex(text: str, mp=mpmath.mp):
    m = _COMPLEX_RE.match(text)
    if not m:
        return mp.mpc(mp.mpf(text))
    re_s, sign, im_s = m.groups()
    im = mp.mpf(im_s)
    return mp.mpc(mp.mpf(re_s), -im if sign == "-" else im)


def format_real(x, digits: int) -> str:
    if not hasattr(x, "_mpf_"):
        x = mpmath.mpf(x)
    return mpmath.nstr(x, digits, min_fixed=-1, max_fixed=-1)


_RESERVED = frozenset(
    ("suite", "test", "lhs", "rhs", "residual", "tol", "pass", "runtime_ms", "note")
)


@dataclass
class VerificationRecord:
    """Outcome of one identity check.

    The ``inputs`` echo is written at the top level of the JSON form, next
    to ``lhs``, ``rhs``, ``residual``, ``tol`` and ``pass``.  ``passed`` is always ``residual <= tol``; it is derived, not stored
    independently.
    """

    test: str
    inputs: dict
    lhs: object
    rhs: object
    residual: object
    tol: object
    digits: int = 50
    suite: str = ""
    runtime_ms: int = 0
    note: str = ""

    @property
    def passed(self) -> bool:
        return _exact(self.residual) <= _exact(self.tol)

    def to_dict(self) -> dict:
        clash = _RESERVED.intersection(self.inputs)
        if clash:
            raise ValueError(f"input names clash with record fields: {sorted(clash)}")
        d = {
            "suite": self.suite,
            "test": self.test,
            **self.inputs,
            "lhs": format_complex(self.lhs, self.digits),
            "rhs": format_complex(self.rhs, self.digits),
            "residual": format_real(self.residual, 6),
            "tol": format_real(self.tol, 6),
            "pass": self.passed,
            "runtime_ms": int(self.runtime_ms),
        }
        if self.note:
            d["note"] = self.note
        return d

    def to_json(self, include_runtime: bool = True) -> str:
        d = self.to_dict()
        if not include_runtime:
            d.pop("runtime_ms")
        return json.dumps(d, sort_keys=False)

    @classmethod
    def from_dict(cls, d: dict, mp=mpmath.mp) -> "VerificationRecord":
        digits = mp.dps
        return cls(
            test=d["test"],
            inputs={k: v for k, v in d.items() if k not in _RESERVED},
            lhs=parse_complex(d["lhs"], mp),
            rhs=parse_complex(d["rhs"], mp),
            residual=mp.mpf(d["residual"]),
            tol=mp.mpf(d["tol"]),
            digits=digits,
            suite=d.get("suite", ""),
            runtime_ms=d.get("runtime_ms", 0),
            note=d.get("note", ""),
        )

    def csv_row(self) -> list[str]:
        lr, li = _parts(self.lhs)
        rr, ri = _parts(self.rhs)
        n = self.digits
        return [
            self.suite,
            self.test,
            json.dumps(self.inputs, sort_keys=True),
            mpmath.nstr(lr, n),
            mpmath.nstr(li, n),
            mpmath.nstr(rr, n),
            mpmath.nstr(ri, n),
            format_real(self.residual, 6),
            format_real(self.tol, 6),
            str(self.passed).lower(),
            str(int(self.runtime_ms)),
        ]

    CSV_HEADER = [
        "suite", "test", "inputs", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
        "residual", "tol", "pass", "runtime_ms",
    ]


@contextmanager
def timer():
    box = {"ms": 0}
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        box["ms"] = int(round((time.perf_counter() - t0) * 1000))
