"""Command-line front end.

Every command prints JSON lines (default) or CSV.  Exit codes: 0 when every
emitted verification passes, 1 when one fails, 2 on usage or configuration
errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from . import lvalues, modgroup, qknots, qmf, theta
from .cyclotomic import Cyclo
from .modgroup import parse_cusp, parse_gamma
from .numerics import PrecisionContext, parse_number
from .periodic import CoefficientError, builder_from_name
from .records import VerificationRecord, format_complex
from .suites import SUITE_NAMES, ConfigError, load_defaults, run_suite

DEFAULT_PREC = 50


class UsageError(Exception):
    pass


def _default_prec() -> int:
    env = os.environ.get("QMFLAB_PREC")
    if env is None:
        return DEFAULT_PREC
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"QMFLAB_PREC must be an integer, got {env!r}") from None


def _common() -> argparse.ArgumentParser:
    # SUPPRESS so a flag given before the command is not reset by the subparser
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--prec", type=int, default=argparse.SUPPRESS, help="working precision in digits (default 50)")
    p.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for suites")
    p.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    p.add_argument("--f", dest="f", default=argparse.SUPPRESS, help="builder name or @file.json")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="qmflab", parents=[common], description="Partial theta series and quantum modular forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    th = sub.add_parser("theta", parents=[common]).add_subparsers(dest="action", required=True)
    p = th.add_parser("eval", parents=[common], help="theta_f and Theta_f at z")
    p.add_argument("--z", required=True)
    p.add_argument("--method", choices=("auto", "series", "modular"), default="auto")
    p = th.add_parser("transform", parents=[common], help="modular transformation residual")
    p.add_argument("--gamma", required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--tol", default="1e-35")

    p = sub.add_parser("lvalue", parents=[common], help="L(-n, C_alpha) exactly")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", default="0")

    qm = sub.add_parser("qmf", parents=[common]).add_subparsers(dest="action", required=True)
    p = qm.add_parser("verify", parents=[common], help="quantum modularity defect")
    p.add_argument("--weight", choices=("3/2", "1/2"), required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--alpha", help="rational cusp")
    p.add_argument("--tau", help="lower half plane point (weight 1/2)")
    p.add_argument("--tol", default="1e-10")
    p = qm.add_parser("cocycle", parents=[common], help="period integral r_gamma(x)")
    p.add_argument("--weight", choices=("3/2", "1/2"), required=True)
    p.add_argument("--gamma", required=True)
    p.add_argument("--x", required=True)

    kn = sub.add_parser("knots", parents=[common]).add_subparsers(dest="action", required=True)
    p = kn.add_parser("F", parents=[common], help="Kontsevich-Zagier series at a root of unity")
    _root_args(p)
    p = kn.add_parser("Ft", parents=[common], help="torus knot T(3,2^t) series")
    p.add_argument("--t", type=int, required=True)
    _root_args(p)
    p = kn.add_parser("X", parents=[common], help="Hikami series X_m^(l)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    _root_args(p)
    p = kn.add_parser("jones", parents=[common], help="colored Jones polynomial of T(3,2^t) at zeta_N")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--N", type=int, required=True)
    p = kn.add_parser("strange", parents=[common], help="order-0 strange identity")
    p.add_argument("--side", required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--tol", default="1e-10")

    mg = sub.add_parser("modgroup", parents=[common]).add_subparsers(dest="action", required=True)
    p = mg.add_parser("cusp-equiv", parents=[common], help="Gamma_M-equivalence of two cusps")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)

    su = sub.add_parser("suite", parents=[common]).add_subparsers(dest="action", required=True)
    p = su.add_parser("run", parents=[common], help="run a verification suite")
    p.add_argument("name", help=", ".join(SUITE_NAMES))
    p.add_argument("--config", help="JSON file merged over the packaged defaults")
    p.add_argument("--tol", help="override every tolerance of the suite")
    return parser


def _root_args(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--alpha", help="zeta = exp(2 pi i alpha)")
    g.add_argument("--N", type=int, help="zeta = exp(2 pi i / N)")


# ---------------------------------------------------------------------------
# output


def _emit_rows(rows: list[dict], fmt: str, out):
    if fmt == "json":
        for r in rows:
            out.write(json.dumps(r) + "\n")
        return
    keys: list[str] = []
    for r in rows:
        keys.extend(k for k in r if k not in keys)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(keys)
    for r in rows:
        w.writerow(["" if r.get(k) is None else (json.dumps(r[k]) if isinstance(r[k], (dict, list)) else r[k]) for k in keys])


def _emit_records(records: list[VerificationRecord], fmt: str, out):
    if fmt == "json":
        for r in records:
            out.write(r.to_json() + "\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(VerificationRecord.CSV_HEADER)
    for r in records:
        w.writerow(r.csv_row())


def _exact_or_decimal(value, mp, digits):
    """``(exact, decimal)`` renderings of a Cyclo or mp number."""
    if isinstance(value, Cyclo):
        return value.format(), format_complex(value.to_complex(mp), digits)
    return None, format_complex(value, digits)


# ---------------------------------------------------------------------------
# commands


def _need_f(args):
    if not getattr(args, "f", None):
        raise UsageError("--f is required for this command")
    return builder_from_name(args.f)


def _zeta(args) -> qknots.RootOfUnity:
    if args.alpha is not None:
        return qknots.RootOfUnity(Fraction(args.alpha))
    if args.N < 1:
        raise UsageError("--N must be positive")
    return qknots.RootOfUnity.primitive(args.N)


def _cmd_theta(args, ctx):
    f = _need_f(args)
    mp = ctx.mp
    z = parse_number(args.z, mp)
    if args.action == "eval":
        row = {
            "f": args.f,
            "z": args.z,
            "theta": format_complex(theta.theta_f(f, z, ctx, method=args.method), ctx.digits),
            "Theta": format_complex(theta.Theta_f(f, z, ctx, method=args.method), ctx.digits),
        }
        return [row], None
    g = parse_gamma(args.gamma)
    lhs, rhs = theta.transform_sides(f, g, z, ctx)
    rec = VerificationRecord(
        test="transform", inputs={"f": args.f, "gamma": str(g), "z": args.z},
        lhs=lhs, rhs=rhs, residual=abs(lhs - rhs), tol=mp.mpf(args.tol), digits=ctx.digits,
    )
    return None, [rec]


def _cmd_lvalue(args, ctx):
    f = _need_f(args)
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    C = lvalues.build_C(f, Fraction(args.alpha))
    val = lvalues.l_at_negative_int(C, args.n)
    exact, dec = _exact_or_decimal(val, ctx.mp, ctx.digits)
    r = val.rational_value()
    row = {"f": args.f, "n": args.n, "alpha": args.alpha, "value": str(r) if r is not None else dec, "exact": exact}
    return [row], None


def _cmd_qmf(args, ctx):
    f = _need_f(args)
    mp = ctx.mp
    g = parse_gamma(args.gamma)
    if args.action == "cocycle":
        x = parse_number(args.x, mp)
        if x.imag == 0:
            x = x.real
        val = qmf.cocycle_r(f, Fraction(args.weight), g, x, ctx)
        return [{"f": args.f, "weight": args.weight, "gamma": str(g), "x": args.x, "r": format_complex(val, ctx.digits)}], None
    tol = mp.mpf(args.tol)
    if args.weight == "3/2":
        if args.alpha is None:
            raise UsageError("weight 3/2 needs --alpha")
        rec = qmf.qmf_residual_32(f, g, Fraction(args.alpha), ctx, tol=tol)
    else:
        if (args.alpha is None) == (args.tau is None):
            raise UsageError("weight 1/2 needs exactly one of --alpha or --tau")
        point = Fraction(args.alpha) if args.alpha is not None else parse_number(args.tau, mp)
        rec = qmf.qmf_residual_12(f, g, point, ctx, tol=tol)
        rec.inputs["point"] = args.alpha if args.alpha is not None else args.tau
    rec.inputs["f"] = args.f
    return None, [rec]


def _cmd_knots(args, ctx):
    mp = ctx.mp
    a = args.action
    if a == "strange":
        rec = qknots.strange_check(args.side, Fraction(args.alpha), ctx, tol=mp.mpf(args.tol))
        return None, [rec]
    if a == "jones":
        if args.t == 1:
            val = qknots.jones_t32(args.N, ctx=ctx)
        else:
            val = qknots.jones_t32t(args.t, args.N, ctx=ctx)
        row = {"knot": f"T(3,{2 ** args.t})", "N": args.N}
    else:
        zeta = _zeta(args)
        if a == "F":
            val = qknots.kz_F(zeta, ctx)
            row = {"series": "F"}
        elif a == "Ft":
            val = qknots.kz_Ft(args.t, zeta, ctx)
            row = {"series": "Ft", "t": args.t}
        else:
            val = qknots.hikami_X(args.m, args.l, zeta, ctx)
            row = {"series": "X", "m": args.m, "l": args.l}
        row["alpha"] = str(zeta.alpha)
    exact, dec = _exact_or_decimal(val, mp, ctx.digits)
    row.update(exact=exact, value=dec)
    return [row], None


def _cmd_modgroup(args, ctx):
    ok, w = modgroup.cusp_equivalent(args.M, parse_cusp(args.alpha), parse_cusp(args.beta))
    return [{"M": args.M, "alpha": args.alpha, "beta": args.beta, "equivalent": ok, "witness": str(w) if w else None}], None


def _cmd_suite(args, ctx):
    config = None
    if args.config:
        try:
            with open(args.config) as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        if not isinstance(config, dict):
            raise ConfigError("config must be a JSON object")
    jobs = getattr(args, "jobs", 1)
    if jobs < 1:
        raise UsageError("--jobs must be at least 1")
    records, _ = run_suite(args.name, config, ctx, jobs=jobs, tol=args.tol)
    return None, records


_COMMANDS = {
    "theta": _cmd_theta,
    "lvalue": _cmd_lvalue,
    "qmf": _cmd_qmf,
    "knots": _cmd_knots,
    "modgroup": _cmd_modgroup,
    "suite": _cmd_suite,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        prec = getattr(args, "prec", None)
        if prec is None:
            prec = _default_prec()
        if prec < load_defaults().get("min_digits", 20):
            raise UsageError(f"--prec {prec} is below the minimum")
        ctx = PrecisionContext(digits=prec)
        rows, records = _COMMANDS[args.command](args, ctx)
    except (UsageError, ConfigError, CoefficientError, ValueError, ArithmeticError, OSError) as exc:
        # the maths raise ValueError subclasses for out-of-domain input
        print(f"qmflab: error: {exc}", file=sys.stderr)
        return 2
    fmt = getattr(args, "format", "json")
    if records is not None:
        _emit_records(records, fmt, out)
        return 0 if all(r.passed for r in records) else 1
    _emit_rows(rows, fmt, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
