"""Verification suites: grids from ``defaults.json`` turned into records.

A suite expands its grid into picklable work items ``(kind, params)``, runs
them (in worker processes when ``jobs > 1``) and returns the records in grid
order together with an exit code.
"""

from __future__ import annotations

import copy
import json
import random
import re
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from importlib import resources

from .modgroup import MoebiusMap, RationalCusp, in_gamma_M, parse_gamma
from .numerics import PrecisionContext, parse_number
from .periodic import builder_from_name
from .records import VerificationRecord, timer

__all__ = [
    "ConfigError",
    "SUITE_NAMES",
    "load_defaults",
    "merge_config",
    "sample_gamma",
    "suite_items",
    "run_item",
    "run_suite",
]

SUITE_NAMES = ("transforms", "qmf32", "qmf12", "strange", "agreement", "decay")


class ConfigError(ValueError):
    """Bad suite name, builder, grid or precision."""


def load_defaults() -> dict:
    text = resources.files("qmflab").joinpath("defaults.json").read_text()
    return json.loads(text)


def merge_config(base: dict, override: dict) -> dict:
    """Recursive dict merge; ``override`` wins."""
    out = copy.deepcopy(base)
    for k, v in override.items():
        if isinstance(v, dict) and isinstance(out.get(k), dict):
            out[k] = merge_config(out[k], v)
        else:
            out[k] = v
    return out


def _with_M(expr: str, M: int) -> Fraction:
    # "2M" -> 2*M, "1/(4M)" -> 1/(4*M)
    s = re.sub(r"(\d*)M", lambda m: str(int(m.group(1) or 1) * M), str(expr))
    return Fraction(s.replace("(", "").replace(")", ""))


def sample_gamma(M: int, bound: int, rng: random.Random, negative_d: bool = False) -> MoebiusMap:
    """A pseudorandom element of ``Gamma_M`` with entries bounded by ``bound``.

    ``c`` is a nonzero multiple of ``2M`` and ``d = 1 mod 2M`` (negative when
    asked); ``a`` is the inverse of ``d`` mod ``c`` moved near zero, with one
    more shift by ``c`` when ``b`` must be even.
    """
    step = 2 * M
    if step > bound:
        raise ConfigError("entry bound too small for this M")
    for _ in range(10000):
        c = step * rng.randint(1, bound // step) * rng.choice((1, -1))
        if negative_d:
            d = 1 - step * rng.randint(1, (bound + 1) // step)
        else:
            d = 1 + step * rng.randint(0, (bound - 1) // step)
        if Fraction(c, d).denominator != abs(d) or abs(d) > bound:
            continue
        a = pow(d, -1, abs(c))
        if a > abs(c) // 2:
            a -= abs(c)
        b = (a * d - 1) // c
        if M % 2 and b % 2:
            a += c if abs(a + c) <= abs(a - c) else -c
            b = (a * d - 1) // c
        g = MoebiusMap(a, b, c, d)
        if max(map(abs, g.entries())) <= bound and in_gamma_M(M, g):
            return g
    raise ConfigError("could not sample a group element")


def _frac_str(x: Fraction) -> str:
    return str(x)


def _points(rng: random.Random, n: int, re_rng, im_rng) -> list[str]:
    lo, hi = (Fraction(v) for v in re_rng)
    ylo, yhi = (Fraction(v) for v in im_rng)
    out = []
    for _ in range(n):
        x = lo + (hi - lo) * Fraction(rng.randint(0, 1000), 1000)
        y = ylo + (yhi - ylo) * Fraction(rng.randint(0, 1000), 1000)
        out.append(f"{_frac_str(x)}+{_frac_str(y)}i")
    return out


def _builder(name: str):
    try:
        return builder_from_name(name)
    except (ValueError, KeyError, OSError) as exc:
        raise ConfigError(f"bad builder {name!r}: {exc}") from None


def suite_items(name: str, config: dict) -> list[tuple[str, dict]]:
    """Expand the grid of suite ``name`` into ``(kind, params)`` work items."""
    if name not in SUITE_NAMES:
        raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    try:
        cfg = config[name]
        return _EXPANDERS[name](cfg)
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"malformed config for suite {name!r}: {exc!r}") from None


def _expand_transforms(cfg):
    rng = random.Random(cfg["seed"])
    tol = cfg["tol"]
    items = []
    for fname in cfg["builders"]:
        f = _builder(fname)
        n = cfg["n_gamma"]
        neg = cfg["min_negative_d"]
        gammas = [sample_gamma(f.M, cfg["entry_bound"], rng, negative_d=k < neg) for k in range(n)]
        pts = _points(rng, cfg["n_points"], cfg["re_range"], cfg["im_range"])
        for g in gammas:
            for z in pts:
                items.append(("transform", {"f": fname, "gamma": str(g), "z": z, "tol": tol}))
    return items


def _expand_qmf32(cfg):
    items = []
    for fname in cfg["builders"]:
        M = _builder(fname).M
        for gt in cfg["gammas"]:
            g = MoebiusMap(*(int(_with_M(e, M)) for e in gt))
            for ct in cfg["cusps"]:
                alpha = RationalCusp.of(_with_M(ct, M))
                if g.c * alpha.p + g.d * alpha.q == 0:
                    continue  # g^-1(i oo) is excluded
                items.append(("qmf32", {"f": fname, "gamma": str(g), "alpha": str(alpha), "tol": cfg["tol"]}))
    return items


def _expand_qmf12(cfg):
    items = []
    for case in cfg["cases"]:
        fname = case["f"]
        _builder(fname)
        for gt in case["gammas"]:
            g = MoebiusMap(*(int(e) for e in gt))
            for p in case["points"]:
                items.append(("qmf12", {"f": fname, "gamma": str(g), "point": p, "tol": cfg["tol"]}))
            for ct in case["cusps"]:
                alpha = RationalCusp.of(Fraction(ct))
                if g.c * alpha.p + g.d * alpha.q == 0:
                    continue
                items.append(("qmf12", {"f": fname, "gamma": str(g), "point": str(alpha), "tol": cfg["tol"]}))
        for ct in case["cusps"]:
            items.append(("cusp_hat", {"f": fname, "alpha": ct, "tol": cfg["tol"]}))
    return items


def _expand_strange(cfg):
    items = []
    for side, alphas in cfg["cases"]:
        tol = cfg["tol_series"] if side == "V" else cfg["tol"]
        for a in alphas:
            items.append(("strange", {"side": side, "alpha": a, "tol": tol}))
    return items


def _expand_agreement(cfg):
    return [
        ("agreement", {"f": fname, "alpha": a, "R": cfg["R"], "tol": cfg["tol"]})
        for fname in cfg["builders"]
        for a in cfg["alphas"]
    ]


def _expand_decay(cfg):
    items = [("decay_constant", {"f": cfg["f"], "y": cfg["constant_y"], "tol": cfg["constant_tol"]})]
    for a in cfg["dual_alphas"]:
        items.append(("decay_dual", {"f": cfg["f"], "alpha": a, "y": cfg["dual_y"], "tol": cfg["tol"]}))
    return items


_EXPANDERS = {
    "transforms": _expand_transforms,
    "qmf32": _expand_qmf32,
    "qmf12": _expand_qmf12,
    "strange": _expand_strange,
    "agreement": _expand_agreement,
    "decay": _expand_decay,
}


# ---------------------------------------------------------------------------
# workers


def run_item(item: tuple[str, dict], digits: int) -> VerificationRecord:
    """Evaluate one work item at ``digits`` digits."""
    from . import lvalues, qknots, qmf, theta

    kind, p = item
    ctx = PrecisionContext(digits=digits)
    mp = ctx.mp
    tol = mp.mpf(p["tol"])
    if kind == "transform":
        f = builder_from_name(p["f"])
        with timer() as tm:
            lhs, rhs = theta.transform_sides(f, parse_gamma(p["gamma"]), parse_number(p["z"], mp), ctx)
        return VerificationRecord(
            test="transform", inputs={"f": p["f"], "gamma": p["gamma"], "z": p["z"]},
            lhs=lhs, rhs=rhs, residual=abs(lhs - rhs), tol=tol, digits=digits, runtime_ms=tm["ms"],
        )
    if kind == "qmf32":
        f = builder_from_name(p["f"])
        rec = qmf.qmf_residual_32(f, parse_gamma(p["gamma"]), Fraction(p["alpha"]), ctx, tol=tol)
        rec.inputs["f"] = p["f"]
        return rec
    if kind == "qmf12":
        f = builder_from_name(p["f"])
        pt = p["point"]
        tau = parse_number(pt, mp) if "i" in pt else Fraction(pt)
        rec = qmf.qmf_residual_12(f, parse_gamma(p["gamma"]), tau, ctx, tol=tol)
        rec.inputs.update(f=p["f"], point=pt)
        return rec
    if kind == "cusp_hat":
        f = builder_from_name(p["f"])
        alpha = Fraction(p["alpha"])
        with timer() as tm:
            lhs = lvalues.radial_value(f, Fraction(1, 2), alpha, ctx)
            rhs = qmf.hat_Theta(f, alpha, ctx, method="quad")
        return VerificationRecord(
            test="theta_equals_hat", inputs={"f": p["f"], "alpha": p["alpha"]},
            lhs=lhs, rhs=rhs, residual=abs(lhs - rhs), tol=tol, digits=digits, runtime_ms=tm["ms"],
        )
    if kind == "strange":
        return qknots.strange_check(p["side"], Fraction(p["alpha"]), ctx, tol=tol)
    if kind == "agreement":
        f = builder_from_name(p["f"])
        rec = qmf.infinite_order_agreement(f, Fraction(p["alpha"]), p["R"], ctx, tol=tol)
        rec.inputs["f"] = p["f"]
        return rec
    if kind == "decay_constant":
        f = builder_from_name(p["f"])
        with timer() as tm:
            res = theta.decay_at_rational(f, 0, Fraction(p["y"]), ctx)
        return VerificationRecord(
            test="decay_constant", inputs={"f": p["f"], "y": p["y"]},
            lhs=res.normalized, rhs=res.c_f, residual=abs(res.normalized - res.c_f),
            tol=tol, digits=digits, runtime_ms=tm["ms"],
        )
    if kind == "decay_dual":
        f = builder_from_name(p["f"])
        with timer() as tm:
            res = theta.decay_at_rational(f, Fraction(p["alpha"]), Fraction(p["y"]), ctx)
        return VerificationRecord(
            test="decay_dual", inputs={"f": p["f"], "alpha": p["alpha"], "y": p["y"]},
            lhs=res.dual, rhs=res.direct, residual=abs(res.difference),
            tol=tol, digits=digits, runtime_ms=tm["ms"],
        )
    raise ConfigError(f"unknown item kind {kind!r}")


def _pack(x):
    # numbers from a private mp context do not pickle; ship the raw tuples
    if hasattr(x, "_mpc_"):
        return ("mpc", x._mpc_)
    if hasattr(x, "_mpf_"):
        return ("mpf", x._mpf_)
    return ("raw", x)


def _unpack(packed, mp):
    kind, v = packed
    if kind == "mpc":
        return mp.make_mpc(v)
    if kind == "mpf":
        return mp.make_mpf(v)
    return v


_NUMERIC_FIELDS = ("lhs", "rhs", "residual", "tol")


def _run_star(args):
    rec = run_item(*args)
    for name in _NUMERIC_FIELDS:
        setattr(rec, name, _pack(getattr(rec, name)))
    return rec


def run_suite(name: str, config: dict | None = None, ctx: PrecisionContext | None = None, jobs: int = 1, tol=None):
    """Run suite ``name`` and return ``(records, exit_code)``.

    ``config`` is merged over the packaged defaults.  ``tol`` overrides every
    tolerance of the suite.  The exit code is 0 when every record passes and 1
    otherwise; configuration problems raise :class:`ConfigError`.
    """
    ctx = ctx or PrecisionContext()
    cfg = load_defaults() if config is None else merge_config(load_defaults(), config)
    if ctx.digits < cfg.get("min_digits", 20):
        raise ConfigError(f"precision {ctx.digits} is below the minimum {cfg['min_digits']}")
    items = suite_items(name, cfg)
    if tol is not None:
        for _, p in items:
            p["tol"] = str(tol)
    for _, p in items:
        try:
            ctx.mp.mpf(p["tol"])
        except (TypeError, ValueError):
            raise ConfigError(f"bad tolerance {p['tol']!r} in suite {name!r}") from None
    args = [(it, ctx.digits) for it in items]
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            records = list(ex.map(_run_star, args))
    else:
        records = [_run_star(a) for a in args]
    for r in records:
        for f in _NUMERIC_FIELDS:
            setattr(r, f, _unpack(getattr(r, f), ctx.mp))
        r.suite = name
    return records, 0 if all(r.passed for r in records) else 1
