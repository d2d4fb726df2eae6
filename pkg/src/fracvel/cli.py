"""``fracvel`` command-line front end.

Exit codes: 0 success, 1 computation or domain error, 2 usage or parse
error, 3 acceptance failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import acceptance
from .dyadic import DyadicRational
from .errors import FracvelError, ParseError
from .expr import parse_function, print_function
from .functions import evaluate
from .ifs import (
    DeRham,
    IFSSpec,
    curve_rows,
    derham_eval_exact,
    neidinger_velocity_rows,
    velocity_via_scale_sequence,
)
from .io import csv_text, curve_table, json_text
from .langevin import PathSpec, generate_path, partition_scaling_check, path_holder_exponent
from .lfd import QuadratureConfig, equivalence_report, kg_lfd, kg_lfd_bv, rl_derivative, rl_integral
from .velocity import EstimatorSchedule, estimate_velocity, scale_velocity, scale_velocity_limit

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_ACCEPTANCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 itself; route through main
        raise UsageError(f"{self.prog}: {message}")


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _schedule(args) -> EstimatorSchedule:
    return EstimatorSchedule(eps0=args.eps0, ratio=args.ratio, levels=args.levels, value_tol=args.value_tol)


def _points(args) -> list[float]:
    if args.grid is not None:
        lo, hi = args.lo, args.hi
        return np.linspace(lo, hi, args.grid + 1).tolist()
    if args.x is None:
        raise UsageError("give --x or --grid")
    return args.x


def _emit(args, header, rows, payload) -> str:
    if args.format == "json":
        return json_text(payload)
    return csv_text(header, rows)


# ---------------------------------------------------------------- commands


def cmd_eval(args) -> str:
    expr = parse_function(args.fn)
    if args.exact:
        if not isinstance(expr.fn, DeRham):
            raise UsageError("--exact needs a derham(a) function")
        if not args.xs:
            raise UsageError("--exact needs dyadic --xs values such as 3/2^2")
        a = Fraction(expr.fn.a)
        rows = []
        for text in args.xs:
            d = DyadicRational.parse(text)
            v = derham_eval_exact(a, d)
            rows.append((d.num, d.exp, float(d), float(v), str(v)))
        header = ["x_num", "x_exp", "x_real", "value", "value_exact"]
        payload = {"fn": print_function(expr), "rows": [dict(zip(header, r)) for r in rows]}
        return _emit(args, header, rows, payload)
    xs = np.asarray(_points(args))
    vals = evaluate(expr.fn, xs)
    rows = list(zip(xs.tolist(), vals.tolist()))
    payload = {"fn": print_function(expr), "x": xs, "value": vals}
    return _emit(args, ["x", "value"], rows, payload)


_EST_HEADER = ["x", "side", "beta", "classification", "value", "fitted_slope", "residual"]


def _est_row(x, e):
    return (x, e.side, e.beta, e.classification, e.value, e.fitted_slope, e.residual)


def _sides(side: str) -> list[str]:
    return ["forward", "backward"] if side == "both" else [side]


def cmd_velocity(args) -> str:
    expr = parse_function(args.fn)
    sched = _schedule(args)
    ests = [(x, estimate_velocity(expr.fn, x, args.beta, s, sched)) for x in _points(args) for s in _sides(args.side)]
    rows = [_est_row(x, e) for x, e in ests]
    if len(ests) == 1:
        x, e = ests[0]
        d = e.to_dict()
        if not args.samples:
            d.pop("samples", None)
        payload = {"fn": print_function(expr), "x": x, **d}
    else:
        payload = {"fn": print_function(expr), "results": [{"x": x, **_trim(e.to_dict(), args)} for x, e in ests]}
    return _emit(args, _EST_HEADER, rows, payload)


def _trim(d: dict, args) -> dict:
    if not args.samples:
        d.pop("samples", None)
    return d


def cmd_scale_velocity(args) -> str:
    expr = parse_function(args.fn)
    order = 1.0 - args.beta
    if args.eps is not None:
        rows = [(x, s, args.eps, scale_velocity(expr.fn, x, args.eps, order, s)) for x in _points(args) for s in _sides(args.side)]
        payload = {"fn": print_function(expr), "order": order, "rows": [dict(zip(["x", "side", "eps", "value"], r)) for r in rows]}
        return _emit(args, ["x", "side", "eps", "value"], rows, payload)
    sched = _schedule(args)
    ests = [(x, scale_velocity_limit(expr.fn, x, order, s, sched)) for x in _points(args) for s in _sides(args.side)]
    payload = {"fn": print_function(expr), "order": order, "results": [{"x": x, **_trim(e.to_dict(), args)} for x, e in ests]}
    return _emit(args, _EST_HEADER, [_est_row(x, e) for x, e in ests], payload)


def _quadrature(args) -> QuadratureConfig:
    return QuadratureConfig(nodes=args.nodes, scheme=args.scheme, h_schedule=_schedule(args), rtol=args.rtol)


def cmd_lfd(args) -> str:
    expr = parse_function(args.fn)
    q = _quadrature(args)
    if args.bv:
        res = kg_lfd_bv(expr.fn, None, args.a, args.beta, q)
    else:
        res = kg_lfd(expr.fn, args.a, args.beta, args.side, q)
    payload = {"fn": print_function(expr), "a": args.a, "lfd": _lfd_dict(res, args)}
    ratio, reason = math.nan, None
    try:
        rep = equivalence_report(expr.fn, args.a, args.beta, args.side, _schedule(args), q)
        ratio = rep.gamma_ratio
        payload["velocity"] = _trim(rep.velocity.to_dict(), args)
    except FracvelError as exc:
        reason = str(exc)
    payload["gamma_ratio"] = ratio
    payload["gamma_1_plus_beta"] = math.gamma(1 + args.beta)
    if reason:
        payload["ratio_undefined"] = reason
    header = ["a", "side", "beta", "classification", "value", "gamma_ratio"]
    rows = [(args.a, res.side, res.beta, res.classification, res.value, ratio)]
    return _emit(args, header, rows, payload)


def _lfd_dict(res, args) -> dict:
    d = res.to_dict()
    if not args.samples:
        d.pop("m_samples", None)
    return d


def cmd_rl(args) -> str:
    expr = parse_function(args.fn)
    q = _quadrature(args)
    op = rl_integral if args.op == "integral" else rl_derivative
    rows = [(x, args.op, args.beta, op(expr.fn, args.a, x, args.beta, args.side, q)) for x in _points(args)]
    payload = {"fn": print_function(expr), "a": args.a, "side": args.side, "rows": [dict(zip(["x", "op", "beta", "value"], r)) for r in rows]}
    return _emit(args, ["x", "op", "beta", "value"], rows, payload)


def cmd_ifs(args) -> str:
    if args.velocity:
        if args.beta is None:
            raise UsageError("--velocity needs --beta")
        if args.family == "neidinger":
            rows = neidinger_velocity_rows(args.a, args.beta, args.depth, args.grid, args.swap_parity)
        else:
            spec = IFSSpec(args.family, args.a, args.depth, args.swap_parity)
            x = np.arange(args.grid) / args.grid  # x = 1 has no forward neighbour
            g = args.grid.bit_length() - 1
            rows = [
                (DyadicRational.make(k, g), velocity_via_scale_sequence(spec, float(v), args.beta, args.depth).numeric_value())
                for k, v in enumerate(x)
            ]
    else:
        rows = curve_rows(args.family, args.a, args.depth, args.grid, args.swap_parity)
    header, table = curve_table(rows, args.columns)
    payload = {
        "family": args.family,
        "a": args.a,
        "depth": args.depth,
        "swap_parity": args.swap_parity,
        "beta": args.beta if args.velocity else None,
        "rows": [dict(zip(header, r)) for r in table],
    }
    return _emit(args, header, table, payload)


def cmd_langevin(args) -> str:
    spec = PathSpec(args.beta, args.steps, args.dt, args.drift, args.sigma, args.oscillation, args.seed)
    path = generate_path(spec)
    if args.format == "csv":
        return csv_text(["t", "x"], path.rows())
    expo = path_holder_exponent(path, args.probes)
    checks = []
    for N in args.N:
        c = partition_scaling_check(args.sigma, args.beta, N, "constant")
        alt = partition_scaling_check(args.sigma, args.beta, N, "alternating")
        checks.append({"N": N, "lhs": c.lhs, "rhs": c.rhs, "ratio": c.ratio, "zero": c.zero, "alternating_ratio": alt.ratio, "expected": N ** (1 - args.beta)})
    payload = {
        "spec": {"beta": args.beta, "steps": args.steps, "dt": args.dt, "drift": args.drift, "sigma": args.sigma, "oscillation": args.oscillation, "seed": args.seed},
        "exponent": expo,
        "exponent_defined": not math.isnan(expo),
        "scaling": checks,
    }
    return json_text(payload)


def cmd_verify(args) -> tuple[str, int]:
    results = acceptance.run_all()
    ok = all(r.passed for r in results)
    if args.format == "json":
        text = json_text({"passed": ok, "criteria": [{"id": r.id, "title": r.title, "passed": r.passed, "detail": r.detail} for r in results]})
    else:
        lines = [r.line() for r in results]
        lines.append(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
        text = "\n".join(lines) + "\n"
    return text, EXIT_OK if ok else EXIT_ACCEPTANCE


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fracvel", description="Fractional velocities, singular functions and local fractional derivatives.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="json")
    common.add_argument("--out", help="write output to PATH instead of stdout")

    points = _Parser(add_help=False)
    points.add_argument("--x", type=_floats, help="comma-separated evaluation points")
    points.add_argument("--grid", type=int, help="evaluate on GRID+1 equispaced points in [lo, hi]")
    points.add_argument("--lo", type=float, default=0.0)
    points.add_argument("--hi", type=float, default=1.0)

    sched = _Parser(add_help=False)
    sched.add_argument("--eps0", type=float, default=2.0**-4)
    sched.add_argument("--ratio", type=float, default=0.5)
    sched.add_argument("--levels", type=int, default=40)
    sched.add_argument("--value-tol", type=float, default=1e-4)
    sched.add_argument("--samples", action="store_true", help="include the sample sequence in JSON output")

    quad = _Parser(add_help=False)
    quad.add_argument("--nodes", type=int, default=16)
    quad.add_argument("--scheme", choices=("substitution", "jacobi_weight"), default="substitution")
    quad.add_argument("--rtol", type=float, default=1e-11)

    e = sub.add_parser("eval", parents=[common, points], help="evaluate a function")
    e.add_argument("--fn", required=True)
    e.add_argument("--exact", action="store_true", help="exact De Rham values at dyadic --xs")
    e.add_argument("--xs", nargs="*", help="dyadic points such as 3/2^2 (with --exact)")
    e.set_defaults(func=cmd_eval)

    v = sub.add_parser("velocity", parents=[common, points, sched], help="estimate a fractional velocity")
    v.add_argument("--fn", required=True)
    v.add_argument("--beta", type=float, required=True)
    v.add_argument("--side", choices=("forward", "backward", "both"), default="forward")
    v.set_defaults(func=cmd_velocity)

    s = sub.add_parser("scale-velocity", parents=[common, points, sched], help="scale velocity (limit or single eps)")
    s.add_argument("--fn", required=True)
    s.add_argument("--beta", type=float, required=True, help="velocity order; the operator order is 1-beta")
    s.add_argument("--eps", type=float, help="evaluate at a single scale instead of the limit")
    s.add_argument("--side", choices=("forward", "backward", "both"), default="forward")
    s.set_defaults(func=cmd_scale_velocity)

    lf = sub.add_parser("lfd", parents=[common, sched, quad], help="local fractional derivative and equivalence report")
    lf.add_argument("--fn", required=True)
    lf.add_argument("--a", type=float, required=True)
    lf.add_argument("--beta", type=float, required=True)
    lf.add_argument("--side", choices=("forward", "backward"), default="forward")
    lf.add_argument("--bv", action="store_true", help="use the derivative (bounded-variation) form")
    lf.set_defaults(func=cmd_lfd)

    r = sub.add_parser("rl", parents=[common, points, sched, quad], help="Riemann-Liouville integral or derivative")
    r.add_argument("--fn", required=True)
    r.add_argument("--a", type=float, default=0.0, help="terminal point")
    r.add_argument("--beta", type=float, required=True)
    r.add_argument("--op", choices=("integral", "derivative"), default="integral")
    r.add_argument("--side", choices=("forward", "backward"), default="forward")
    r.set_defaults(func=cmd_rl)

    i = sub.add_parser("ifs", parents=[common], help="De Rham / Neidinger curves and velocities on a dyadic grid")
    i.add_argument("--family", choices=("derham", "derham_reparam", "neidinger"), required=True)
    i.add_argument("--a", type=float, required=True)
    i.add_argument("--depth", type=int, required=True)
    i.add_argument("--grid", type=int, default=256, help="number of intervals (power of two)")
    i.add_argument("--swap-parity", choices=("even", "odd", "none"), default="even")
    i.add_argument("--velocity", action="store_true", help="emit velocities instead of the curve")
    i.add_argument("--beta", type=float)
    i.add_argument("--columns", choices=("short", "full"), default="short")
    i.set_defaults(func=cmd_ifs)

    lg = sub.add_parser("langevin", parents=[common], help="fractional Langevin path (csv) or summary (json)")
    lg.add_argument("--beta", type=float, required=True)
    lg.add_argument("--steps", type=int, default=1 << 16)
    lg.add_argument("--dt", type=float, default=2.0**-16)
    lg.add_argument("--drift", type=float, default=0.0)
    lg.add_argument("--sigma", type=float, default=1.0)
    lg.add_argument("--oscillation", choices=("alternating", "random_sign", "constant"), default="alternating")
    lg.add_argument("--seed", type=int, default=0)
    lg.add_argument("--probes", type=int, default=64)
    lg.add_argument("--N", type=lambda t: [int(v) for v in t.split(",")], default=[4, 16, 64])
    lg.set_defaults(func=cmd_langevin)

    vf = sub.add_parser("verify", help="run the acceptance suite")
    vf.add_argument("--format", choices=("table", "json"), default="table")
    vf.add_argument("--out")
    vf.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result = args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FracvelError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    text, code = result if isinstance(result, tuple) else (result, EXIT_OK)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
