"""Command-line interface.

Subcommands expose the curve samplers, the flow integrator, sign
classification, the fixed-point report and the verification suites, and
emit CSV or JSON artifacts suitable for plotting.

Exit codes form a stable contract: 0 on success, 1 when a verification
suite fails, 2 on usage or domain errors, 3 when an integration was
truncated by blow-up or step failure (the partial trajectory is still
written).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import curves, output
from .core import (
    DomainError,
    Metric,
    SpaceParams,
    WallachFlowError,
)
from .curvature import classify
from .equilibria import fixed_points
from .flow import (
    BlowUpError,
    IntegratorOptions,
    StepFailureError,
    detect_crossings,
    integrate,
)
from .regions import sigma_positive_ricci, sigma_positive_sectional
from .verify import SUITE_NAMES, run_suite

__all__ = ["main", "console_main"]

_CURVE_NAMES = (
    "s1", "s2", "s3",
    "r1i", "r1j", "r2i", "r2j", "r3i", "r3j",
    "l1", "l2", "l3",
    "I1", "I2", "I3",
)


def parse_a(text: str) -> float:
    """Parse a space parameter; accepts decimals and exact rationals like 1/6."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        try:
            return int(num) / int(den)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"bad rational literal {text!r}") from exc
    try:
        return float(text)
    except ValueError as exc:
        raise DomainError(f"bad real literal {text!r}") from exc


def _parse_triple(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise DomainError(f"expected three comma-separated reals, got {text!r}")
    return tuple(float(p) for p in parts)  # type: ignore[return-value]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wallachflow",
        description="Normalized Ricci flow on generalized Wallach spaces: "
        "curves, trajectories, classification and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("sample-curve", help="sample one named curve to CSV or JSON")
    sc.add_argument("--curve", required=True, choices=_CURVE_NAMES)
    sc.add_argument("--a", type=parse_a, default=None)
    sc.add_argument("--t-min", type=float, default=None)
    sc.add_argument("--t-max", type=float, default=None)
    sc.add_argument("--n", type=int, default=200)
    sc.add_argument("--log-spacing", action=argparse.BooleanOptionalAction, default=True)
    sc.add_argument("--untrimmed", action="store_true")
    sc.add_argument("--force-kahler", action="store_true")
    sc.add_argument("--out", default=None)
    sc.add_argument("--format", choices=("csv", "json"), default="csv")

    ig = sub.add_parser("integrate", help="integrate the reduced flow from a start point")
    ig.add_argument("--x0", required=True, type=_parse_triple)
    ig.add_argument("--a", required=True, type=parse_a)
    ig.add_argument("--t-end", required=True, type=float)
    ig.add_argument("--method", choices=("rk4", "rk45"), default="rk45")
    ig.add_argument("--dt", type=float, default=None)
    ig.add_argument("--rel-tol", type=float, default=1e-10)
    ig.add_argument("--renormalize", action="store_true")
    ig.add_argument("--events", action="store_true")
    ig.add_argument("--store-every", type=int, default=1)
    ig.add_argument("--out", default=None)
    ig.add_argument("--format", choices=("csv", "json"), default="csv")

    cl = sub.add_parser("classify", help="sign-classify one metric")
    cl.add_argument("--x", required=True, type=_parse_triple)
    cl.add_argument("--a", required=True, type=parse_a)

    eq = sub.add_parser("equilibria", help="report all fixed points for one parameter")
    eq.add_argument("--a", required=True, type=parse_a)
    eq.add_argument("--out", default=None)

    ve = sub.add_parser("verify", help="run a named verification suite")
    ve.add_argument("--suite", required=True, choices=SUITE_NAMES)
    ve.add_argument("--a", default=None, help="value or comma-separated sweep; rationals allowed")
    ve.add_argument("--seed", type=int, default=0)
    ve.add_argument("--out", default=None)
    return parser


def _curve_defaults(cid: curves.CurveId, a: float | None, untrimmed: bool) -> tuple[float, float]:
    if cid.family is curves.Family.S:
        return 1e-2, 1e2
    if cid.family is curves.Family.R:
        if untrimmed:
            raise DomainError("untrimmed sampling needs explicit --t-min and --t-max")
        return a * 1e-3, a
    return 5e-2, 2e1


def _cmd_sample_curve(args) -> int:
    cid = curves.CurveId.from_string(args.curve)
    params = None
    if cid.family in (curves.Family.R, curves.Family.L):
        if args.a is None:
            raise DomainError(f"curve {args.curve} needs --a")
        params = SpaceParams(args.a)
    if args.n < 1:
        raise DomainError("--n must be at least 1")
    t_min, t_max = args.t_min, args.t_max
    if t_min is None or t_max is None:
        lo, hi = _curve_defaults(cid, args.a, args.untrimmed)
        t_min = lo if t_min is None else t_min
        t_max = hi if t_max is None else t_max
    if not 0.0 < t_min <= t_max:
        raise DomainError("need 0 < t-min <= t-max")
    if args.n == 1:
        ts = np.array([t_min])
    elif args.log_spacing:
        ts = np.geomspace(t_min, t_max, args.n)
    else:
        ts = np.linspace(t_min, t_max, args.n)
    points = curves.sample_curve(
        cid, ts, params=params, untrimmed=args.untrimmed, force_kahler=args.force_kahler
    )
    if args.format == "csv":
        output.write_text(args.out, output.curve_csv(ts, points))
    else:
        record = output.output_record(output.curve_payload(str(cid), ts, points), params)
        output.write_text(args.out, output.dump_record(record))
    return 0


def _cmd_integrate(args) -> int:
    m0 = Metric(*args.x0)
    params = SpaceParams(args.a)
    options = IntegratorOptions(
        t_end=args.t_end,
        method=args.method,
        dt=args.dt,
        rel_tol=args.rel_tol,
        abs_tol=args.rel_tol,
        renormalize_each_step=args.renormalize,
        store_every=args.store_every,
    )
    truncated = False
    try:
        traj = integrate(m0, params, options)
    except (BlowUpError, StepFailureError) as err:
        traj = err.trajectory
        truncated = True
        print(f"integration truncated: {err}", file=sys.stderr)
    if args.events and len(traj) >= 2:
        traj.events = detect_crossings(traj, params)
    if args.format == "csv":
        output.write_text(args.out, output.trajectory_csv(traj))
        if args.events and args.out is not None:
            for event in traj.events:
                print(f"event {event.kind} k={event.k} t={event.t:.12g}", file=sys.stderr)
    else:
        record = output.output_record(output.trajectory_payload(traj, truncated), params)
        output.write_text(args.out, output.dump_record(record))
    return 3 if truncated else 0


def _cmd_classify(args) -> int:
    signs = classify(Metric(*args.x), SpaceParams(args.a))
    record = output.output_record(output.classify_payload(signs), SpaceParams(args.a))
    output.write_text(None, output.dump_record(record))
    return 0


def _cmd_equilibria(args) -> int:
    params = SpaceParams(args.a)
    points = fixed_points(params)
    memberships = [
        {
            "in_sigma_r": bool(sigma_positive_ricci(eq.m, params)),
            "in_sigma_s": bool(sigma_positive_sectional(eq.m)),
        }
        for eq in points
    ]
    record = output.output_record(output.equilibria_payload(points, memberships), params)
    output.write_text(args.out, output.dump_record(record))
    return 0


def _cmd_verify(args) -> int:
    a_values = None
    if args.a is not None:
        a_values = tuple(parse_a(part) for part in str(args.a).split(","))
    report = run_suite(args.suite, a_values=a_values, seed=args.seed)
    for check in report.checks:
        status = "ok  " if check.passed else "FAIL"
        line = f"{status} {check.name}: measured={check.measured:.6g} threshold={check.threshold:.6g}"
        if check.note:
            line += f" ({check.note})"
        print(line)
    print(f"suite {report.suite}: {'PASS' if report.passed else 'FAIL'}")
    if args.out is not None:
        record = output.output_record(output.verify_payload(report))
        output.write_text(args.out, output.dump_record(record))
    return 0 if report.passed else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    handlers = {
        "sample-curve": _cmd_sample_curve,
        "integrate": _cmd_integrate,
        "classify": _cmd_classify,
        "equilibria": _cmd_equilibria,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except WallachFlowError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def console_main() -> None:
    raise SystemExit(main())
