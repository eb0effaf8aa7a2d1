"""Command-line interface.

Subcommands: capacity, sweep, ellipsoid, oracle, periodic, convex,
interchange.  Results are printed as JSON; sweep/ellipsoid write CSV or JSON
files (12 significant digits, deterministic row order) and can additionally
render a matplotlib figure with --plot.

Exit codes: 0 success, 2 bad flags, 3 numeric failure, 4 unwritable output.
The QCAP_TOL environment variable overrides the default tolerance 1e-10.

Memory-channel branches use the mini-grammar ``family:param[:param]``,
e.g. ``ad:0.2``, ``dep:0.3``, ``gad:0.5:0.3``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

from .channels import (
    AmplitudeDamping,
    ChannelFamily,
    Depolarizing,
    GeneralizedAmplitudeDamping,
    bloch_image,
)
from .holevo import chi_curve
from .memory import (
    MemorySpec,
    convex_combination_capacity,
    interchange_report,
    minmax_diagnostic,
    periodic_capacity,
    periodic_capacity_upper,
)
from .optimize import OracleConfig, capacity, oracle_capacity
from .qstate import BlochVector

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class SweepRequest:
    family: str
    fixed: dict
    var: str
    lo: float
    hi: float
    steps: int
    out: str
    format: str

    def __post_init__(self):
        if self.steps < 2:
            raise CliError("--steps must be >= 2", EXIT_USAGE)
        if not self.lo < self.hi:
            raise CliError("--from must be < --to", EXIT_USAGE)
        if self.format not in ("csv", "json"):
            raise CliError(f"unknown format {self.format!r}", EXIT_USAGE)


def default_tol() -> float:
    raw = os.environ.get("QCAP_TOL")
    if raw is None:
        return 1e-10
    try:
        tol = float(raw)
    except ValueError:
        raise CliError(f"QCAP_TOL={raw!r} is not a number", EXIT_USAGE)
    if tol <= 0:
        raise CliError("QCAP_TOL must be positive", EXIT_USAGE)
    return tol


def parse_branch(text: str) -> ChannelFamily:
    parts = text.split(":")
    name = parts[0].lower()
    try:
        params = [float(x) for x in parts[1:]]
    except ValueError:
        raise CliError(f"bad branch parameter in {text!r}", EXIT_USAGE)
    try:
        if name == "ad" and len(params) == 1:
            return AmplitudeDamping(params[0])
        if name == "gad" and len(params) == 2:
            return GeneralizedAmplitudeDamping(params[0], params[1])
        if name == "dep" and len(params) == 1:
            return Depolarizing(params[0])
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE)
    raise CliError(f"cannot parse branch spec {text!r}", EXIT_USAGE)


def family_from_flags(args) -> ChannelFamily:
    name = (args.channel or "").lower()
    try:
        if name == "ad":
            if args.gamma is None:
                raise CliError("--channel ad requires --gamma", EXIT_USAGE)
            return AmplitudeDamping(args.gamma)
        if name == "gad":
            if args.gamma is None or args.p is None:
                raise CliError("--channel gad requires --gamma and --p", EXIT_USAGE)
            return GeneralizedAmplitudeDamping(args.gamma, args.p)
        if name == "dep":
            if args.lam is None:
                raise CliError("--channel dep requires --lambda", EXIT_USAGE)
            return Depolarizing(args.lam)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE)
    raise CliError(f"unknown channel {args.channel!r}", EXIT_USAGE)


def family_label(family: ChannelFamily) -> dict:
    if isinstance(family, AmplitudeDamping):
        return {"channel": "ad", "params": {"gamma": family.gamma}}
    if isinstance(family, GeneralizedAmplitudeDamping):
        return {"channel": "gad", "params": {"gamma": family.gamma, "p": family.p}}
    if isinstance(family, Depolarizing):
        return {"channel": "dep", "params": {"lambda": family.lam}}
    return {"channel": "generic", "params": {}}


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def _write_rows(rows: list[dict], columns: list[str], out: str, fmt: str) -> None:
    try:
        with open(out, "w", newline="") as fh:
            if fmt == "csv":
                fh.write(",".join(columns) + "\n")
                for row in rows:
                    fh.write(",".join(_fmt(row[c]) for c in columns) + "\n")
            else:
                fh.write(json.dumps(
                    [{c: float(_fmt(row[c])) for c in columns} for row in rows],
                    indent=2,
                ))
                fh.write("\n")
    except OSError as exc:
        raise CliError(f"cannot write {out!r}: {exc}", EXIT_IO)


def _emit(record: dict) -> None:
    json.dump(record, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_capacity(args) -> int:
    tol = default_tol()
    if args.periodic:
        branches = tuple(parse_branch(b) for b in args.periodic)
        spec = MemorySpec(branches, "periodic")
        res = periodic_capacity(spec, tol)
        record = {"channel": "periodic", "branches": args.periodic}
    elif args.convex:
        branches = tuple(parse_branch(b) for b in args.convex)
        spec = MemorySpec(branches, "convex")
        res = convex_combination_capacity(spec, tol)
        record = {"channel": "convex", "branches": args.convex}
    else:
        family = family_from_flags(args)
        res = capacity(family, tol)
        record = family_label(family)
    record.update(
        a_star=res.a_star,
        capacity_bits=res.capacity_bits,
        residual=res.residual,
        method=res.method,
    )
    _emit(record)
    return EXIT_OK


def run_sweep(req: SweepRequest, tol: float) -> list[dict]:
    rows = []
    for i in range(req.steps):
        v = req.lo + (req.hi - req.lo) * i / (req.steps - 1)
        fam = _sweep_family(req, v)
        if req.var == "a":
            rows.append({
                "param": v,
                "a_star": v,
                "capacity_bits": chi_curve(fam, v),
                "chi_at_half": chi_curve(fam, 0.5),
            })
        else:
            res = capacity(fam, tol)
            rows.append({
                "param": v,
                "a_star": res.a_star,
                "capacity_bits": res.capacity_bits,
                "chi_at_half": chi_curve(fam, 0.5),
            })
    return rows


def _sweep_family(req: SweepRequest, v: float) -> ChannelFamily:
    fixed = dict(req.fixed)
    if req.var != "a":
        fixed[req.var] = v
    try:
        if req.family == "ad":
            return AmplitudeDamping(fixed["gamma"])
        if req.family == "gad":
            return GeneralizedAmplitudeDamping(fixed["gamma"], fixed["p"])
        if req.family == "dep":
            return Depolarizing(fixed["lambda"])
    except KeyError as exc:
        raise CliError(f"sweep over {req.family!r} is missing fixed {exc}", EXIT_USAGE)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_NUMERIC)
    raise CliError(f"unknown family {req.family!r}", EXIT_USAGE)


def cmd_sweep(args) -> int:
    fixed = {}
    if args.gamma is not None:
        fixed["gamma"] = args.gamma
    if args.lam is not None:
        fixed["lambda"] = args.lam
    if args.p is not None:
        fixed["p"] = args.p
    var = {"lambda": "lambda"}.get(args.var, args.var)
    req = SweepRequest(
        family=(args.channel or "").lower(),
        fixed=fixed,
        var=var,
        lo=args.lo,
        hi=args.hi,
        steps=args.steps,
        out=args.out,
        format=args.format,
    )
    rows = run_sweep(req, default_tol())
    _write_rows(rows, ["param", "a_star", "capacity_bits", "chi_at_half"],
                req.out, req.format)
    if args.plot:
        from .plotting import render_sweep_figure
        try:
            render_sweep_figure(rows, req.var, args.plot)
        except OSError as exc:
            raise CliError(f"cannot write {args.plot!r}: {exc}", EXIT_IO)
    return EXIT_OK


def fibonacci_sphere(n: int) -> list[BlochVector]:
    """n roughly uniform points on the unit sphere (golden-angle spiral)."""
    golden = math.pi * (3.0 - math.sqrt(5.0))
    points = []
    for i in range(n):
        z = 1.0 - 2.0 * (i + 0.5) / n
        r = math.sqrt(max(1.0 - z * z, 0.0))
        th = golden * i
        points.append(BlochVector(r * math.cos(th), r * math.sin(th), z))
    return points


def cmd_ellipsoid(args) -> int:
    if not 0.0 <= args.gamma <= 1.0:
        raise CliError("--gamma must be in [0, 1]", EXIT_USAGE)
    if args.n < 1:
        raise CliError("--n must be >= 1", EXIT_USAGE)
    fam = AmplitudeDamping(args.gamma)
    res = capacity(fam, default_tol())
    a = res.a_star
    optimal = [
        BlochVector(2 * math.sqrt(a * (1 - a)), 0.0, 2 * a - 1),
        BlochVector(-2 * math.sqrt(a * (1 - a)), 0.0, 2 * a - 1),
    ]
    rows = []
    for v, is_opt in [(p, 0) for p in fibonacci_sphere(args.n)] + [
        (p, 1) for p in optimal
    ]:
        w = bloch_image(fam, v)
        rows.append({
            "x": v.x, "y": v.y, "z": v.z,
            "x_out": w.x, "y_out": w.y, "z_out": w.z,
            "is_optimal": is_opt,
        })
    _write_rows(rows, ["x", "y", "z", "x_out", "y_out", "z_out", "is_optimal"],
                args.out, args.format)
    if args.plot:
        from .plotting import render_ellipsoid_figure
        try:
            render_ellipsoid_figure(rows, args.plot)
        except OSError as exc:
            raise CliError(f"cannot write {args.plot!r}: {exc}", EXIT_IO)
    return EXIT_OK


def cmd_oracle(args) -> int:
    family = family_from_flags(args)
    cfg = OracleConfig(num_states=args.states, restarts=args.restarts, seed=args.seed)
    result = oracle_capacity(family, cfg)
    closed = capacity(family, default_tol()).capacity_bits
    record = family_label(family)
    record.update(
        chi_hat=result.chi_hat,
        capacity_bits=closed,
        gap=closed - result.chi_hat,
        restarts=result.restarts_used,
        seed=args.seed,
        ensemble=[
            {"p": p, "a": s.a, "sign": s.sign, "phase": s.phase}
            for p, s in result.ensemble.entries
        ],
    )
    _emit(record)
    return EXIT_OK


def cmd_periodic(args) -> int:
    spec = MemorySpec(tuple(parse_branch(b) for b in args.branches), "periodic")
    tol = default_tol()
    res = periodic_capacity(spec, tol)
    _emit({
        "channel": "periodic",
        "branches": args.branches,
        "a_star": res.a_star,
        "capacity_bits": res.capacity_bits,
        "upper_bound_bits": periodic_capacity_upper(spec, tol),
        "residual": res.residual,
        "method": res.method,
    })
    return EXIT_OK


def cmd_convex(args) -> int:
    spec = MemorySpec(tuple(parse_branch(b) for b in args.branches), "convex")
    tol = default_tol()
    res = convex_combination_capacity(spec, tol)
    record = {
        "channel": "convex",
        "branches": args.branches,
        "a_star": res.a_star,
        "capacity_bits": res.capacity_bits,
        "residual": res.residual,
        "method": res.method,
    }
    if len(spec.branches) == 2:
        diag = minmax_diagnostic(spec, tol)
        record.update(
            sup_min=diag.sup_min,
            min_sup=diag.min_sup,
            crossing_a=diag.crossing_a,
        )
    _emit(record)
    return EXIT_OK


def cmd_interchange(args) -> int:
    spec = MemorySpec(tuple(parse_branch(b) for b in args.branches), "periodic")
    rep = interchange_report(spec, default_tol())
    _emit({
        "channel": "periodic",
        "branches": args.branches,
        "c_lower": rep.c_lower,
        "c_upper": rep.c_upper,
        "gap": rep.gap,
        "a_star_joint": rep.a_star_joint,
        "a_star_per_branch": list(rep.a_star_per_branch),
    })
    return EXIT_OK


def _add_channel_flags(p):
    p.add_argument("--channel", help="ad | gad | dep")
    p.add_argument("--gamma", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--p", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcap",
        description="Product-state (Holevo) capacities of qubit channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", help="capacity of a channel or memory construction")
    _add_channel_flags(p)
    p.add_argument("--periodic", nargs="+", metavar="BRANCH")
    p.add_argument("--convex", nargs="+", metavar="BRANCH")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("sweep", help="parameter sweep written as CSV/JSON")
    _add_channel_flags(p)
    p.add_argument("--var", required=True, choices=["gamma", "lambda", "p", "a"])
    p.add_argument("--from", dest="lo", type=float, required=True)
    p.add_argument("--to", dest="hi", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", default="csv", choices=["csv", "json"])
    p.add_argument("--plot", help="also render a figure to this path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("ellipsoid", help="Bloch sphere image point cloud for AD")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--out", required=True)
    p.add_argument("--format", default="csv", choices=["csv", "json"])
    p.add_argument("--plot", help="also render a figure to this path")
    p.set_defaults(func=cmd_ellipsoid)

    p = sub.add_parser("oracle", help="brute-force ensemble search")
    _add_channel_flags(p)
    p.add_argument("--states", type=int, default=4)
    p.add_argument("--restarts", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("periodic", help="periodic memory-channel capacity")
    p.add_argument("branches", nargs="+", metavar="BRANCH")
    p.set_defaults(func=cmd_periodic)

    p = sub.add_parser("convex", help="convex-combination memory-channel capacity")
    p.add_argument("branches", nargs="+", metavar="BRANCH")
    p.set_defaults(func=cmd_convex)

    p = sub.add_parser("interchange", help="sup-avg vs avg-sup report")
    p.add_argument("branches", nargs="+", metavar="BRANCH")
    p.set_defaults(func=cmd_interchange)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except CliError as exc:
        print(f"qcap: {exc}", file=sys.stderr)
        return exc.code
    except (ValueError, TypeError) as exc:
        print(f"qcap: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"qcap: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
