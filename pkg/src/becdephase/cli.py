"""Command-line front end.

Subcommands: time-sweep, temp-sweep, dim-sweep, ramsey, validate.
Physics comes from a plain-text ``key = value`` config file (SI units);
grids and quadrature tolerances from flags.  Output is CSV with a
commented metadata preamble, or JSON for the validation report.

Exit codes: 0 success, 2 config error, 3 numerical non-convergence,
4 validation failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys

import numpy as np

from . import __version__
from .engine import QuadratureConfig, gamma_with_error
from .quadrature import QuadratureError
from .ramsey import RamseyParams, effective_probability, ramsey_probability, \
    visibility
from .sweeps import (CoherenceCurve, default_dimension_grid,
                     default_temperature_grid, default_time_grid,
                     run_dimension_sweep, run_temperature_sweep,
                     run_time_sweep, run_validation, write_curve_csv,
                     _metadata)
from .system import ConfigError, SystemParams, load_config

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_VALIDATION = 4


class CliConfigError(Exception):
    pass


def _parse_grid(spec: str, scale: float = 1.0) -> np.ndarray:
    """Parse 'lo:hi:n[:log|lin]' into a grid; values scaled by ``scale``."""
    parts = spec.split(":")
    if len(parts) not in (3, 4):
        raise CliConfigError(f"bad grid spec {spec!r}, expected lo:hi:n[:log|lin]")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise CliConfigError(f"bad grid spec {spec!r}: {exc}") from exc
    spacing = parts[3] if len(parts) == 4 else "lin"
    if spacing not in ("lin", "log"):
        raise CliConfigError(f"bad grid spacing {spacing!r}")
    if n < 1 or hi <= lo:
        raise CliConfigError(f"bad grid bounds in {spec!r}")
    if spacing == "log":
        if lo <= 0:
            raise CliConfigError("log grid requires lo > 0")
        return np.geomspace(lo, hi, n) * scale
    return np.linspace(lo, hi, n) * scale


def _parse_times(spec: str, params: SystemParams) -> list[float]:
    """Comma list of times in seconds; an 'sc' suffix means sigma/c units
    (e.g. '1sc,2sc,10sc')."""
    t_deph = params.sigma / params.c
    out = []
    for item in spec.split(","):
        item = item.strip()
        try:
            if item.endswith("sc"):
                out.append(float(item[:-2]) * t_deph)
            else:
                out.append(float(item))
        except ValueError as exc:
            raise CliConfigError(f"bad time {item!r}") from exc
    if not out:
        raise CliConfigError("empty time list")
    return out


def _suffix_path(path: str, suffix: str) -> str:
    stem, dot, ext = path.rpartition(".")
    if dot:
        return f"{stem}_{suffix}.{ext}"
    return f"{path}_{suffix}"


def _time_label(t: float, params: SystemParams) -> str:
    return f"tau{t / (params.sigma / params.c):g}sc"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="becdephase",
        description="Impurity dephasing in a D-dimensional condensate",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_required=True):
        p.add_argument("--config", required=True, help="key = value parameter file")
        p.add_argument("--out", required=out_required, help="output path")
        p.add_argument("--rel-tol", type=float, default=None,
                       help="quadrature relative tolerance")
        p.add_argument("--workers", type=int, default=1,
                       help="worker threads (output is worker-count independent)")

    p = sub.add_parser("time-sweep", help="coherence vs interaction time")
    common(p)
    p.add_argument("--grid", default=None,
                   help="lo:hi:n[:log|lin], in seconds (default 1e-2..10 sigma/c, log)")

    p = sub.add_parser("dim-sweep", help="coherence vs effective dimension")
    common(p)
    p.add_argument("--grid", default=None,
                   help="lo:hi:n[:log|lin], dimensionless (default 1..3 step 0.05)")
    p.add_argument("--times", default="1sc,2sc,10sc",
                   help="comma list of fixed times; 'sc' suffix = sigma/c units")

    p = sub.add_parser("temp-sweep", help="coherence vs temperature, per dimension")
    common(p)
    p.add_argument("--grid", default=None,
                   help="lo:hi:n[:log|lin], in kelvin (default 1e-9..1e-6, log)")
    p.add_argument("--times", default="1sc,2sc,10sc",
                   help="comma list of fixed times; 'sc' suffix = sigma/c units")

    p = sub.add_parser("ramsey", help="Ramsey probabilities and visibility")
    common(p)
    p.add_argument("--grid", default=None,
                   help="interaction-time grid lo:hi:n[:log|lin], seconds")
    p.add_argument("--pd", type=float, default=1.0, help="detection probability")
    p.add_argument("--ps", type=float, default=0.0, help="spurious detection probability")
    p.add_argument("--gamma-d", type=float, default=0.0,
                   help="extrinsic dephasing rate, 1/s")

    p = sub.add_parser("validate", help="run the internal validation suite")
    common(p, out_required=False)

    return parser


def _quad_config(args) -> QuadratureConfig:
    if args.rel_tol is None:
        return QuadratureConfig()
    return QuadratureConfig(rel_tol=args.rel_tol)


def _any_failed(curves) -> bool:
    return any("failed" in c.status for c in curves)


def _cmd_time_sweep(args, params, quad) -> int:
    grid = (_parse_grid(args.grid) if args.grid
            else default_time_grid(params))
    curve = run_time_sweep(params, quad, grid, workers=args.workers)
    write_curve_csv(curve, args.out)
    return EXIT_NUMERICAL if _any_failed([curve]) else EXIT_OK

def _cmd_dim_sweep(args, params, quad) -> int:
    grid = (_parse_grid(args.grid) if args.grid else default_dimension_grid())
    times = _parse_times(args.times, params)
    curves = run_dimension_sweep(params, quad, grid, times, workers=args.workers)
    for t, curve in zip(times, curves):
        write_curve_csv(curve, _suffix_path(args.out, _time_label(t, params)))
    return EXIT_NUMERICAL if _any_failed(curves) else EXIT_OK


def _cmd_temp_sweep(args, params, quad) -> int:
    grid = (_parse_grid(args.grid) if args.grid else default_temperature_grid())
    times = _parse_times(args.times, params)
    curves = run_temperature_sweep(params, quad, grid, times, workers=args.workers)
    for curve in curves:
        d = curve.metadata["curve_dimension"]
        t = curve.metadata["fixed_time_s"]
        suffix = f"D{d:g}_{_time_label(t, params)}"
        write_curve_csv(curve, _suffix_path(args.out, suffix))
    return EXIT_NUMERICAL if _any_failed(curves) else EXIT_OK


def _cmd_ramsey(args, params, quad) -> int:
    grid = (_parse_grid(args.grid) if args.grid else default_time_grid(params))
    rows = []
    failed = False
    for tau in grid:
        try:
            g, err, status = *gamma_with_error(params, quad, float(tau)), "ok"
        except QuadratureError as exc:
            g, err, status = exc.estimate, exc.error_bound, "failed"
            failed = True
        rp = RamseyParams(P_d=args.pd, P_s=args.ps, gamma_d=args.gamma_d,
                          tau=float(tau))
        rows.append((float(tau), g, math.exp(-g), ramsey_probability(g),
                     effective_probability(g, rp), err, status))

    vis = visibility(RamseyParams(P_d=args.pd, P_s=args.ps,
                                  gamma_d=args.gamma_d, tau=float(grid[-1])))
    md = _metadata(params, quad, kind="ramsey", abscissa="tau_s",
                   P_d=args.pd, P_s=args.ps, gamma_d=args.gamma_d,
                   visibility_closed_form=vis.closed_form,
                   visibility_exact=vis.exact)
    lines = [f"# {k} = {v!r}" for k, v in md.items()]
    lines.append("abscissa,gamma,coherence,p_ramsey,p_effective,gamma_abs_error,status")
    for row in rows:
        *nums, status = row
        lines.append(",".join(repr(v) for v in nums) + f",{status}")
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    return EXIT_NUMERICAL if failed else EXIT_OK


def _cmd_validate(args, params, quad) -> int:
    report = run_validation(params, quad)
    text = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    for check in report["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        print(f"{status} {check['name']}: {check['detail']}", file=sys.stderr)
    return EXIT_OK if report["passed"] else EXIT_VALIDATION


_COMMANDS = {
    "time-sweep": _cmd_time_sweep,
    "dim-sweep": _cmd_dim_sweep,
    "temp-sweep": _cmd_temp_sweep,
    "ramsey": _cmd_ramsey,
    "validate": _cmd_validate,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        params = load_config(args.config)
        quad = _quad_config(args)
        if args.command == "ramsey":
            RamseyParams(P_d=args.pd, P_s=args.ps, gamma_d=args.gamma_d, tau=0.0)
    except (ConfigError, OSError, ValueError, CliConfigError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return _COMMANDS[args.command](args, params, quad)
    except CliConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except QuadratureError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
