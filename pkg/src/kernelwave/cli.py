"""Command-line front end: kernel listing, simulation, comparison, rate sweeps.

Exit codes: 0 success (all assertions pass), 1 usage or config error,
2 numerical abort or a failed slope assertion.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

import numpy as np

from .comparison import (
    DEFAULT_DELTAS,
    RateReport,
    SweepError,
    run_pair,
    sweep_rate,
    zero_dispersion_suite,
)
from .config import (
    ConfigError,
    build_sim_config,
    fmt,
    read_config,
    section,
    write_csv,
    write_manifest,
)
from .kernels import (
    IDENTICAL,
    ProbeDepthExceeded,
    catalog,
    lookup,
    matching_order,
    moment_table,
)
from .stepping import energy_report, integrate

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2


def _say(args, message: str) -> None:
    if not args.quiet:
        print(message)


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _slug(name: str) -> str:
    return name.replace(":", "_").replace("=", "_").replace(",", "_").replace(".", "p")


# --- kernels ----------------------------------------------------------------

def cmd_kernels(args) -> int:
    dirac = lookup("dirac")
    header = f"{'kernel':22s} {'symbol':32s} " + " ".join(f"{f'm{j}':>10s}" for j in range(7)) + "  order-vs-dirac"
    print(header)
    print("-" * len(header))
    for spec in catalog():
        table = moment_table(spec)
        cells = " ".join(
            f"{'undefined':>10s}" if math.isnan(m) else f"{m:10.5g}" for m in table.moments
        )
        if spec.name == "dirac":
            order = "-"
        else:
            try:
                value = matching_order(spec, dirac)
                order = "identical" if value == IDENTICAL else f"{value:g}"
            except ProbeDepthExceeded:
                order = "> probe depth"
        print(f"{spec.name:22s} {spec.formula:32s} {cells}  {order}")
    return EXIT_OK


# --- simulate ---------------------------------------------------------------

def _write_trajectory(outdir: Path, traj) -> None:
    write_csv(
        outdir / "trajectory.csv",
        {
            "t": traj.times,
            "mass": traj.mass,
            "h_s_norm": traj.h_s_norm,
            "max_abs": traj.max_abs,
            "alias_frac": traj.alias_frac,
            "boundary_mag": traj.boundary_mag,
        },
    )


def _write_energy(outdir: Path, trace) -> None:
    write_csv(
        outdir / "energy.csv",
        {
            "t": trace.times,
            "e_s": trace.e_s,
            "h_s_norm": trace.h_s_norm,
            "c1": np.full(len(trace.times), trace.c1),
            "c2": np.full(len(trace.times), trace.c2),
        },
    )


def cmd_simulate(args) -> int:
    parser = read_config(args.config)
    sec = section(parser, args.config, "simulate")
    cfg, echo = build_sim_config(sec, s_override=args.s)
    save_fields = sec.boolean("save_fields", False)
    outdir = _outdir(args)

    started = time.monotonic()
    traj = integrate(cfg)
    trace = energy_report(traj, cfg)
    duration = time.monotonic() - started

    _write_trajectory(outdir, traj)
    _write_energy(outdir, trace)
    outputs = ["trajectory.csv", "energy.csv"]
    if save_fields:
        fields_dir = outdir / "fields"
        fields_dir.mkdir(exist_ok=True)
        for i, state in enumerate(traj.states):
            write_csv(fields_dir / f"snap_{i:06d}.csv", {"x": cfg.grid.x, "u": state.values})
        outputs.append("fields/")
    echo["save_fields"] = save_fields
    extra = {
        "duration_seconds": duration,
        "effective_dt": traj.dt,
        "completed": traj.completed,
        "abort_reason": traj.abort_reason or "none",
        "c1": trace.c1,
        "c2": trace.c2,
        "lambda_emp": trace.lambda_emp,
        "outputs": " ".join(outputs),
    }
    write_manifest(outdir / "manifest.ini", "simulate", echo, extra)

    if not traj.completed:
        _say(args, f"aborted at t={traj.times[-1]:g}: {traj.abort_reason}")
        return EXIT_NUMERICAL
    _say(
        args,
        f"simulated {cfg.kernel.name} to t={cfg.t_end:g} "
        f"({len(traj.times)} snapshots, mass drift {np.max(np.abs(traj.mass - traj.mass[0])):.2e})",
    )
    return EXIT_OK


# --- compare ----------------------------------------------------------------

def cmd_compare(args) -> int:
    parser = read_config(args.config)
    sec = section(parser, args.config, "compare")
    cfg, echo = build_sim_config(sec, kernel_key="kernel_1", s_override=args.s)
    try:
        k2 = lookup(sec.string("kernel_2"))
    except ValueError as exc:
        raise ConfigError(f"{args.config}: [compare] {exc}") from None
    echo["kernel_2"] = k2.name
    outdir = _outdir(args)

    started = time.monotonic()
    curve = run_pair(cfg.kernel, k2, cfg)
    duration = time.monotonic() - started

    write_csv(outdir / "divergence.csv", {"t": curve.times, "d": curve.d})
    extra = {
        "duration_seconds": duration,
        "truncated": curve.truncated,
        "abort_kernel": curve.abort_kernel or "none",
        "abort_reason": curve.abort_reason or "none",
        "d_end": float(curve.d[-1]),
        "outputs": "divergence.csv",
    }
    write_manifest(outdir / "manifest.ini", "compare", echo, extra)
    if curve.truncated:
        _say(args, f"aborted: kernel {curve.abort_kernel} ({curve.abort_reason})")
        return EXIT_NUMERICAL
    _say(args, f"d(0)={curve.d[0]:.3e}  d(T)={curve.d[-1]:.3e}  PASS")
    return EXIT_OK


# --- sweep / suite ----------------------------------------------------------

def _report_lines(report: RateReport) -> dict:
    return {
        "kernel_1": report.kernel_1,
        "kernel_2": report.kernel_2,
        "deltas": " ".join(fmt(d) for d in report.deltas),
        "slope": report.slope,
        "intercept": report.intercept,
        "residual": report.residual,
        "predicted_order": "none" if report.predicted_order is None else report.predicted_order,
        "window_low": "none" if report.window is None else report.window[0],
        "window_high": "none" if report.window is None else report.window[1],
        "passed": "none" if report.passed is None else report.passed,
        "s": report.s,
        "t_end": report.t_end,
        "dt": report.dt,
    }


def _write_report(outdir: Path, prefix: str, report: RateReport) -> None:
    rows = len(report.deltas)
    write_csv(
        outdir / f"{prefix}rate_report.csv",
        {
            "delta": report.deltas,
            "d_T": report.d_end,
            "predicted_rate": np.full(rows, math.nan if report.predicted_order is None else report.predicted_order),
            "slope": np.full(rows, report.slope),
            "residual": np.full(rows, report.residual),
            "linearity": report.linearity,
        },
    )
    for curve in report.curves or ():
        write_csv(
            outdir / f"{prefix}divergence_delta_{curve.delta:g}.csv",
            {"t": curve.times, "d": curve.d},
        )


def _summary_text(report: RateReport) -> str:
    predicted = "?" if report.predicted_order is None else f"{report.predicted_order:g}"
    verdict = "PASS" if report.passed else "FAIL" if report.passed is not None else "NO-WINDOW"
    return f"{report.kernel_1} vs {report.kernel_2}: slope={report.slope:.2f} (predicted {predicted}) {verdict}"


def _sweep_window(sec) -> tuple[float, float] | None:
    raw = sec.reals("slope_window", ())
    if not raw:
        return None
    if len(raw) != 2:
        raise ConfigError(f"{sec.path}: [{sec.name}] slope_window needs two numbers")
    return (raw[0], raw[1])


def cmd_sweep(args) -> int:
    parser = read_config(args.config)
    sec = section(parser, args.config, "sweep")
    cfg, echo = build_sim_config(sec, kernel_key="kernel_1", s_override=args.s)
    try:
        k2 = lookup(sec.string("kernel_2"))
    except ValueError as exc:
        raise ConfigError(f"{args.config}: [sweep] {exc}") from None
    deltas = sec.reals("deltas", tuple(DEFAULT_DELTAS))
    window = _sweep_window(sec)
    if len(deltas) < 4:
        raise ConfigError(f"{args.config}: [sweep] need >= 4 deltas, got {len(deltas)}")
    echo["kernel_2"] = k2.name
    echo["deltas"] = " ".join(fmt(d) for d in deltas)
    if window:
        echo["slope_window"] = f"{fmt(window[0])} {fmt(window[1])}"
    outdir = _outdir(args)

    started = time.monotonic()
    try:
        report = sweep_rate(cfg.kernel, k2, cfg, deltas, jobs=args.jobs, window=window)
    except ValueError as exc:
        raise ConfigError(f"{args.config}: [sweep] {exc}") from None
    duration = time.monotonic() - started

    _write_report(outdir, "", report)
    summary = _summary_ini([report])
    (outdir / "summary.ini").write_text(summary)
    write_manifest(
        outdir / "manifest.ini",
        "sweep",
        echo,
        {"duration_seconds": duration, "outputs": "rate_report.csv summary.ini"},
    )
    _say(args, _summary_text(report))
    return EXIT_OK if report.passed in (True, None) else EXIT_NUMERICAL


def _summary_ini(reports: list[RateReport]) -> str:
    lines = []
    for i, report in enumerate(reports):
        name = "result" if len(reports) == 1 else f"result:{report.kernel_1}"
        lines.append(f"[{name}]")
        for key, value in _report_lines(report).items():
            lines.append(f"{key} = {fmt(value)}")
        lines.append("")
    return "\n".join(lines)


def cmd_suite(args) -> int:
    parser = read_config(args.config)
    sec = section(parser, args.config, "suite")
    cfg, echo = build_sim_config(sec, kernel_key="kernel_1", s_override=args.s)
    names = sec.strings("kernels", (cfg.kernel.name,))
    deltas = sec.reals("deltas", tuple(DEFAULT_DELTAS))
    echo["kernels"] = " ".join(names)
    echo["deltas"] = " ".join(fmt(d) for d in deltas)
    outdir = _outdir(args)

    started = time.monotonic()
    reports = []
    for name in names:
        try:
            kernel = lookup(name)
        except ValueError as exc:
            raise ConfigError(f"{args.config}: [suite] {exc}") from None
        report = sweep_rate(kernel, lookup("dirac"), cfg, deltas, jobs=args.jobs)
        reports.append(report)
        _write_report(outdir, f"{_slug(name)}_", report)
        _say(args, _summary_text(report))
    duration = time.monotonic() - started

    (outdir / "summary.ini").write_text(_summary_ini(reports))
    write_manifest(
        outdir / "manifest.ini",
        "suite",
        echo,
        {"duration_seconds": duration, "outputs": "summary.ini"},
    )
    return EXIT_OK if all(r.passed in (True, None) for r in reports) else EXIT_NUMERICAL


# --- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kernelwave",
        description="Pseudospectral experiments for nonlocal unidirectional wave equations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("--config", required=True, help="experiment config (INI)")
        p.add_argument("--out", default="out", help="output directory (default: out)")
        p.add_argument("--jobs", type=int, default=1, help="parallel sweep workers")
        p.add_argument("--s", type=float, default=None, help="override Sobolev order")
        p.add_argument("--quiet", action="store_true", help="suppress progress output")

    p_kernels = sub.add_parser("kernels", help="list catalog kernels, moments, matching orders")
    common(p_kernels, config=False)
    p_kernels.set_defaults(fn=cmd_kernels)

    for name, fn, help_text in (
        ("simulate", cmd_simulate, "integrate one configuration"),
        ("compare", cmd_compare, "divergence curve for a kernel pair"),
        ("sweep", cmd_sweep, "rate sweep for a kernel pair over a delta ladder"),
        ("suite", cmd_suite, "sweep a kernel list against the Dirac limit"),
    ):
        p = sub.add_parser(name, help=help_text)
        common(p)
        p.set_defaults(fn=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SweepError as exc:
        print(f"sweep failed: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
