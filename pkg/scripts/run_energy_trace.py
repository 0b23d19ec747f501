#!/usr/bin/env python3
"""Integrate one default configuration and dump trajectory, energy trace, and
waveform snapshots, ready for the plotting scripts."""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from kernelwave import energy_report, integrate, lookup, standard_config
from kernelwave.config import write_csv

import numpy as np


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--kernel", default="bbm")
    parser.add_argument("--delta", type=float, default=0.2)
    parser.add_argument("--t-end", type=float, default=1.0)
    parser.add_argument("--out", default="out/energy", help="output directory")
    args = parser.parse_args()
    outdir = Path(args.out)
    (outdir / "fields").mkdir(parents=True, exist_ok=True)

    cfg = standard_config(lookup(args.kernel), delta=args.delta, t_end=args.t_end)
    traj = integrate(cfg)
    trace = energy_report(traj, cfg)

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
    for i in (0, len(traj.states) // 2, len(traj.states) - 1):
        write_csv(outdir / "fields" / f"snap_{i:06d}.csv", {"x": cfg.grid.x, "u": traj.states[i].values})

    status = "completed" if traj.completed else f"aborted ({traj.abort_reason})"
    print(f"{cfg.kernel.name} delta={cfg.delta:g}: {status}, c1={trace.c1:.3f}, c2={trace.c2:.3f}")
    print(f"wrote {outdir}/trajectory.csv, energy.csv, fields/")
    return 0 if traj.completed else 2


if __name__ == "__main__":
    sys.exit(main())
