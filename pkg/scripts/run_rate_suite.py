#!/usr/bin/env python3
"""Run the standard rate study: every catalog comparison pair at the pinned
setup (Gaussian a=0.1 width 3.5, p=1, s=2, N=1024, L=30, T=1,
deltas 0.4/0.2/0.1/0.05), writing rate reports and divergence curves."""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from kernelwave import DEFAULT_DELTAS, lookup, standard_config, sweep_rate
from kernelwave.cli import _summary_ini, _write_report

PAIRS = [
    ("bbm", "dirac"),
    ("rosenau", "dirac"),
    ("bbm", "rosenau"),
    ("rectangular", "dirac"),
    ("five_point", "dirac"),
    ("fractional:gamma=0.75", "dirac"),
    ("fractional:gamma=1", "dirac"),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out/rates", help="output directory")
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)

    reports = []
    all_pass = True
    for name1, name2 in PAIRS:
        cfg = standard_config(name1)
        report = sweep_rate(lookup(name1), lookup(name2), cfg, DEFAULT_DELTAS, jobs=args.jobs)
        reports.append(report)
        prefix = f"{name1}_vs_{name2}_".replace(":", "_").replace("=", "_").replace(".", "p")
        _write_report(outdir, prefix, report)
        verdict = "PASS" if report.passed else "FAIL"
        all_pass &= bool(report.passed)
        print(
            f"{report.kernel_1:22s} vs {report.kernel_2:8s} slope={report.slope:6.3f} "
            f"predicted={report.predicted_order!s:>5s} window={report.window} {verdict}"
        )
    (outdir / "summary.ini").write_text(_summary_ini(reports))
    print(f"\nwrote {outdir}/summary.ini")
    return 0 if all_pass else 2


if __name__ == "__main__":
    sys.exit(main())
