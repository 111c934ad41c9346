#!/usr/bin/env python3
"""Sweep the floating-body defect delta(eps) on the unit square and fit the
log-log exponent.

The sweep runs over a ladder of eps values with a fixed direction set; the
body shrinks as eps grows and the defect follows a power law whose exponent
the report records.  Directions are an outer approximation, so the fitted
exponent sits above the limiting one.
"""

import argparse
import sys

from quanthelly.experiment import report_to_csv, report_to_json, run_experiment
from quanthelly.jsonio import dumps

DEFAULT_EPS = ["1/4", "1/16", "1/64", "1/256", "1/1024"]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--eps", action="append", metavar="FRAC",
                    help="eps value, repeatable (default: the 4^-k ladder)")
    ap.add_argument("--dirs", default="farey:7",
                    help="direction set: axis | axis-diag | farey:N")
    ap.add_argument("--measure", default="volume",
                    choices=["volume", "perimeter", "lattice"])
    ap.add_argument("--out", default="floating_sweep.json")
    ap.add_argument("--csv", default=None, help="also write per-trial CSV")
    args = ap.parse_args(argv)

    report = run_experiment({
        "name": "floating-sweep",
        "kind": "floating-sweep",
        "seed": 0,
        "params": {
            "eps_list": args.eps or DEFAULT_EPS,
            "dirs": args.dirs,
            "measure": args.measure,
        },
    })
    with open(args.out, "w") as fh:
        fh.write(dumps(report_to_json(report)) + "\n")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(report_to_csv(report))

    for rec in report.records:
        status = "ok" if rec.ok else f"error: {rec.error}"
        delta = rec.metrics.get("delta_hi", "-")
        print(f"eps={rec.params['eps']:>8}  delta={delta:>12}  {status}")
    print(f"fitted exponent: {report.aggregates['fitted_exponent']}")
    print(f"delta monotone:  {report.aggregates['delta_monotone']}")
    print(f"report written to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
