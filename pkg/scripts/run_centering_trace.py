#!/usr/bin/env python3
"""Drive the centering solver on the standard test potentials.

Emits one convergence-trace CSV per potential (iteration, step norm,
residual norm) and prints the fixed-point summary.
"""

import argparse
import csv
import math
from pathlib import Path

import numpy as np

from cpnbergman import (
    TracelessHermitian,
    center,
    eigenbasis_potential,
    first_eigenbasis,
    gauge_potential,
    zero_potential,
)


def potentials(scale: float):
    basis = first_eigenbasis(1)
    b = scale / math.sqrt(2)
    return [
        ("zero", zero_potential),
        ("eigenbasis_diag", eigenbasis_potential(basis[2], scale)),
        ("gauge_diag", gauge_potential(TracelessHermitian(np.diag([b, -b])))),
    ]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scale", type=float, default=0.05)
    ap.add_argument("--tol", type=float, default=1e-8)
    ap.add_argument("--max-iter", type=int, default=50)
    ap.add_argument("--out-dir", type=Path, default=Path("results"))
    args = ap.parse_args()

    args.out_dir.mkdir(parents=True, exist_ok=True)
    for name, phi in potentials(args.scale):
        state = center(phi, tol=args.tol, max_iter=args.max_iter)
        path = args.out_dir / ("centering_trace_%s.csv" % name)
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            for row in state.trace_csv_rows():
                writer.writerow(row)
        print(
            "%s: converged=%s iters=%d ||A||=%.3e residual=%.3e -> %s"
            % (
                name,
                state.converged,
                state.iteration,
                state.A.norm,
                state.residual_norm,
                path,
            )
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
