#!/usr/bin/env python3
"""Scan which eigenvalue levels keep the variation series polynomial.

Writes one JSON report per dimension: the admissible level set, the
exact division remainders, and the normalized series coefficients at
each resonant eigenvalue lambda = k(k+n).
"""

import argparse
import json
from pathlib import Path

from cpnbergman import (
    admissible_eigenvalue_scan,
    polynomiality_criterion,
    sigma_prime_closed_form,
    variation_series_eigen,
)


def frac(x):
    return "%d/%d" % (x.numerator, x.denominator)


def scan_dimension(n: int, k_max: int, J: int) -> dict:
    levels = []
    for k in range(1, k_max + 1):
        lam = k * (k + n)
        series = variation_series_eigen(n, lam, J).normalized()
        closed = sigma_prime_closed_form(n, k, J)
        is_poly, rem = polynomiality_criterion(n, k)
        assert series.leading_coefficients(J + 1) == closed.leading_coefficients(J + 1)
        levels.append(
            {
                "k": k,
                "lambda": lam,
                "polynomial": is_poly,
                "remainder_degree": rem.degree,
                "coeffs": [frac(c) for c in series.leading_coefficients(J + 1)],
            }
        )
    return {
        "n": n,
        "J": J,
        "admissible": sorted(admissible_eigenvalue_scan(n, k_max, J)),
        "levels": levels,
    }


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=3)
    ap.add_argument("--k-max", type=int, default=6)
    ap.add_argument("--out-dir", type=Path, default=Path("results"))
    args = ap.parse_args()

    args.out_dir.mkdir(parents=True, exist_ok=True)
    for n in range(1, args.n_max + 1):
        report = scan_dimension(n, args.k_max, n + 4)
        path = args.out_dir / ("eigenvalue_scan_n%d.json" % n)
        path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
        print("n=%d admissible=%s -> %s" % (n, report["admissible"], path))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
