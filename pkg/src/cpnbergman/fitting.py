"""Extraction of expansion coefficients from density samples over m.

Model: v(m) = m^n (a_0 + a_1/m + ... + a_K/m^K).  With exactly K+1
samples this is interpolation in x = 1/m and is solved exactly on
rational inputs; with more samples a column-scaled least squares is
used (the raw Vandermonde in 1/m is badly conditioned over wide m
ranges).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence, Tuple

import numpy as np

from .errors import InsufficientSamplesError
from .ratpoly import RationalPolynomial


@dataclass(frozen=True)
class FitResult:
    n: int
    K: int
    coeffs: tuple
    residual: float
    condition: float

    def coefficient(self, k: int):
        return self.coeffs[k]

    def to_json_dict(self) -> dict:
        def enc(c):
            if isinstance(c, Fraction):
                return f"{c.numerator}/{c.denominator}"
            return float(c)

        return {
            "n": self.n,
            "K": self.K,
            "coeffs": [enc(c) for c in self.coeffs],
            "residual": float(self.residual),
            "condition": float(self.condition),
        }


def _is_rational(x) -> bool:
    return isinstance(x, Rational)


def fit_expansion(samples: Sequence[Tuple], n: int, K: int) -> FitResult:
    """Fit a_0..a_K of the large-m model to (m, value) samples.

    Ill conditioning is reported through the condition field, never
    raised; the residual is the exact max deviation over the inputs.
    """
    pairs = [(m, v) for m, v in samples]
    ms = [m for m, _ in pairs]
    if len(set(ms)) != len(ms):
        raise InsufficientSamplesError("sample m values must be distinct")
    if len(pairs) < K + 1:
        raise InsufficientSamplesError(
            f"need at least {K + 1} samples for order {K}, got {len(pairs)}"
        )

    exact = len(pairs) == K + 1 and all(_is_rational(m) and _is_rational(v) for m, v in pairs)
    design = np.array([[float(m) ** (-k) for k in range(K + 1)] for m in ms])
    scale = np.max(np.abs(design), axis=0)
    condition = float(np.linalg.cond(design / scale))

    if exact:
        xs = [Fraction(1, 1) / Fraction(m) for m, _ in pairs]
        ys = [Fraction(v) / Fraction(m) ** n for m, v in pairs]
        poly = RationalPolynomial.interpolate(xs, ys)
        coeffs = tuple(poly.coefficient(k) for k in range(K + 1))
        residual = 0.0
    else:
        y = np.array([float(v) / float(m) ** n for m, v in pairs])
        sol, *_ = np.linalg.lstsq(design / scale, y, rcond=None)
        coeffs = tuple(float(c) for c in sol / scale)
        residual = 0.0

    model = [
        sum(Fraction(c) * Fraction(m) ** (n - k) if exact else float(c) * float(m) ** (n - k)
            for k, c in enumerate(coeffs))
        for m, _ in pairs
    ]
    residual = max(abs(pred - v) for pred, (_, v) in zip(model, pairs))
    if exact and residual == 0:
        residual = 0.0
    else:
        residual = float(residual)
    return FitResult(n, K, coeffs, residual, condition)


@dataclass(frozen=True)
class VanishingReport:
    """(k, vanishes) verdicts for n < k <= K, with the fit residual attached."""

    entries: tuple
    residual: float
    tol: float

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def to_json_dict(self) -> dict:
        return {
            "entries": [{"k": k, "vanishes": bool(v)} for k, v in self.entries],
            "residual": float(self.residual),
            "tol": float(self.tol),
        }


def vanishing_report(fit: FitResult, n: int, tol: float) -> VanishingReport:
    if fit.K <= n:
        raise ValueError("fit order must exceed the dimension to test vanishing")
    entries = tuple((k, abs(fit.coeffs[k]) < tol) for k in range(n + 1, fit.K + 1))
    return VanishingReport(entries, fit.residual, float(tol))


def load_samples_csv(path) -> list:
    """Read (m, value) rows from a density CSV (header row required)."""
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if len(header) < 2:
            raise ValueError("expected at least two columns: m, value")
        for row in reader:
            if not row:
                continue
            if len(row) < 2:
                raise ValueError("expected two columns per row, got %r" % (row,))
            m = Fraction(row[0])
            v = Fraction(row[1]) if "/" in row[1] or "." not in row[1] else float(row[1])
            m = int(m) if m.denominator == 1 else m
            out.append((m, v))
    return out
