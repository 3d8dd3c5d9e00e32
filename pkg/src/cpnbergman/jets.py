"""Truncated Taylor-series arithmetic for curvature chains.

A Jet stores Taylor coefficients c_0..c_order of a function at a point;
arithmetic propagates them, which turns the curvature formulas (log of
the metric coefficient, quotients, radial Laplacian) into compositions
without hand-expanding high derivatives.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np


class Jet:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[float]):
        self.coeffs = np.asarray(coeffs, dtype=float)

    @classmethod
    def constant(cls, value: float, order: int) -> "Jet":
        c = np.zeros(order + 1)
        c[0] = value
        return cls(c)

    @classmethod
    def variable(cls, value: float, order: int) -> "Jet":
        c = np.zeros(order + 1)
        c[0] = value
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def from_derivatives(cls, derivs: Sequence[float]) -> "Jet":
        return cls([d / math.factorial(k) for k, d in enumerate(derivs)])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self) -> float:
        return float(self.coeffs[0])

    def derivative_value(self, k: int) -> float:
        return float(self.coeffs[k]) * math.factorial(k)

    def derivative(self) -> "Jet":
        """Jet of f', one order lower."""
        if self.order < 1:
            raise ValueError("cannot differentiate an order-0 jet")
        return Jet([(k + 1) * self.coeffs[k + 1] for k in range(self.order)])

    def _aligned(self, other):
        if not isinstance(other, Jet):
            other = Jet.constant(float(other), self.order)
        order = min(self.order, other.order)
        return self.coeffs[: order + 1], other.coeffs[: order + 1], order

    def __add__(self, other):
        a, b, _ = self._aligned(other)
        return Jet(a + b)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.coeffs)

    def __sub__(self, other):
        a, b, _ = self._aligned(other)
        return Jet(a - b)

    def __rsub__(self, other):
        a, b, _ = self._aligned(other)
        return Jet(b - a)

    def __mul__(self, other):
        a, b, order = self._aligned(other)
        out = np.zeros(order + 1)
        for i, ai in enumerate(a):
            if ai == 0.0:
                continue
            out[i:] += ai * b[: order + 1 - i]
        return Jet(out)

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        a = self.coeffs
        if a[0] == 0.0:
            raise ZeroDivisionError("jet has zero value")
        out = np.zeros_like(a)
        out[0] = 1.0 / a[0]
        for k in range(1, len(a)):
            out[k] = -np.dot(a[1 : k + 1], out[k - 1 :: -1]) / a[0]
        return Jet(out)

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return self * (1.0 / float(other))
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * float(other)

    def log(self) -> "Jet":
        a = self.coeffs
        if a[0] <= 0.0:
            raise ValueError("log of a nonpositive jet value")
        out = np.zeros_like(a)
        out[0] = math.log(a[0])
        # from A L' = A': k a0 L_k = k a_k - sum_{j=1}^{k-1} (k-j) a_j L_{k-j}
        for k in range(1, len(a)):
            s = a[k]
            for j in range(1, k):
                s -= (k - j) / k * a[j] * out[k - j]
            out[k] = s / a[0]
        return Jet(out)

    def exp(self) -> "Jet":
        a = self.coeffs
        out = np.zeros_like(a)
        out[0] = math.exp(a[0])
        # E' = A' E: k E_k = sum_{j=1}^{k} j a_j E_{k-j}
        for k in range(1, len(a)):
            s = 0.0
            for j in range(1, k + 1):
                s += j * a[j] * out[k - j]
            out[k] = s / k
        return Jet(out)
