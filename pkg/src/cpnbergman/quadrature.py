"""Adaptive Gauss-Legendre quadrature on intervals, half-lines and CP^1.

Integrands must accept numpy arrays of evaluation points.  The half-line
is compactified by s = x/(1-x); integrals over CP^1 combine an adaptive
radial pass with a trapezoid angular average whose resolution is doubled
until two successive values agree.
"""

from __future__ import annotations

import heapq
from typing import Callable, Optional

import numpy as np

from .errors import QuadratureError

_GL_CACHE = {}


def _gl(order: int):
    nodes = _GL_CACHE.get(order)
    if nodes is None:
        x, w = np.polynomial.legendre.leggauss(order)
        nodes = (x, w)
        _GL_CACHE[order] = nodes
    return nodes


def _panel(f, a: float, b: float, order: int) -> float:
    x, w = _gl(order)
    half = 0.5 * (b - a)
    vals = f(0.5 * (a + b) + half * x)
    return half * float(np.dot(w, vals))


def integrate_interval(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rtol: float = 1e-12,
    atol: float = 0.0,
    order: int = 15,
    max_panels: int = 4096,
) -> float:
    """Adaptive panel integration of f over [a, b].

    A panel's error is estimated by comparing its single-rule value with
    the sum over its two halves; the worst panel is split until the summed
    error estimate meets max(rtol * |total|, atol).
    """
    if not b > a:
        raise ValueError("need b > a")

    def make(lo: float, hi: float):
        coarse = _panel(f, lo, hi, order)
        mid = 0.5 * (lo + hi)
        fine = _panel(f, lo, mid, order) + _panel(f, mid, hi, order)
        return -abs(fine - coarse), lo, hi, fine

    heap = [make(a, b)]
    total = heap[0][3]
    err = -heap[0][0]
    count = 1
    while err > max(rtol * abs(total), atol):
        if count >= max_panels:
            raise QuadratureError(
                "quadrature budget exhausted: %d panels, error estimate %.3e "
                "on total %.3e" % (count, err, total)
            )
        neg, lo, hi, fine = heapq.heappop(heap)
        total -= fine
        err += neg
        mid = 0.5 * (lo + hi)
        for child in (make(lo, mid), make(mid, hi)):
            heapq.heappush(heap, child)
            total += child[3]
            err -= child[0]
        count += 1
    return total


def integrate_half_line(
    f: Callable[[np.ndarray], np.ndarray],
    rtol: float = 1e-12,
    atol: float = 0.0,
    order: int = 15,
    max_panels: int = 4096,
) -> float:
    """Integral of f over [0, infinity) via the substitution s = x/(1-x)."""

    def g(x: np.ndarray) -> np.ndarray:
        om = 1.0 - x
        return f(x / om) / om**2

    return integrate_interval(g, 0.0, 1.0, rtol=rtol, atol=atol, order=order,
                              max_panels=max_panels)


def angular_values(F, s: np.ndarray, n_theta: int) -> np.ndarray:
    """Mean over the circle of F(sqrt(s) e^{i theta}) for each s."""
    theta = np.arange(n_theta) * (2.0 * np.pi / n_theta)
    z = np.sqrt(np.asarray(s, dtype=float))[:, None] * np.exp(1j * theta)[None, :]
    return np.mean(F(z), axis=1)


def cp1_integral(
    F: Callable[[np.ndarray], np.ndarray],
    radial_weight: Callable[[np.ndarray], np.ndarray],
    rtol: float = 1e-10,
    atol: float = 1e-13,
    n_theta: int = 64,
    n_theta_max: int = 1024,
    order: int = 15,
    max_panels: int = 4096,
) -> float:
    """Integral over CP^1 of F against radial_weight(s) ds after averaging.

    Computes int_0^inf radial_weight(s) * mean_theta F(sqrt(s) e^{i theta}) ds.
    With radial_weight = (1+s)^{-2} this is the integral against the
    unit-volume Fubini-Study form.  F must broadcast over complex arrays.
    The trapezoid angular rule is spectrally accurate for smooth F; its
    resolution doubles until two successive values agree within tolerance.
    """

    def value(nt: int) -> float:
        def radial(s: np.ndarray) -> np.ndarray:
            return radial_weight(s) * angular_values(F, s, nt)

        return integrate_half_line(radial, rtol=rtol, atol=atol, order=order,
                                   max_panels=max_panels)

    prev = value(n_theta)
    nt = n_theta * 2
    while nt <= n_theta_max:
        cur = value(nt)
        if abs(cur - prev) <= max(rtol * abs(cur), atol):
            return cur
        prev = cur
        nt *= 2
    raise QuadratureError(
        "angular refinement did not stabilize below n_theta = %d" % n_theta_max
    )


def fs_weight(s: np.ndarray) -> np.ndarray:
    """Radial density of the unit-volume Fubini-Study form on CP^1."""
    return (1.0 + s) ** (-2)


def monomial_kernel_quadrature(n: int, m: int, P, rtol: float = 1e-10) -> float:
    """(1/pi^n) int |z^P|^2 (1+|z|^2)^{-(m+n+1)} dV by nested quadrature.

    Radial reduction gives an n-fold iterated integral; n = 1 and n = 2 are
    supported, matching the numeric validation scope.  The exact rational
    counterpart is fs_monomial_integral.
    """
    P = tuple(int(p) for p in P)
    if len(P) != n:
        raise ValueError("multi-index length must equal n")
    if sum(P) > m:
        raise ValueError("requires |P| <= m")
    if n == 1:
        p = P[0]

        def f(s: np.ndarray) -> np.ndarray:
            with np.errstate(divide="ignore"):
                logs = np.where(s > 0, np.log(np.maximum(s, 1e-300)), -np.inf)
            expo = p * logs - (m + 2) * np.log1p(s)
            out = np.exp(expo)
            if p == 0:
                out = np.where(s > 0, out, np.exp(-(m + 2) * np.log1p(s)))
            else:
                out = np.where(s > 0, out, 0.0)
            return out

        return integrate_half_line(f, rtol=rtol)
    if n == 2:
        p1, p2 = P

        def inner(a: float) -> float:
            def g(t: np.ndarray) -> np.ndarray:
                with np.errstate(divide="ignore"):
                    logt = np.where(t > 0, np.log(np.maximum(t, 1e-300)), -np.inf)
                expo = p2 * logt - (m + 3) * np.log(a + t)
                out = np.exp(expo)
                if p2 == 0:
                    out = np.where(t > 0, out, a ** (-(m + 3.0)))
                else:
                    out = np.where(t > 0, out, 0.0)
                return out

            return integrate_half_line(g, rtol=0.1 * rtol)

        def outer(s1: np.ndarray) -> np.ndarray:
            vals = np.empty_like(s1)
            for i, s in enumerate(s1):
                w = inner(1.0 + float(s))
                vals[i] = (float(s) ** p1 if p1 else 1.0) * w
            return vals

        return integrate_half_line(outer, rtol=rtol)
    raise ValueError("nested monomial quadrature implemented for n in {1, 2}")
