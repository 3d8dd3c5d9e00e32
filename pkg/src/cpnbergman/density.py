"""Bergman densities of radial Kahler metrics on the projective line.

Chart coordinate z, s = |z|^2.  Every potential profile here is a
polynomial in p = 1/(1+s).  That family is closed under d/ds (since
d/ds p^k = -k p^{k+1}) and under the chart swap s -> 1/s, so pointwise
evaluation stays stable for arbitrarily large s and the closed-form
Laplacian needs no differencing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DerivativeUnavailableError, PositivityError, StepUnderflowError
from .jets import Jet
from .quadrature import cp1_integral, integrate_half_line


def _horner(coeffs, p):
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    for c in reversed(coeffs):
        out = out * p + c
    if out.ndim == 0:
        return float(out)
    return out


class RadialProfile:
    """Real radial function u(s) = sum_k c_k / (1+s)^k."""

    def __init__(self, coeffs: Sequence[float] = ()):
        c = [float(v) for v in coeffs]
        while c and c[-1] == 0.0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def zero(cls) -> "RadialProfile":
        return cls(())

    @classmethod
    def eigenfunction_bump(cls, eps: float) -> "RadialProfile":
        # eps * (1-s)/(1+s): the zonal first eigenfunction, scaled
        return cls((-eps, 2.0 * eps))

    @classmethod
    def rational_bump(cls, eps: float) -> "RadialProfile":
        # eps * s/(1+s)^2
        return cls((0.0, eps, -eps))

    @classmethod
    def from_phi1_poly(cls, coeffs) -> "RadialProfile":
        return cls(coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def value_p(self, p):
        return _horner(self.coeffs, p)

    def value(self, s):
        return self.value_p(1.0 / (1.0 + np.asarray(s, dtype=float)))

    def fs_laplacian_coeffs(self):
        """p-coefficients of the Fubini-Study Laplacian of the profile.

        Delta p^k = k(ks-1)(1+s)^{-k} = k^2 p^{k-1} - k(k+1) p^k.
        """
        deg = len(self.coeffs) - 1
        q = [0.0] * (deg + 1)
        for k in range(1, deg + 1):
            c = self.coeffs[k]
            q[k - 1] += c * k * k
            q[k] -= c * k * (k + 1)
        return tuple(q)

    def fs_laplacian(self, s):
        return _horner(self.fs_laplacian_coeffs(), 1.0 / (1.0 + np.asarray(s, dtype=float)))

    def derivative_coeffs(self):
        out = [0.0] * (len(self.coeffs) + 1)
        for k, c in enumerate(self.coeffs):
            out[k + 1] = -k * c
        return tuple(out)

    def derivative(self, s):
        return _horner(self.derivative_coeffs(), 1.0 / (1.0 + np.asarray(s, dtype=float)))

    def inverted_chart(self) -> "RadialProfile":
        """The same function read in the chart s' = 1/s.

        p(1/s') = 1 - p(s'), so coefficients transform by the signed
        binomial sum.
        """
        deg = len(self.coeffs) - 1
        out = [0.0] * (deg + 1)
        for j in range(deg + 1):
            acc = 0.0
            for k in range(j, deg + 1):
                acc += self.coeffs[k] * math.comb(k, j)
            out[j] = (-1) ** j * acc
        return RadialProfile(out)

    def jet_at(self, s: float, order: int) -> Jet:
        x = Jet.variable(float(s), order)
        p = (x + 1.0).reciprocal()
        out = Jet.constant(0.0, order)
        for c in reversed(self.coeffs):
            out = out * p + c
        return out

    def sup_norm(self) -> float:
        if self.is_zero:
            return 0.0
        grid = np.linspace(0.0, 1.0, 2049)
        return float(np.max(np.abs(_horner(self.coeffs, grid))))

    def scaled(self, t: float) -> "RadialProfile":
        return RadialProfile([t * c for c in self.coeffs])

    def __sub__(self, other: "RadialProfile") -> "RadialProfile":
        size = max(len(self.coeffs), len(other.coeffs))
        out = [0.0] * size
        for k, c in enumerate(self.coeffs):
            out[k] += c
        for k, c in enumerate(other.coeffs):
            out[k] -= c
        return RadialProfile(out)

    def __repr__(self):
        return f"RadialProfile({list(self.coeffs)!r})"


class RadialMetric:
    """Kahler form with local potential psi = log(1+s) + u(s), unit volume.

    The density in the chart is w = psi' + s psi'' = p^2 * v(p) with
    v a polynomial; positivity of v on [0, 1] is the metric condition
    and is checked on a dense grid at construction (profile degrees
    stay in the single digits here, so sampling is reliable).
    """

    def __init__(self, profile: RadialProfile, validate: bool = True):
        self.profile = profile
        deg = len(profile.coeffs) - 1
        v = [0.0] * max(deg + 2, 1)
        v[0] = 1.0
        for k in range(1, deg + 1):
            c = profile.coeffs[k]
            # w-contribution of c p^k: k p^{k+1} (k - (k+1) p), shifted by p^-2
            v[k - 1] += c * k * k
            v[k] -= c * k * (k + 1)
        self._v_coeffs = tuple(v)
        if validate:
            grid = np.linspace(0.0, 1.0, 4097)
            vals = _horner(self._v_coeffs, grid)
            i = int(np.argmin(vals))
            if vals[i] <= 0.0:
                s = 1.0 / grid[i] - 1.0 if grid[i] > 0 else math.inf
                raise PositivityError(
                    f"metric density is not positive (min {vals[i]:.3e} near s = {s:.4g})"
                )

    @classmethod
    def fubini_study(cls) -> "RadialMetric":
        return cls(RadialProfile.zero())

    @property
    def is_fubini_study(self) -> bool:
        return self.profile.is_zero

    def h_log(self, s):
        """log of the fibre weight h = e^{-u}/(1+s)."""
        s = np.asarray(s, dtype=float)
        return -np.log1p(s) - self.profile.value(s)

    def w(self, s):
        s = np.asarray(s, dtype=float)
        p = 1.0 / (1.0 + s)
        return p * p * _horner(self._v_coeffs, p)

    def volume(self) -> float:
        # int_0^inf w ds = int_0^1 v(p) dp, exactly
        return float(sum(c / (k + 1) for k, c in enumerate(self._v_coeffs)))

    def with_potential(self, phi: RadialProfile, t: float) -> "RadialMetric":
        return RadialMetric(self.profile - phi.scaled(t))

    def inverted_chart(self) -> "RadialMetric":
        return RadialMetric(self.profile.inverted_chart())


def section_norms(metric: RadialMetric, m: int, tol: float = 1e-12) -> np.ndarray:
    """Squared L^2 norms of the monomial sections 1, z, ..., z^m.

    N_j = int s^j h(s)^m w(s) ds, evaluated in log space so large m
    costs nothing in range.  For Fubini-Study this is the Beta value
    j! (m-j)! / (m+1)!.
    """
    norms = np.empty(m + 1)
    for j in range(m + 1):
        def integrand(s, j=j):
            s = np.asarray(s, dtype=float)
            expo = m * metric.h_log(s)
            if j:
                expo = expo + j * np.log(s)
            return np.exp(expo) * metric.w(s)

        norms[j] = integrate_half_line(integrand, rtol=tol)
    if np.any(norms <= 0.0):
        raise PositivityError("section norm came out nonpositive")
    return norms


@dataclass
class DensityResult:
    m: int
    grid: np.ndarray
    values: np.ndarray
    norms: np.ndarray


def bergman_density(metric: RadialMetric, m: int, grid, tol: float = 1e-12) -> DensityResult:
    """Density of states sum_j |z^j|^2_{h^m} / N_j on a grid of s values.

    Terms are combined by max-subtraction in log space: s^j h^m itself
    overflows well before m = 60 at moderate s.
    """
    grid = np.asarray(grid, dtype=float)
    norms = section_norms(metric, m, tol)
    logn = np.log(norms)
    hl = metric.h_log(grid)
    zero = grid <= 0.0
    logs = np.where(zero, 0.0, np.log(np.where(zero, 1.0, grid)))
    j = np.arange(m + 1)[:, None]
    a = j * logs[None, :] + m * hl[None, :] - logn[:, None]
    if zero.any():
        a[1:, zero] = -np.inf
    mx = np.max(a, axis=0)
    values = np.exp(mx) * np.sum(np.exp(a - mx), axis=0)
    return DensityResult(m, grid, values, norms)


def density_with_potential(metric: RadialMetric, phi: RadialProfile, t: float, m: int,
                           grid, tol: float = 1e-12) -> DensityResult:
    """Density after moving the potential by t along phi (u -> u - t phi)."""
    return bergman_density(metric.with_potential(phi, t), m, grid, tol)


@dataclass
class CurvatureReport:
    s: float
    rho: float
    lap_rho: float
    a1: float
    a2: float


def scalar_curvature(metric: RadialMetric, s: float) -> CurvatureReport:
    """Scalar curvature, its Laplacian, and the induced expansion data.

    All derivatives come from degree-6 Taylor jets of the potential, so
    no finite differencing enters.  a1 = rho/2 and a2 = (Delta rho)/3;
    for the round metric this gives (2, 0, 1, 0).
    """
    order = 6
    if not hasattr(metric.profile, "jet_at"):
        raise DerivativeUnavailableError(
            "profile does not expose Taylor jets up to order 6"
        )
    x = Jet.variable(float(s), order)
    psi = (x + 1.0).log() + metric.profile.jet_at(float(s), order)

    def radial(f: Jet) -> Jet:
        f1 = f.derivative()
        return f1 + x * f1.derivative()

    g = radial(psi)                 # metric density, jet order 4
    rho = -(radial(g.log()) / g)    # order 2
    lap_rho = radial(rho) / g       # order 0
    return CurvatureReport(float(s), rho.value, lap_rho.value,
                           rho.value / 2.0, lap_rho.value / 3.0)


@dataclass
class FirstVariationResult:
    m: int
    s: float
    step: float
    formula_value: float
    fd_value: float
    rel_diff: float


def first_variation(metric: RadialMetric, phi: RadialProfile, m: int, s: float = 0.0,
                    t: float = 1e-5, tol: float = 1e-11) -> FirstVariationResult:
    """Derivative of the density at a point along the potential direction phi.

    The closed form (Fubini-Study background only) is

        sigma'(0) = -(m+1)^2 * (1/pi) int (m phi~ - Delta phi~) (1+|z|^2)^{-(m+2)} dA

    with phi~ = phi - phi(base).  A base point off the origin is pulled
    back to 0 by the Mobius map z -> (z + w)/(1 - w z), w = sqrt(s),
    which preserves the round metric and commutes with its Laplacian;
    the pulled-back integrand is no longer radial, so the angular
    average is taken numerically.

    The check value is a centred difference of the perturbed density at
    +-t.  Its relative gap is floored at m^2 t sup|phi~|, the step-noise
    scale, so directions with an exactly vanishing derivative do not
    divide noise by noise.
    """
    if t < 1e-9:
        raise StepUnderflowError(f"difference step {t:.3e} is below the noise floor")
    if not metric.is_fubini_study:
        raise ValueError("closed-form first variation requires the Fubini-Study background")

    s = float(s)
    w0 = math.sqrt(s)
    phi0 = float(phi.value(s))
    lap = phi.fs_laplacian_coeffs()
    pcoeffs = phi.coeffs

    def integrand(z):
        # p = 1/(1 + |G(z)|^2) through the stable joint form
        a = 1.0 - w0 * z
        b = z + w0
        d2 = (a * a.conjugate()).real
        n2 = (b * b.conjugate()).real
        p = d2 / (d2 + n2)
        return m * (_horner(pcoeffs, p) - phi0) - _horner(lap, p)

    def weight(sv):
        return np.exp(-(m + 2) * np.log1p(np.asarray(sv, dtype=float)))

    if phi.is_zero:
        formula = 0.0
    else:
        integral = cp1_integral(integrand, weight, rtol=tol, atol=1e-14)
        formula = -((m + 1) ** 2) * integral

    plus = density_with_potential(metric, phi, t, m, [s]).values[0]
    minus = density_with_potential(metric, phi, -t, m, [s]).values[0]
    fd = (plus - minus) / (2.0 * t)

    grid = np.linspace(0.0, 1.0, 2049)
    sup = float(np.max(np.abs(_horner(pcoeffs, grid) - phi0))) if pcoeffs else 0.0
    floor = m * m * t * sup
    den = max(abs(formula), abs(fd), floor)
    rel = abs(formula - fd) / den if den > 0 else 0.0
    return FirstVariationResult(m, s, t, formula, fd, rel)
