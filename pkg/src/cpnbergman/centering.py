"""Contraction-mapping solver for centrally positioned potentials.

A potential phi is centrally positioned once the automorphism pullback
kills its component along the first Laplace eigenspace.  The step map

    T(A) = A - damping * L^{-1} v(A),
    v_i(A) = int (phi - rho_{-A}) theta_i  d(FS volume)

fixes exactly the A for which the centering integrals vanish.  The
integrals run against the fixed round measure: pulling the defining
integral back through the automorphism turns rho_A into -rho_{-A} and
leaves the measure alone, so the quadrature domain never moves.

Types are dimension-generic; the integrals (and hence t_step/center)
are implemented for n = 1 only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Sequence

import numpy as np

from .errors import (DivergenceError, NonConvergenceError, SingularMatrixError,
                     UnsupportedDimensionError)
from .projective import (EigenBasisFunction, HermitianRational, canonical_p_basis,
                         chart_lift, first_eigenbasis, hermitian_pairing)
from .quadrature import cp1_integral, fs_weight


class TracelessHermitian:
    """(n+1)x(n+1) traceless Hermitian matrix, projected at construction.

    Hermitization is exact in floating point; the last diagonal entry
    balances the others so the trace is exactly zero.
    """

    def __init__(self, matrix):
        M = np.array(matrix, dtype=complex)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError("matrix must be square")
        M = (M + M.conj().T) / 2.0
        size = M.shape[0]
        d = M.diagonal().real - M.diagonal().real.mean()
        for i in range(size):
            M[i, i] = d[i]
        M[size - 1, size - 1] = -d[: size - 1].sum()
        self.matrix = M
        self._expm = None

    @classmethod
    def zero(cls, n: int) -> "TracelessHermitian":
        return cls(np.zeros((n + 1, n + 1)))

    @property
    def n(self) -> int:
        return self.matrix.shape[0] - 1

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.matrix))

    def expm(self) -> np.ndarray:
        if self._expm is None:
            w, U = np.linalg.eigh(self.matrix)
            self._expm = (U * np.exp(w)) @ U.conj().T
        return self._expm

    def scaled(self, t: float) -> "TracelessHermitian":
        return TracelessHermitian(t * self.matrix)

    def __add__(self, other: "TracelessHermitian") -> "TracelessHermitian":
        return TracelessHermitian(self.matrix + other.matrix)

    def __sub__(self, other: "TracelessHermitian") -> "TracelessHermitian":
        return TracelessHermitian(self.matrix - other.matrix)

    def __repr__(self):
        return f"TracelessHermitian({self.matrix.tolist()!r})"


def rho_potential(A: TracelessHermitian, z):
    """Automorphism potential log(|e^A Z|^2 / |Z|^2) at chart point(s) z."""
    E = A.expm()
    Z = chart_lift(A.n, z)
    W = np.einsum("ij,j...->i...", E, Z)
    num = np.sum(np.abs(W) ** 2, axis=0)
    den = np.sum(np.abs(Z) ** 2, axis=0)
    return np.log(num / den)


class AutomorphismPotential:
    """rho_A as a chart potential; rho_0 is identically zero."""

    def __init__(self, A: TracelessHermitian):
        self.A = A

    def __call__(self, z):
        return rho_potential(self.A, z)


def gauge_potential(B: TracelessHermitian) -> AutomorphismPotential:
    return AutomorphismPotential(B)


def zero_potential(z):
    return np.zeros(np.shape(z))


def eigenbasis_potential(fn: EigenBasisFunction, scale: float) -> Callable:
    def phi(z):
        return scale * fn.evaluate_lifts(chart_lift(fn.n, z))

    return phi


@dataclass(frozen=True)
class LMap:
    """Coordinate map from canonical traceless-Hermitian coordinates to
    coefficients in the orthonormal first-eigenspace basis."""

    n: int
    matrix: np.ndarray
    inverse: np.ndarray
    p_basis: tuple
    theta_basis: tuple

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


def build_L(n: int) -> LMap:
    """Matrix of A -> <theta_A, theta_hat_i> with exact pairings.

    Entries come from the closed-form eigenspace pairing, so the only
    floating step is the normalization square root.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    theta = tuple(first_eigenbasis(n))
    pbasis = tuple(canonical_p_basis(n))
    s = len(pbasis)
    L = np.empty((s, s))
    for i, th in enumerate(theta):
        for b, B in enumerate(pbasis):
            L[i, b] = float(hermitian_pairing(B, th.exact, n)) * th.normalization
    sv = np.linalg.svd(L, compute_uv=False)
    if sv[-1] <= 1e-10 * sv[0]:
        raise SingularMatrixError(
            f"coordinate map is numerically singular (sigma_min/sigma_max = {sv[-1]/sv[0]:.3e})"
        )
    return LMap(n, L, np.linalg.inv(L), pbasis, theta)


def _p_matrix(L: LMap, coords: np.ndarray) -> TracelessHermitian:
    M = np.zeros((L.n + 1, L.n + 1), dtype=complex)
    for c, B in zip(coords, L.p_basis):
        M += c * B.to_numpy()
    return TracelessHermitian(M)


def centering_residual(A: TracelessHermitian, phi: Callable, L: LMap,
                       rtol: float = 1e-10) -> np.ndarray:
    """The s centering integrals v_i(A) = int (phi - rho_{-A}) theta_i dV_0."""
    if L.n != 1:
        raise UnsupportedDimensionError("centering integrals are implemented for n = 1 only")
    rho = AutomorphismPotential(A.scaled(-1.0))
    out = np.empty(L.size)
    for i, th in enumerate(L.theta_basis):
        def F(z, th=th):
            return (phi(z) - rho(z)) * th.evaluate_lifts(chart_lift(1, z))

        out[i] = cp1_integral(F, fs_weight, rtol=rtol, atol=1e-13)
    return out


def t_step(A: TracelessHermitian, phi: Callable, rtol: float = 1e-10,
           damping: float = 0.5, L: LMap = None) -> TracelessHermitian:
    """One step of the centering map T(A) = A - damping * L^{-1} v(A)."""
    if L is None:
        L = build_L(A.n)
    v = centering_residual(A, phi, L, rtol)
    return A - _p_matrix(L, damping * (L.inverse @ v))


@dataclass
class CenteringState:
    iteration: int
    A: TracelessHermitian
    residual: np.ndarray
    step_norm: float
    converged: bool
    trace: tuple  # rows (iteration, step_norm, residual_norm)

    @property
    def residual_norm(self) -> float:
        return float(np.linalg.norm(self.residual))

    def trace_csv_rows(self) -> List[tuple]:
        return [("iteration", "step_norm", "residual_norm")] + list(self.trace)


def center(phi: Callable, tol: float = 1e-8, max_iter: int = 50, *, n: int = 1,
           eta: float = 0.1, damping: float = 0.5, rtol: float = 1e-10) -> CenteringState:
    """Iterate the centering map from A = 0 until the integrals vanish.

    Requires the C0 norm of phi (estimated on a chart grid covering both
    poles) to sit below eta, the calibrated contraction threshold; the
    iteration raises DivergenceError after five consecutive growing
    steps and NonConvergenceError past max_iter, with the partial state
    attached.
    """
    if n != 1:
        raise UnsupportedDimensionError("centering is implemented for n = 1 only")
    sup = _sup_norm_estimate(phi)
    if sup > eta:
        raise ValueError(
            f"potential C0 norm estimate {sup:.4g} exceeds the contraction threshold {eta}"
        )
    L = build_L(n)
    A = TracelessHermitian.zero(n)
    r = centering_residual(A, phi, L, rtol)
    rnorm = float(np.linalg.norm(r))
    trace = [(0, 0.0, rnorm)]
    if rnorm < tol:
        return CenteringState(0, A, r, 0.0, True, tuple(trace))

    grow = 0
    prev_step = None
    for k in range(1, max_iter + 1):
        delta = _p_matrix(L, damping * (L.inverse @ r))
        newA = A - delta
        step = float(np.linalg.norm(newA.matrix - A.matrix))
        if prev_step is not None and step > prev_step:
            grow += 1
        else:
            grow = 0
        prev_step = step
        A = newA
        r = centering_residual(A, phi, L, rtol)
        rnorm = float(np.linalg.norm(r))
        trace.append((k, step, rnorm))
        if grow >= 5:
            state = CenteringState(k, A, r, step, False, tuple(trace))
            raise DivergenceError(
                "step norms grew for 5 consecutive iterations", state=state
            )
        if rnorm < tol and step < tol:
            return CenteringState(k, A, r, step, True, tuple(trace))
    state = CenteringState(max_iter, A, r, prev_step or 0.0, False, tuple(trace))
    raise NonConvergenceError(
        f"no convergence within {max_iter} iterations (residual {rnorm:.3e})", state=state
    )


def _sup_norm_estimate(phi: Callable, n_radial: int = 81, n_theta: int = 32) -> float:
    p = np.linspace(1e-4, 1.0, n_radial, endpoint=False)
    s = 1.0 / p - 1.0
    radius = np.sqrt(s)
    theta = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    z = np.outer(radius, np.exp(1j * theta)).ravel()
    vals = np.abs(np.asarray(phi(z), dtype=float))
    return float(np.max(vals)) if vals.size else 0.0


def estimate_contraction(phi: Callable, n_pairs: int = 5, radius: float = 0.05,
                         rtol: float = 1e-9, seed: int = 0, damping: float = 0.5) -> float:
    """Largest observed ||T(B)-T(A)|| / ||B-A|| over random pairs in the ball."""
    L = build_L(1)
    rng = np.random.default_rng(seed)

    def sample() -> TracelessHermitian:
        M = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        A = TracelessHermitian(M)
        return A.scaled(radius * rng.uniform(0.2, 1.0) / max(A.norm, 1e-30))

    worst = 0.0
    for _ in range(n_pairs):
        A, B = sample(), sample()
        gap = (B - A).norm
        if gap < 1e-12:
            continue
        TA = t_step(A, phi, rtol, damping, L)
        TB = t_step(B, phi, rtol, damping, L)
        worst = max(worst, (TB - TA).norm / gap)
    return worst
