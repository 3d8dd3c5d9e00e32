"""Exact Laplacian combinatorics at the Fubini-Study base point.

Everything in this module is arbitrary-precision rational arithmetic:
multi-index monomials, the Laplacian rewrite on |z^P|^2, the conversion
polynomials f_k relating Fubini-Study Laplacian powers at the origin to
flat ones, the eigenfunction variation series in 1/m, and the
polynomiality criterion that singles out the first eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, List, Sequence, Set, Tuple

from .ratpoly import InverseMSeries, RationalPolynomial


class MultiIndex:
    """Exponent tuple P of a monomial z^P, ordered by degree then lex."""

    __slots__ = ("exponents",)

    def __init__(self, exponents: Iterable[int]):
        exps = tuple(int(p) for p in exponents)
        if any(p < 0 for p in exps):
            raise ValueError("multi-index components must be nonnegative")
        self.exponents = exps

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def factorial(self) -> int:
        out = 1
        for p in self.exponents:
            out *= factorial(p)
        return out

    def add_unit(self, i: int) -> "MultiIndex":
        e = list(self.exponents)
        e[i] += 1
        return MultiIndex(e)

    def sub_unit(self, i: int) -> "MultiIndex":
        e = list(self.exponents)
        e[i] -= 1
        return MultiIndex(e)

    def _key(self):
        return (self.degree, self.exponents)

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __eq__(self, other):
        return isinstance(other, MultiIndex) and self.exponents == other.exponents

    def __hash__(self):
        return hash(self.exponents)

    def __len__(self):
        return len(self.exponents)

    def __getitem__(self, i):
        return self.exponents[i]

    def __repr__(self):
        return "MultiIndex%r" % (self.exponents,)


def _as_multi_index(P, n: int) -> MultiIndex:
    mi = P if isinstance(P, MultiIndex) else MultiIndex(P)
    if mi.n != n:
        raise ValueError("multi-index has %d components, expected %d" % (mi.n, n))
    return mi


class MonomialMeasure:
    """Finite sum sum_P c_P |z^P|^2 as a sparse map, closed under Delta.

    The Fubini-Study Laplacian sends a squared monomial to a combination
    of squared monomials of degree shifted by -1, 0 and +1, so iterating
    the rewrite stays inside this class.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[MultiIndex, Fraction] = None):
        self.n = n
        self.terms: Dict[MultiIndex, Fraction] = {}
        if terms:
            for P, c in terms.items():
                self._add(P, c)

    def _add(self, P: MultiIndex, c: Fraction):
        if c == 0:
            return
        cur = self.terms.get(P)
        if cur is None:
            self.terms[P] = c
        else:
            cur += c
            if cur == 0:
                del self.terms[P]
            else:
                self.terms[P] = cur

    @classmethod
    def monomial(cls, n: int, P) -> "MonomialMeasure":
        mm = cls(n)
        mm._add(_as_multi_index(P, n), Fraction(1))
        return mm

    def constant_term(self) -> Fraction:
        zero = MultiIndex((0,) * self.n)
        return self.terms.get(zero, Fraction(0))

    def apply_fs_laplacian(self) -> "MonomialMeasure":
        """One step of the rewrite for Delta |z^P|^2.

        Delta|z^P|^2 = sum_{i: p_i>0} p_i^2 (|z^{P-e_i}|^2
                       + sum_k |z^{P-e_i+e_k}|^2)
                       + |P|^2 (|z^P|^2 + sum_k |z^{P+e_k}|^2).
        Terms with p_i = 0 are dropped; their coefficient vanishes anyway.
        """
        out = MonomialMeasure(self.n)
        for P, c in self.terms.items():
            d = P.degree
            for i in range(self.n):
                pi = P[i]
                if pi == 0:
                    continue
                w = c * pi * pi
                lower = P.sub_unit(i)
                out._add(lower, w)
                for k in range(self.n):
                    out._add(lower.add_unit(k), w)
            if d:
                w = c * d * d
                out._add(P, w)
                for k in range(self.n):
                    out._add(P.add_unit(k), w)
        return out


def laplacian_power_at_zero(n: int, P, k: int) -> Fraction:
    """Delta^k |z^P|^2 evaluated at the origin, exactly."""
    if k < 0:
        raise ValueError("k must be >= 0")
    mm = MonomialMeasure.monomial(n, P)
    for _ in range(k):
        mm = mm.apply_fs_laplacian()
    return mm.constant_term()


def mixed_laplacian_power_at_zero(n: int, P, Q, k: int) -> Fraction:
    """Delta^k (z^P zbar^Q) at the origin on the extended monomial basis.

    Delta(z^P zbar^Q) = sum_i p_i q_i (z^{P-e_i} zbar^{Q-e_i}
                        + sum_k z^{P-e_i+e_k} zbar^{Q-e_i+e_k})
                        + |P||Q| (z^P zbar^Q + sum_k z^{P+e_k} zbar^{Q+e_k}).
    The rewrite preserves P - Q, so for P != Q the constant term can
    never appear and the result is 0 for every k.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    Pm = _as_multi_index(P, n)
    Qm = _as_multi_index(Q, n)
    state: Dict[Tuple[MultiIndex, MultiIndex], Fraction] = {(Pm, Qm): Fraction(1)}
    for _ in range(k):
        nxt: Dict[Tuple[MultiIndex, MultiIndex], Fraction] = {}

        def add(key, c):
            cur = nxt.get(key)
            tot = c if cur is None else cur + c
            if tot == 0:
                nxt.pop(key, None)
            else:
                nxt[key] = tot

        for (A, B), c in state.items():
            for i in range(n):
                w = c * A[i] * B[i]
                if w == 0:
                    continue
                la, lb = A.sub_unit(i), B.sub_unit(i)
                add((la, lb), w)
                for j in range(n):
                    add((la.add_unit(j), lb.add_unit(j)), w)
            w = c * A.degree * B.degree
            if w != 0:
                add((A, B), w)
                for j in range(n):
                    add((A.add_unit(j), B.add_unit(j)), w)
        state = nxt
    zero = MultiIndex((0,) * n)
    return state.get((zero, zero), Fraction(0))


def delta_c_power_at_zero(l: int, P) -> Fraction:
    """Flat Laplacian powers of |z^P|^2 at 0: l! P! when l = |P|, else 0."""
    if l < 0:
        raise ValueError("l must be >= 0")
    mi = P if isinstance(P, MultiIndex) else MultiIndex(P)
    if l != mi.degree:
        return Fraction(0)
    return Fraction(factorial(l) * mi.factorial())


def fs_monomial_integral(n: int, m: int, P) -> Fraction:
    """Exact value of (1/pi^n) int |z^P|^2 (1+|z|^2)^{-(m+n+1)} dV.

    Equals P! (m-|P|)! / (m+n)!; the formula needs |P| <= m.
    """
    mi = _as_multi_index(P, n)
    if mi.degree > m:
        raise ValueError("requires |P| <= m, got |P|=%d, m=%d" % (mi.degree, m))
    return Fraction(mi.factorial() * factorial(m - mi.degree), factorial(m + n))


@dataclass(frozen=True)
class ConversionTable:
    """Rows a_{k,l} of the conversion polynomials f_k(t) = sum_l a_{k,l} t^l."""

    n: int
    rows: Tuple[Tuple[Fraction, ...], ...]  # rows[k-1] has entries l=0..k

    @property
    def max_order(self) -> int:
        return len(self.rows)

    def coefficient(self, k: int, l: int) -> Fraction:
        if not (1 <= k <= self.max_order):
            raise ValueError("row %d not computed" % k)
        row = self.rows[k - 1]
        if 0 <= l < len(row):
            return row[l]
        return Fraction(0)

    def polynomial(self, k: int) -> RationalPolynomial:
        if not (1 <= k <= self.max_order):
            raise ValueError("row %d not computed" % k)
        return RationalPolynomial(self.rows[k - 1])

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "rows": [
                ["%d/%d" % (c.numerator, c.denominator) for c in row]
                for row in self.rows
            ],
        }


def conversion_polynomials(n: int, K: int) -> ConversionTable:
    """Build rows 1..K of the a_{k,l} recursion.

    a_{k+1,l} = a_{k,l-1} + l(2l+n-1) a_{k,l} + l^2 (l+1)(l+n) a_{k,l+1},
    with a_{k,0} = 0 and a_{k,k} = 1.
    """
    if n < 1 or K < 1:
        raise ValueError("need n >= 1 and K >= 1")
    rows: List[Tuple[Fraction, ...]] = [(Fraction(0), Fraction(1))]
    for k in range(1, K):
        prev = rows[-1]

        def a(l):
            return prev[l] if 0 <= l < len(prev) else Fraction(0)

        row = [Fraction(0)]
        for l in range(1, k + 2):
            row.append(
                a(l - 1)
                + l * (2 * l + n - 1) * a(l)
                + l * l * (l + 1) * (l + n) * a(l + 1)
            )
        rows.append(tuple(row))
    return ConversionTable(n=n, rows=tuple(rows))


def eigen_delta_c_values(n: int, K: int) -> List[RationalPolynomial]:
    """Flat-Laplacian moments of a Laplace eigenfunction, as polynomials.

    For radial phi with Delta phi = -lambda phi and phi(0) = 1, the values
    delta_l = Delta_c^l phi(0) satisfy (-lambda)^k = sum_l a_{k,l} delta_l.
    The system is unit triangular (a_{k,k} = 1), so each delta_k is a
    polynomial in lambda of degree k.  Returns [delta_0, ..., delta_K].
    """
    table = conversion_polynomials(n, K) if K >= 1 else None
    deltas = [RationalPolynomial([1])]
    neg_lam = RationalPolynomial([0, -1])
    power = RationalPolynomial([1])
    for k in range(1, K + 1):
        power = power * neg_lam
        acc = power
        for l in range(1, k):
            acc = acc - table.coefficient(k, l) * deltas[l]
        deltas.append(acc)
    return deltas


def _rising_factors(first: int, last: int) -> RationalPolynomial:
    # product of (m + i) for i in [first, last]
    return RationalPolynomial.from_roots([-i for i in range(first, last + 1)])


def variation_prefactor(n: int, J: int) -> InverseMSeries:
    """The raw assembled prefactor -((m+n)!/m!)^2 / n! as an exact series."""
    Q = _rising_factors(1, n)
    poly = (Q * Q) * Fraction(-1, factorial(n))
    return InverseMSeries.from_polynomial(poly, J)


def variation_series_eigen(
    n: int,
    lam,
    J: int,
    centered: bool = False,
    normalized: bool = True,
) -> InverseMSeries:
    """Expansion in 1/m of the density first variation for an eigenfunction.

    For radial phi with Delta phi = -lambda phi and phi(0) = 1 the kernel
    moment is  int phi (1+|z|^2)^{-(m+n+1)} dV / pi^n
             = sum_k delta_k(lambda) (m-k)!/(k! (m+n)!),
    and the variation picks up the factor (m + lambda) from m phi - Delta phi
    together with ((m+n)!/m!)^2 and -1/n!.  All factorial ratios are expanded
    exactly to relative order J.

    The raw assembly takes phi itself as the perturbation.  The variation
    formula is stated for potentials vanishing at the base point; passing
    centered=True subtracts the constant phi(0) contribution, which cancels
    the two leading orders (the returned centered series therefore carries
    relative order J-2).
    """
    if J < 1:
        raise ValueError("J must be >= 1")
    lam = Fraction(lam)
    deltas = eigen_delta_c_values(n, J)
    series = InverseMSeries.zero(-n - J)
    for k in range(J + 1):
        dk = deltas[k](lam)
        if dk == 0:
            continue
        Pk = _rising_factors(-k + 1, n)
        term = InverseMSeries.from_polynomial(Pk, J).reciprocal()
        series = series + term * Fraction(dk, factorial(k))
    m_plus_lam = InverseMSeries.from_polynomial(RationalPolynomial([lam, 1]), J)
    result = variation_prefactor(n, J) * m_plus_lam * series
    if centered:
        Q = _rising_factors(1, n)
        back = (Q * RationalPolynomial.x()) * Fraction(1, factorial(n))
        result = result + InverseMSeries.from_polynomial(back, J)
    if normalized:
        result = result.normalized()
    return result


def variation_order1_polynomial(n: int) -> RationalPolynomial:
    """Coefficient of m^{n-1} in the centered variation, as a polynomial in lambda.

    The two top orders of the centered series cancel identically, so this
    is its leading behavior.  Only delta_0..delta_2 reach this order, hence
    the degree is at most 2; five interpolation nodes overdetermine it.
    """
    xs = [Fraction(v) for v in range(5)]
    ys = []
    for lam in xs:
        c = variation_series_eigen(n, lam, J=4, centered=True, normalized=False)
        ys.append(c.coefficient_at(n - 1))
    return RationalPolynomial.interpolate(xs, ys)


def polynomiality_criterion(n: int, k0: int):
    """Exact division test for the closed-form variation at lambda = k0(k0+n).

    Numerator (m+n)...(m-k0+1) (m + k0(k0+n)), denominator
    (m+k0+n)...(m+n+1).  Returns (remainder is zero, remainder).
    """
    if k0 < 1:
        raise ValueError("k0 must be >= 1")
    numer = _rising_factors(-k0 + 1, n) * RationalPolynomial([k0 * (k0 + n), 1])
    denom = _rising_factors(n + 1, n + k0)
    _, rem = divmod(numer, denom)
    return rem.is_zero(), rem


def admissible_eigenvalue_scan(n: int, k_max: int, J: int) -> Set[int]:
    """Levels k <= k_max whose variation series is polynomial through order J.

    Keeps k when the series for lambda = k(k+n) has coefficient zero at
    every order j with n < j <= J.
    """
    out: Set[int] = set()
    for k in range(1, k_max + 1):
        series = variation_series_eigen(n, k * (k + n), J)
        if all(series.leading_coefficients(J + 1)[j] == 0 for j in range(n + 1, J + 1)):
            out.add(k)
    return out
