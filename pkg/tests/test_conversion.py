"""Exact Laplacian-power combinatorics and the eigenvalue variation series.

The independent oracle here is symbolic Wirtinger calculus (sympy): the
Fubini-Study Laplacian on the standard chart is
Delta f = (1 + |z|^2) * sum_ij (delta_ij + z_i zbar_j) d^2 f / dz_i dzbar_j,
with zbar treated as an independent variable.
"""

import itertools
import json
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from cpnbergman import (
    ConversionTable,
    MultiIndex,
    RationalPolynomial,
    admissible_eigenvalue_scan,
    conversion_polynomials,
    delta_c_power_at_zero,
    eigen_delta_c_values,
    fs_monomial_integral,
    laplacian_power_at_zero,
    mixed_laplacian_power_at_zero,
    polynomiality_criterion,
    variation_order1_polynomial,
    variation_series_eigen,
)


def _sympy_laplacian_power(n, P, Q, k):
    """[Delta^k z^P zbar^Q](0) by symbolic differentiation."""
    zs = sp.symbols("z0:%d" % n)
    ws = sp.symbols("w0:%d" % n)
    s = sum(z * w for z, w in zip(zs, ws))
    expr = sp.Integer(1)
    for z, p in zip(zs, P):
        expr *= z**p
    for w, q in zip(ws, Q):
        expr *= w**q
    for _ in range(k):
        acc = sp.Integer(0)
        for i in range(n):
            for j in range(n):
                coef = (1 if i == j else 0) + zs[i] * ws[j]
                acc += coef * sp.diff(expr, zs[i], ws[j])
        expr = sp.expand((1 + s) * acc)
    value = expr.subs({v: 0 for v in (*zs, *ws)})
    return Fraction(int(sp.Integer(value)))


def _all_indices(n, max_degree):
    ranges = [range(max_degree + 1)] * n
    return [P for P in itertools.product(*ranges) if sum(P) <= max_degree]


class TestMultiIndex:
    def test_basic(self):
        P = MultiIndex((2, 1))
        assert P.degree == 3
        assert P.factorial() == 2
        assert P.add_unit(1)[1] == 2
        assert P.sub_unit(0)[0] == 1

    def test_ordering_is_total(self):
        idx = sorted(MultiIndex(P) for P in _all_indices(2, 2))
        assert len(set(idx)) == len(idx)


class TestLaplacianPowers:
    def test_stated_values(self):
        assert laplacian_power_at_zero(1, (0,), 1) == 0
        assert laplacian_power_at_zero(1, (1,), 1) == 1
        assert laplacian_power_at_zero(1, (2,), 2) == 4

    @pytest.mark.parametrize("n", [1, 2])
    def test_against_symbolic_differentiation(self, n):
        for P in _all_indices(n, 2):
            for k in range(4):
                assert laplacian_power_at_zero(n, P, k) == _sympy_laplacian_power(
                    n, P, P, k
                ), (n, P, k)

    @pytest.mark.parametrize("n", [1, 2])
    def test_mixed_against_symbolic_differentiation(self, n):
        pairs = [
            (P, Q)
            for P in _all_indices(n, 2)
            for Q in _all_indices(n, 2)
            if P != Q
        ]
        for P, Q in pairs:
            for k in range(3):
                assert mixed_laplacian_power_at_zero(
                    n, P, Q, k
                ) == _sympy_laplacian_power(n, P, Q, k), (n, P, Q, k)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_mixed_monomials_vanish_at_origin(self, n):
        for P in _all_indices(n, 2):
            for Q in _all_indices(n, 2):
                if P == Q:
                    continue
                for k in range(5):
                    assert mixed_laplacian_power_at_zero(n, P, Q, k) == 0

    def test_diagonal_consistency(self):
        for P in _all_indices(2, 3):
            for k in range(4):
                assert mixed_laplacian_power_at_zero(
                    2, P, P, k
                ) == laplacian_power_at_zero(2, P, k)


class TestDeltaCAndIntegrals:
    def test_delta_c_values(self):
        assert delta_c_power_at_zero(2, (1, 1)) == 2
        assert delta_c_power_at_zero(1, (2,)) == 0
        assert delta_c_power_at_zero(3, (3,)) == 36

    def test_monomial_integral_values(self):
        assert fs_monomial_integral(1, 2, (1,)) == Fraction(1, 6)
        assert fs_monomial_integral(1, 0, (0,)) == 1
        assert fs_monomial_integral(2, 3, (2, 1)) == Fraction(1, 60)

    def test_monomial_integral_rejects_large_index(self):
        with pytest.raises(ValueError):
            fs_monomial_integral(1, 1, (2,))


class TestConversionTable:
    def test_low_order_polynomials(self):
        t = conversion_polynomials(1, 3)
        assert t.polynomial(1) == RationalPolynomial([0, 1])
        assert t.polynomial(2) == RationalPolynomial([0, 2, 1])
        assert t.polynomial(3) == RationalPolynomial([0, 8, 10, 1])

    def test_row_constraints(self):
        for n in (1, 2, 3):
            t = conversion_polynomials(n, 5)
            for k in range(1, 6):
                assert t.coefficient(k, 0) == 0
                assert t.coefficient(k, k) == 1

    def test_second_row_depends_on_dimension(self):
        # a_{2,1} = n + 1 comes straight out of the recursion
        for n in (1, 2, 3, 4):
            t = conversion_polynomials(n, 2)
            assert t.coefficient(2, 1) == n + 1

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_converts_laplacian_powers(self, n):
        K = 4
        t = conversion_polynomials(n, K)
        for P in _all_indices(n, K):
            P = MultiIndex(P)
            for k in range(1, K + 1):
                lhs = sum(
                    t.coefficient(k, l) * delta_c_power_at_zero(l, P)
                    for l in range(k + 1)
                )
                assert lhs == laplacian_power_at_zero(n, P, k), (n, P, k)

    def test_json_round_trip(self):
        t = conversion_polynomials(1, 3)
        payload = json.loads(json.dumps(t.to_json_dict()))
        assert payload["n"] == 1
        assert payload["rows"][2] == ["0/1", "8/1", "10/1", "1/1"]

    def test_out_of_range_row(self):
        t = conversion_polynomials(1, 2)
        with pytest.raises(ValueError):
            t.polynomial(3)

    @given(
        n=st.integers(min_value=1, max_value=2),
        exps=st.lists(st.integers(min_value=0, max_value=3), min_size=1, max_size=2),
        k=st.integers(min_value=0, max_value=4),
    )
    @settings(max_examples=40, deadline=None)
    def test_conversion_identity_random(self, n, exps, k):
        P = MultiIndex(tuple(exps[:n]) + (0,) * (n - len(exps)))
        t = conversion_polynomials(n, max(k, 1))
        rhs = laplacian_power_at_zero(n, P, k)
        if k == 0:
            lhs = delta_c_power_at_zero(0, P)
        else:
            lhs = sum(
                t.coefficient(k, l) * delta_c_power_at_zero(l, P)
                for l in range(k + 1)
            )
        assert lhs == rhs


class TestEigenDeltaC:
    def test_low_order(self):
        d = eigen_delta_c_values(1, 2)
        lam = RationalPolynomial([0, 1])
        assert d[0] == RationalPolynomial([1])
        assert d[1] == -lam
        assert d[2] == lam * lam + 2 * lam

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_solves_triangular_system(self, n):
        K = 5
        t = conversion_polynomials(n, K)
        d = eigen_delta_c_values(n, K)
        lam = RationalPolynomial([0, 1])
        for k in range(1, K + 1):
            total = RationalPolynomial()
            for l in range(k + 1):
                total = total + d[l] * RationalPolynomial([t.coefficient(k, l)])
            power = RationalPolynomial([1])
            for _ in range(k):
                power = power * (-lam)
            assert (total - power).is_zero(), (n, k)


class TestVariationSeries:
    def test_first_eigenvalue_truncates(self):
        s = variation_series_eigen(1, 2, 4).normalized()
        assert s.lead == 2
        assert s.leading_coefficients(5) == [1, 1, 0, 0, 0]

    def test_constant_direction_vanishes(self):
        assert variation_series_eigen(1, 0, 2, centered=True).is_zero()

    def test_higher_eigenvalue_has_tail(self):
        s = variation_series_eigen(1, 8, 5).normalized()
        tail = s.leading_coefficients(6)[2:]
        assert any(c != 0 for c in tail)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_first_eigenvalue_tail_vanishes_all_n(self, n):
        J = n + 5
        s = variation_series_eigen(n, n + 1, J).normalized()
        coeffs = s.leading_coefficients(J + 1)
        for j in range(n + 1, J + 1):
            assert coeffs[j] == 0, (n, j)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_order_one_polynomial_roots(self, n):
        p = variation_order1_polynomial(n)
        assert p.degree == 2
        assert p(Fraction(0)) == 0
        assert p(Fraction(n + 1)) == 0
        # proportional to lambda * (lambda - (n+1)) with nonzero constant
        c = p.coefficient(2)
        assert c != 0
        expected = RationalPolynomial.from_roots([0, n + 1]) * RationalPolynomial([c])
        assert (p - expected).is_zero()


class TestPolynomialityScan:
    def test_criterion_values(self):
        ok, rem = polynomiality_criterion(1, 1)
        assert ok and rem.is_zero()
        ok, rem = polynomiality_criterion(1, 2)
        assert not ok and not rem.is_zero()
        ok, _ = polynomiality_criterion(2, 1)
        assert ok

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_polynomial_iff_first_level(self, n):
        for k0 in range(1, 7):
            ok, rem = polynomiality_criterion(n, k0)
            assert ok == (k0 == 1), (n, k0)
            assert rem.is_zero() == ok

    def test_criterion_rejects_bad_level(self):
        with pytest.raises(ValueError):
            polynomiality_criterion(1, 0)

    def test_scan_examples(self):
        assert admissible_eigenvalue_scan(1, 5, 6) == {1}
        assert admissible_eigenvalue_scan(2, 5, 7) == {1}
        assert admissible_eigenvalue_scan(1, 0, 6) == set()

    def test_scan_matches_division_criterion(self):
        for n in (1, 2):
            scan = admissible_eigenvalue_scan(n, 4, n + 4)
            division = {
                k0 for k0 in range(1, 5) if polynomiality_criterion(n, k0)[0]
            }
            assert scan == division
