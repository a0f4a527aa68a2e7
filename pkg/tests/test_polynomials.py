"""Exact multivariate polynomial arithmetic over the rationals."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from compdet import (
    ExactDivisionError,
    Polynomial,
    binomial_value,
    counting_binomial,
    falling_factorial,
    l_var,
    poly_binomial,
    poly_to_string,
    x_var,
)

NVARS = 4  # k = 2 ring: x1, x2, l1, l2


def monomial(exps, coeff=1):
    p = Polynomial.constant(NVARS, coeff)
    for i, e in enumerate(exps):
        p = p * Polynomial.variable(NVARS, i) ** e
    return p


coeffs = st.one_of(
    st.integers(-6, 6),
    st.fractions(min_value=-4, max_value=4, max_denominator=5),
)
exponents = st.tuples(*[st.integers(0, 3)] * NVARS)
polys = st.lists(st.tuples(exponents, coeffs), min_size=0, max_size=5).map(
    lambda terms: sum((monomial(e, c) for e, c in terms), Polynomial.zero(NVARS)))
points = st.lists(
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
    min_size=NVARS, max_size=NVARS)


class TestRingAxioms:
    @settings(max_examples=60, deadline=None)
    @given(polys, polys, polys)
    def test_add_mul_axioms(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @settings(max_examples=60, deadline=None)
    @given(polys)
    def test_additive_inverse_and_identities(self, a):
        zero = Polynomial.zero(NVARS)
        one = Polynomial.constant(NVARS, 1)
        assert a - a == zero
        assert a + zero == a
        assert a * one == a
        assert a * zero == zero


class TestExactDivision:
    def test_difference_of_squares(self):
        x1 = Polynomial.variable(2, 0)
        one = Polynomial.constant(2, 1)
        assert (x1 * x1 - one).exact_div(x1 - one) == x1 + one

    @settings(max_examples=60, deadline=None)
    @given(polys, polys)
    def test_roundtrip(self, a, b):
        if b.is_zero:
            return
        assert (a * b).exact_div(b) == a

    def test_non_divisible_raises(self):
        x1, x2 = Polynomial.variable(NVARS, 0), Polynomial.variable(NVARS, 1)
        with pytest.raises(ExactDivisionError):
            (x1 * x1 + 1).exact_div(x2)

    def test_division_by_zero_raises(self):
        x1 = Polynomial.variable(NVARS, 0)
        with pytest.raises((ExactDivisionError, ZeroDivisionError)):
            x1.exact_div(Polynomial.zero(NVARS))


class TestEvaluation:
    def test_rational_point(self):
        p = x_var(1, 1) + l_var(1, 1)
        assert p.evaluate([Fraction(1, 2), 3]) == Fraction(7, 2)

    @settings(max_examples=60, deadline=None)
    @given(polys, polys, points)
    def test_evaluation_is_ring_homomorphism(self, a, b, pt):
        assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)
        assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)

    @settings(max_examples=40, deadline=None)
    @given(polys, points)
    def test_substitute_constant_matches_evaluate(self, a, pt):
        fully = a.substitute(dict(enumerate(pt)))
        assert fully.constant_value() == a.evaluate(pt)


class TestDegreesAndComponents:
    def test_zero_polynomial_degree(self):
        assert Polynomial.zero(NVARS).total_degree() == -1

    def test_constant_degree(self):
        assert Polynomial.constant(NVARS, 5).total_degree() == 0

    @settings(max_examples=60, deadline=None)
    @given(polys)
    def test_homogeneous_components_sum_back(self, a):
        total = Polynomial.zero(NVARS)
        for d in range(a.total_degree() + 1):
            part = a.homogeneous_component(d)
            assert part.is_zero or part.total_degree() == d
            total = total + part
        assert total == a

    def test_degree_capacity_guard(self):
        # 8-variable ring packs exponents into narrow fields; a product
        # whose degree exceeds the field capacity must be rejected.
        x = Polynomial.variable(8, 0)
        big = x ** 100
        with pytest.raises(ValueError):
            big * big


class TestBinomialConventions:
    def test_falling_factorial(self):
        x1 = x_var(1, 1)
        assert falling_factorial(x1, 2) == x1 * x1 - x1
        assert falling_factorial(x1, 0) == Polynomial.constant(2, 1)

    def test_poly_binomial_negated_argument(self):
        x1 = x_var(1, 1)
        for m in range(5):
            lhs = poly_binomial(x1 * -1, m)
            rhs = poly_binomial(x1 + (m - 1), m) * ((-1) ** m)
            assert lhs == rhs

    def test_poly_binomial_at_integer_points(self):
        import math
        x1 = x_var(1, 1)
        for m in range(5):
            p = poly_binomial(x1, m)
            for v in range(0, 8):
                assert p.evaluate([v, 0]) == math.comb(v, m)

    def test_counting_binomial_zero_outside_range(self):
        assert counting_binomial(-1, 1) == 0
        assert counting_binomial(2, 3) == 0
        assert counting_binomial(3, -1) == 0
        assert counting_binomial(4, 2) == 6

    def test_binomial_value_rational_argument(self):
        assert binomial_value(Fraction(1, 2), 2) == Fraction(-1, 8)
        assert binomial_value(5, 2) == 10


class TestSerialization:
    def test_canonical_format(self):
        p = poly_binomial(x_var(1, 1), 2)
        assert poly_to_string(p, 1) == "1/2*x1^2 + -1/2*x1"

    def test_zero_and_constant(self):
        assert poly_to_string(Polynomial.zero(2), 1) == "0"
        assert poly_to_string(Polynomial.constant(2, -3), 1) == "-3"

    def test_variable_names(self):
        p = x_var(2, 2) + l_var(2, 1)
        s = poly_to_string(p, 2)
        assert "x2" in s and "l1" in s
