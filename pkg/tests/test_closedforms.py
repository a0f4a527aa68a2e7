"""Factored right-hand sides, the linear factor T, kernel vectors, and
the proof-internal lemma identities."""

import math
from fractions import Fraction

import pytest

from compdet import (
    Composition,
    FactoredForm,
    ParameterError,
    Polynomial,
    TheoremId,
    chu_vandermonde_lhs,
    chu_vandermonde_rhs,
    count_compositions,
    counting_binomial,
    enumerate_compositions,
    factorial_product,
    factorial_product_closed,
    kernel_vector,
    l_var,
    linear_factor_T,
    rhs,
    x_var,
)
from compdet.closedforms import epsilon_factor_count


class TestFrozenRhsExamples:
    def test_thm4_1_1(self):
        form = rhs(TheoremId.THM4, 1, 1)
        assert form.scalar == 1
        assert len(form.factors) == 1
        base, exp = form.factors[0]
        assert exp == 1
        assert base == x_var(1, 1) + l_var(1, 1)

    def test_thm1_2_2_is_16(self):
        form = rhs(TheoremId.THM1, 2, 2)
        expanded = form.expand()
        assert expanded.total_degree() == 0
        assert expanded.constant_value() == 16

    def test_thm1_3_2_is_8748(self):
        assert rhs(TheoremId.THM1, 3, 2).expand().constant_value() == 8748

    def test_dp_2_2(self):
        form = rhs(TheoremId.DP, 2, 2)
        expected = (x_var(2, 1) + l_var(2, 1)) * (x_var(2, 2) + l_var(2, 2))
        assert form.expand() == expected


class TestLinearFactorT:
    def test_t_1_1(self):
        assert linear_factor_T(1, 1, (0,)) == x_var(1, 1) + l_var(1, 1)

    def test_t_2_2_eps_1_0(self):
        x1, x2 = x_var(2, 1), x_var(2, 2)
        l1, l2 = l_var(2, 1), l_var(2, 2)
        expected = l1 * l2 * 2 + x1 * l2 + x2 * l1 - l2
        assert linear_factor_T(2, 2, (1, 0)) == expected

    def test_t_specializes_to_n_minus_eps_sum(self):
        for n, k in [(1, 1), (3, 2), (4, 3)]:
            point = [0] * k + [1] * k  # x = 0, lambda = 1
            for total in range(n):
                for eps in enumerate_compositions(total, k):
                    t = linear_factor_T(n, k, eps)
                    assert t.evaluate(point) == n - total

    def test_t_degree_and_lambda_structure(self):
        # T is homogeneous of total degree k, and every term carries at
        # least k-1 lambda factors.
        for n, k in [(2, 2), (3, 3), (4, 2)]:
            t = linear_factor_T(n, k, (n - 1,) + (0,) * (k - 1))
            assert t.total_degree() == k
            # the eps-free part (eps = 0) is homogeneous of degree k
            t0 = linear_factor_T(n, k, (0,) * k)
            assert t0.homogeneous_component(k) == t0
            for exps in t.terms:
                lam_degree = sum(exps[k:])
                assert lam_degree >= k - 1
                assert sum(exps) in (k - 1, k)

    def test_t_rejects_bad_eps(self):
        with pytest.raises(ParameterError):
            linear_factor_T(2, 2, (1,))
        with pytest.raises(ParameterError):
            linear_factor_T(2, 2, (-1, 0))


class TestKernelVector:
    def test_frozen_example_2_2(self):
        vec = kernel_vector(2, 2, 1, (1, 0))
        l1, l2 = l_var(2, 1), l_var(2, 2)
        assert vec == {
            Composition((2, 0)): l2 * 2,
            Composition((1, 1)): l1,
        }

    def test_support_is_delta_plus_eps(self):
        n, k, i, eps = 3, 2, 2, (1, 0)
        vec = kernel_vector(n, k, i, eps)
        expected_support = {
            Composition(tuple(d + e for d, e in zip(delta, eps)))
            for delta in enumerate_compositions(i, k)}
        assert set(vec) <= expected_support
        for comp in vec:
            assert comp.n == n

    def test_rejects_bad_parameters(self):
        with pytest.raises(ParameterError):
            kernel_vector(2, 2, 0, (2, 0))
        with pytest.raises(ParameterError):
            kernel_vector(2, 2, 3, (0, 0))
        with pytest.raises(ParameterError):
            kernel_vector(2, 2, 1, (2, 0))  # |eps| != n - i


class TestLemmaIdentities:
    def test_chu_vandermonde_2_2(self):
        assert chu_vandermonde_lhs(2, 2) == chu_vandermonde_rhs(2, 2)

    @pytest.mark.parametrize("k", [1, 2, 3])
    @pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
    def test_chu_vandermonde_sweep(self, n, k):
        assert chu_vandermonde_lhs(n, k) == chu_vandermonde_rhs(n, k)

    def test_factorial_product_frozen(self):
        assert factorial_product(2, 2) == 4
        assert factorial_product_closed(2, 2) == 4
        for k in range(1, 5):
            assert factorial_product(0, k) == 1
        for n in range(0, 7):
            assert factorial_product(n, 1) == math.factorial(n)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    @pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 5, 6])
    def test_factorial_product_closed_form(self, n, k):
        assert factorial_product(n, k) == factorial_product_closed(n, k)

    def test_epsilon_count_invariant(self):
        for n in range(1, 9):
            for k in range(1, 6):
                assert epsilon_factor_count(n, k) == counting_binomial(n + k - 1, k)
                assert epsilon_factor_count(n, k) == sum(
                    count_compositions(i, k) for i in range(n))


class TestRhsInvariants:
    def test_total_degree(self):
        for n in range(1, 6):
            for k in range(1, 5):
                target = k * counting_binomial(n + k - 1, k)
                # arithmetic form of the same count
                assert target == n * count_compositions(n, k)
                if counting_binomial(n + k - 1, k) <= 10:
                    assert rhs(TheoremId.THM4, n, k).expand().total_degree() == target

    def test_exponent_link(self):
        for n in range(1, 13):
            for k in range(1, 13):
                for i in range(1, n):
                    assert ((k - 1) * counting_binomial(n + k - i - 1, k - 1)
                            == (n - i + 1) * counting_binomial(n + k - i - 1, k - 2))

    def test_parity(self):
        for n in range(1, 31):
            for k in range(1, 31):
                total = (n * count_compositions(n, k)
                         + k * counting_binomial(n + k - 1, k))
                assert total % 2 == 0

    def test_homogeneous_component_links_thm4_to_cor5a(self):
        # the top-degree part of det(binomial matrix) times prod(beta!)
        # equals det(power matrix)
        for n, k in [(2, 2), (3, 2), (2, 3)]:
            degree = k * counting_binomial(n + k - 1, k)
            thm4 = rhs(TheoremId.THM4, n, k).expand() * factorial_product(n, k)
            cor5a = rhs(TheoremId.COR5A, n, k).expand()
            assert thm4.homogeneous_component(degree) == cor5a

    def test_eps_factor_count_in_thm4(self):
        for n, k in [(1, 1), (2, 2), (3, 2), (2, 3)]:
            form = rhs(TheoremId.THM4, n, k)
            assert len(form.factors) == counting_binomial(n + k - 1, k)

    def test_all_ids_produce_forms(self):
        for theorem in TheoremId:
            n = 3 if theorem.value in {"DP", "DP2", "COR1B"} else 2
            form = rhs(theorem, n, 2)
            assert isinstance(form, FactoredForm)
            assert form.scalar != 0


class TestFactoredForm:
    def test_make_drops_trivial_factors(self):
        one = Polynomial.constant(2, 1)
        x1 = x_var(1, 1)
        form = FactoredForm.make(1, 2, [(x1, 0), (one, 3), (x1, 2)])
        assert form.factors == ((x1, 2),)
        assert form.scalar == 2

    def test_make_rejects_negative_exponent(self):
        with pytest.raises(ValueError):
            FactoredForm.make(1, 1, [(x_var(1, 1), -1)])

    def test_evaluate_matches_expand(self):
        form = rhs(TheoremId.THM4, 2, 2)
        values = [Fraction(1, 3), Fraction(2, 5), Fraction(7), Fraction(-3, 2)]
        assert form.evaluate(values) == form.expand().evaluate(values)

    def test_json_shape(self):
        d = rhs(TheoremId.THM4, 1, 1).to_json_dict()
        assert d["scalar"] == "1"
        assert len(d["factors"]) == 1
        assert set(d["factors"][0]) == {"base", "exp"}

    def test_parameter_errors(self):
        with pytest.raises(ParameterError):
            rhs(TheoremId.DP, 1, 2)  # positive domain needs n >= k
        with pytest.raises(ParameterError):
            rhs(TheoremId.THM4, 0, 1)
        with pytest.raises(ParameterError):
            rhs(TheoremId.THM4, 1, 0)
