"""Composition enumeration, counting, ranking, and helpers."""

import math

import pytest
from hypothesis import given, strategies as st

from compdet import (
    Composition,
    CompositionLookupError,
    Domain,
    ParameterError,
    composition_index,
    count_compositions,
    enumerate_compositions,
    shift_down,
    unit_composition,
)


def parts(comps):
    return [c.parts for c in comps]


class TestEnumeration:
    def test_all_2_2_canonical_order(self):
        assert parts(enumerate_compositions(2, 2, Domain.ALL)) == [
            (0, 2), (1, 1), (2, 0)]

    def test_positive_4_2(self):
        assert parts(enumerate_compositions(4, 2, Domain.POSITIVE)) == [
            (1, 3), (2, 2), (3, 1)]

    def test_positive_is_shift_of_all(self):
        pos = enumerate_compositions(5, 3, Domain.POSITIVE)
        assert parts([shift_down(c) for c in pos]) == parts(
            enumerate_compositions(2, 3, Domain.ALL))

    def test_n_zero_all(self):
        assert parts(enumerate_compositions(0, 3, Domain.ALL)) == [(0, 0, 0)]

    def test_k_one(self):
        assert parts(enumerate_compositions(7, 1, Domain.ALL)) == [(7,)]

    def test_order_is_ascending_lex(self):
        for n, k in [(3, 2), (4, 3), (2, 4), (6, 3)]:
            comps = parts(enumerate_compositions(n, k, Domain.ALL))
            assert comps == sorted(comps)
            assert len(set(comps)) == len(comps)

    def test_membership(self):
        for c in enumerate_compositions(5, 3, Domain.POSITIVE):
            assert c.k == 3 and c.n == 5 and min(c.parts) >= 1


class TestCounting:
    def test_count_4_3_all(self):
        assert count_compositions(4, 3, Domain.ALL) == 15

    @given(st.integers(0, 8), st.integers(1, 5))
    def test_count_matches_enumeration_all(self, n, k):
        assert count_compositions(n, k, Domain.ALL) == len(
            enumerate_compositions(n, k, Domain.ALL))
        assert count_compositions(n, k, Domain.ALL) == math.comb(n + k - 1, k - 1)

    @given(st.integers(1, 8), st.integers(1, 5))
    def test_count_matches_enumeration_positive(self, n, k):
        if n < k:
            with pytest.raises(ParameterError):
                count_compositions(n, k, Domain.POSITIVE)
        else:
            assert count_compositions(n, k, Domain.POSITIVE) == len(
                enumerate_compositions(n, k, Domain.POSITIVE))


class TestIndexOf:
    def test_example(self):
        assert composition_index((1, 1), 2, 2, Domain.ALL) == 1

    @given(st.integers(0, 8), st.integers(1, 5))
    def test_roundtrip_all(self, n, k):
        for i, c in enumerate(enumerate_compositions(n, k, Domain.ALL)):
            assert composition_index(c, n, k, Domain.ALL) == i

    @given(st.integers(1, 8), st.integers(1, 5))
    def test_roundtrip_positive(self, n, k):
        if n < k:
            return
        for i, c in enumerate(enumerate_compositions(n, k, Domain.POSITIVE)):
            assert composition_index(c, n, k, Domain.POSITIVE) == i

    def test_rejects_wrong_sum(self):
        with pytest.raises(CompositionLookupError):
            composition_index((1, 2), 2, 2, Domain.ALL)

    def test_rejects_wrong_length(self):
        with pytest.raises(CompositionLookupError):
            composition_index((2,), 2, 2, Domain.ALL)

    def test_rejects_zero_part_in_positive(self):
        with pytest.raises(CompositionLookupError):
            composition_index((0, 2), 2, 2, Domain.POSITIVE)


class TestHelpers:
    def test_shift_down(self):
        assert shift_down(Composition((3, 1, 2))).parts == (2, 0, 1)

    def test_shift_down_rejects_zero_part(self):
        with pytest.raises(ParameterError):
            shift_down(Composition((1, 0)))

    def test_unit_composition(self):
        assert unit_composition(2, 3).parts == (0, 1, 0)
        assert unit_composition(1, 1).parts == (1,)

    def test_unit_composition_range(self):
        with pytest.raises(ParameterError):
            unit_composition(0, 3)
        with pytest.raises(ParameterError):
            unit_composition(4, 3)


class TestParameterErrors:
    def test_k_zero(self):
        with pytest.raises(ParameterError):
            enumerate_compositions(2, 0, Domain.ALL)

    def test_negative_n(self):
        with pytest.raises(ParameterError):
            enumerate_compositions(-1, 2, Domain.ALL)

    def test_positive_needs_n_at_least_k(self):
        with pytest.raises(ParameterError):
            enumerate_compositions(2, 3, Domain.POSITIVE)

    def test_composition_rejects_negative_parts(self):
        with pytest.raises(ParameterError):
            Composition((1, -1))
