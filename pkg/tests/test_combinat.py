import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from charpoly.combinat import (between, boundary, class_size, cycle_type_of, dimension, evaluate_statistic,
                               expand_in_x_basis, graded_degree, is_partition, mn_character,
                               normalize_partition, padded, parse_statistic, partitions, partitions_up_to,
                               x_lambda, young_contains)


def test_partition_helpers():
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert [len(partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert normalize_partition([1, 3, 0, 2]) == (3, 2, 1)
    assert is_partition((2, 2, 1)) and not is_partition((1, 2))
    assert boundary((3, 1, 1)) == (2,)
    assert padded((2, 1), 6) == (3, 2, 1)
    assert len(partitions_up_to(3)) == 1 + 1 + 2 + 3


def test_young_order():
    assert young_contains((2, 1), (1, 1))
    assert not young_contains((2, 1), (3,))
    assert young_contains((2, 1), (1,))
    assert sorted(between((1,), (2, 1), 2)) == sorted([(2,), (1, 1)])


def test_characters():
    assert mn_character((1, 1), (2,)) == -1
    assert mn_character((2, 1), (1, 1, 1)) == 2
    assert mn_character((2, 1), (3,)) == -1
    assert dimension((3, 2)) == 5
    with pytest.raises(ValueError):
        mn_character((2,), (1,))


@pytest.mark.parametrize("n", range(1, 7))
def test_column_orthogonality(n):
    parts = partitions(n)
    fact = math.factorial(n)
    for mu in parts:
        for nu in parts:
            s = sum(class_size(rho) * mn_character(mu, rho) * mn_character(nu, rho) for rho in parts)
            assert Fraction(s, fact) == (1 if mu == nu else 0)


def test_class_sizes_sum_to_factorial():
    for n in range(8):
        assert sum(class_size(rho) for rho in partitions(n)) == math.factorial(n)


def test_cycle_type_of():
    assert cycle_type_of([2, 3, 1, 4]) == (3, 1)
    assert cycle_type_of([1, 2, 3]) == (1, 1, 1)


def test_x_lambda_small():
    assert x_lambda(()) == parse_statistic("1")
    assert x_lambda((1,)) == parse_statistic("m1 - 1")
    assert evaluate_statistic(x_lambda((1,)), (1, 1, 1)) == 2


@pytest.mark.parametrize("n", range(0, 9))
def test_character_polynomial_matches_characters(n):
    for size in range(0, n + 1):
        for lam in partitions(size):
            if size + (lam[0] if lam else 0) > n:
                continue
            X = x_lambda(lam)
            big = padded(lam, n)
            for rho in partitions(n):
                assert evaluate_statistic(X, rho) == mn_character(big, rho), (lam, rho)


def test_expand_examples():
    assert expand_in_x_basis(parse_statistic("m1"), 1) == {(): 1, (1,): 1}
    assert expand_in_x_basis(parse_statistic("1"), 0) == {(): 1}
    got = expand_in_x_basis(x_lambda((2,)), 2)
    assert {lam: c for lam, c in got.items() if c} == {(2,): 1}


def test_expand_degree_overflow():
    with pytest.raises(ValueError):
        expand_in_x_basis(parse_statistic("m3"), 2)


@given(st.dictionaries(st.sampled_from([lam for r in range(7) for lam in partitions(r)]),
                       st.integers(-5, 5), max_size=5))
def test_expand_round_trip(coeffs):
    f = parse_statistic("0")
    for lam, c in coeffs.items():
        f = f + x_lambda(lam, 6).scale(c)
    got = expand_in_x_basis(f, 6)
    assert {lam: v for lam, v in got.items() if v} == {lam: c for lam, c in coeffs.items() if c}


def test_graded_degree():
    assert graded_degree(parse_statistic("m1^2*m3 + m2")) == 5
    assert graded_degree(x_lambda((2, 1))) == 3
