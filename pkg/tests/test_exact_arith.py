import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from charpoly.exact_arith import (MultiPoly, SingularGridError, binom, double_factorial, falling_product,
                                  fraction_to_str, gbinom, guarded_factorial_ratio, interp_1d, interp_grid,
                                  poly_vars, rising_product)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30)


def test_falling_product_examples():
    assert falling_product(5, 3) == 60
    assert falling_product(Fraction(7, 3), 0, 2) == 1
    assert falling_product(Fraction(3, 2), 2) == Fraction(3, 4)
    assert falling_product(7, 3, 2) == 7 * 5 * 3


def test_rising_product():
    # product over i = 1..m of (a + step*i)
    assert rising_product(3, 3) == 4 * 5 * 6
    assert rising_product(Fraction(1, 2), 2, 2) == Fraction(5, 2) * Fraction(9, 2)
    assert rising_product(9, 0) == 1


def test_double_factorial_values():
    assert double_factorial(5) == 15
    assert double_factorial(6) == 48
    assert double_factorial(0) == 1
    assert double_factorial(-1) == 1
    assert double_factorial(-3) == -1
    assert double_factorial(-5) == Fraction(1, 3)
    with pytest.raises(ValueError):
        double_factorial(-2)


@given(st.integers(min_value=-15, max_value=25).filter(lambda n: n >= 1 or n % 2))
def test_double_factorial_recursion(n):
    assert double_factorial(n) == n * double_factorial(n - 2)


def test_guarded_factorial_ratio_examples():
    assert guarded_factorial_ratio([3], [1, 1]) == 6
    assert guarded_factorial_ratio([2], [-1]) == 0
    assert guarded_factorial_ratio([0], [0]) == 1
    with pytest.raises(ValueError):
        guarded_factorial_ratio([-1], [0])


@given(st.lists(st.integers(0, 12), max_size=4), st.lists(st.integers(0, 12), max_size=4))
def test_guarded_factorial_ratio_clears(nums, dens):
    v = guarded_factorial_ratio(nums, dens)
    assert v * math.prod(math.factorial(t) for t in dens) == math.prod(math.factorial(s) for s in nums)


def test_binomials():
    assert binom(5, 2) == 10
    assert binom(3, 5) == 0
    assert binom(4, -1) == 0
    assert gbinom(Fraction(5, 2), 2) == Fraction(15, 8)
    assert gbinom(-1, 3) == -1


@given(fractions, fractions, fractions)
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(fractions, fractions)
def test_fraction_string_round_trip(a, b):
    for v in (a, b, a * b):
        assert Fraction(fraction_to_str(v)) == v
    assert fraction_to_str(Fraction(4, 2)) == "2"


# ---------------------------------------------------------------- polynomials

n, k = poly_vars("n", "k")


def test_polynomial_arithmetic():
    p = (n + 1) * (n - 1)
    assert p == n ** 2 - 1
    assert p.degree() == 2
    assert (n * k + k).coeff_of(n=1, k=1) == 1
    assert (p - p).is_zero()
    assert str(MultiPoly.const(0, ["n"])) == "0"


def test_zero_coefficients_are_dropped():
    p = MultiPoly(["n"], {(1,): 0, (0,): 3})
    assert p.terms == {(0,): Fraction(3)}


def test_substitute_and_evaluate():
    p = n ** 2 * k - 3 * k + 2
    assert p.evaluate({"n": 2, "k": 5}) == 20 - 15 + 2
    q = p.substitute({"n": k + 1})
    assert q.evaluate({"k": 1}) == 4 - 3 + 2


def test_json_round_trip_is_stable():
    p = Fraction(-7, 3) * n ** 3 * k ** 3 + n * k - 5
    data = p.to_json()
    assert MultiPoly.from_json(data) == p
    assert MultiPoly.from_json(data).to_json() == data
    assert data["vars"] == ["n", "k"]
    assert data["terms"][0] == {"coeff": "-7/3", "exps": [3, 3]}


@given(st.lists(fractions, min_size=1, max_size=6), st.lists(fractions, min_size=1, max_size=6))
def test_univariate_product_evaluates(a, b):
    pa = MultiPoly.from_univariate(a, "n")
    pb = MultiPoly.from_univariate(b, "n")
    for x in (-2, 0, 3):
        assert (pa * pb).evaluate({"n": x}) == pa.evaluate({"n": x}) * pb.evaluate({"n": x})


# -------------------------------------------------------------- interpolation

def test_interp_examples():
    assert interp_grid({(0,): 1, (1,): 2}, ["n"], [1]) == n + 1
    vals = {(a, b): a * b for a in (0, 1) for b in (0, 1)}
    assert interp_grid(vals, ["n", "k"], [1, 1]) == n * k
    vals = {(x,): x - 1 for x in range(4)}
    assert interp_grid(vals, ["k"], [3]) == k - 1


def test_interp_incomplete_grid():
    with pytest.raises(SingularGridError):
        interp_grid({(0,): 1}, ["n"], [1])


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3),
       st.integers(-3, 3), st.integers(-3, 3))
def test_interp_grid_reproduces_values(coeffs, n0, k0):
    target = MultiPoly(["n", "k"], {(i, j): coeffs[i][j] for i in range(3) for j in range(3)})
    vals = {(a, b): target.evaluate({"n": a, "k": b}) for a in range(n0, n0 + 3) for b in range(k0, k0 + 3)}
    got = interp_grid(vals, ["n", "k"], [2, 2])
    assert got == target
    assert all(got.evaluate({"n": a, "k": b}) == v for (a, b), v in vals.items())


@given(st.lists(fractions, min_size=1, max_size=7))
def test_interp_1d_round_trip(coeffs):
    nodes = list(range(len(coeffs)))
    vals = [sum(c * x ** i for i, c in enumerate(coeffs)) for x in nodes]
    assert interp_1d(nodes, vals) == coeffs
