import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from charpoly.charpattern import (AhatPair, VerificationError, a_eval, a_exact, a_split, ahat_pair, ak_poly,
                                  bj_leading, bj_poly, cofactor, default_trunc, expected_value,
                                  leading_targets)
from charpoly.combinat import dimension, parse_statistic, partitions
from charpoly.exact_arith import MultiPoly, binom, poly_vars
from charpoly.oracle import brute_a, brute_expected, small_closed_form

n, k = poly_vars("n", "k")

SMALL = [lam for s in range(1, 4) for lam in partitions(s)]


def test_empty_partition():
    assert a_exact((), 4, 2) == 3
    assert a_eval((), 4, 2) == 3
    assert a_eval((), 40, 3) == Fraction(binom(40, 3), 6)


def test_a_exact_examples():
    assert a_exact((1,), 3, 2) == Fraction(2, 3)
    assert a_exact((1,), 2, 1) == 0
    for nn in range(5, 9):
        for kk in range(0, 3):
            assert a_eval((2, 1), nn, kk) == 0


def test_ahat_for_one_box():
    pair = ahat_pair((1,))
    assert pair.a0 == MultiPoly.const(-1, ["n", "k"])
    assert pair.a1 == MultiPoly.const(1, ["n", "k"])
    assert (pair.l0, pair.l1) == (0, 0)


def test_ahat_for_two_boxes():
    a1 = ahat_pair((1, 1)).a1
    assert a1 == -2 * k * n + (2 * k - 1)
    a0 = ahat_pair((2,)).a0
    assert a0.coeff_of(n=2, k=2) == 1
    assert ahat_pair((2,)).a1.coeff_of(n=1, k=1) * Fraction(1, 2) == -1


def test_ahat_corrected_entry():
    a0 = ahat_pair((3,)).a0
    # n^1 coefficient, as a polynomial in k: 2(k^3 - 10k^2 + k + 2)
    lin = MultiPoly(["k"], {(e[1],): c for e, c in a0.terms.items() if e[0] == 1})
    assert lin == MultiPoly.from_univariate([4, 2, -20, 2], "k")


@pytest.mark.parametrize("lam", SMALL + [(2, 2), (3, 1), (4,)])
def test_ahat_reproduces_values(lam):
    pair = ahat_pair(lam)
    l = sum(lam)
    for kk in range(1, 6):
        for nn in range(kk + l - 1, kk + l + 4):
            assert pair.evaluate(nn, kk) == a_exact(lam, nn, kk)


@pytest.mark.parametrize("lam", SMALL)
def test_ahat_json_round_trip(lam):
    pair = ahat_pair(lam)
    again = AhatPair.from_json(pair.to_json())
    assert again.a0 == pair.a0 and again.a1 == pair.a1 and again.lam == pair.lam
    assert again.to_json() == pair.to_json()


@pytest.mark.parametrize("lam", [lam for s in range(1, 5) for lam in partitions(s)])
def test_ahat_degrees_and_leading(lam):
    pair = ahat_pair(lam)
    l = sum(lam)
    c0, c1 = leading_targets(lam)
    D0, D1 = l + pair.l0 - 1, l + pair.l1 - 1
    assert pair.a0.degree("n") == pair.a0.degree("k") == D0
    assert pair.a1.degree("n") == pair.a1.degree("k") == D1
    assert pair.a0.coeff((D0, D0)) == c0
    assert pair.a1.coeff((D1, D1)) * Fraction(2) ** (1 - l) == c1
    assert pair.a0.is_integral() and pair.a1.is_integral()


def test_leading_targets_two_boxes():
    assert leading_targets((2,))[0] == dimension((2,))


@pytest.mark.parametrize("lam", [lam for s in range(0, 5) for lam in partitions(s)])
def test_eval_matches_exact(lam):
    for nn in range(0, 11):
        for kk in range(0, nn + 1):
            assert a_eval(lam, nn, kk) == a_exact(lam, nn, kk), (lam, nn, kk)


@pytest.mark.parametrize("lam", [lam for s in range(0, 4) for lam in partitions(s)])
def test_exact_matches_brute_force(lam):
    for nn in range(0, 8):
        for kk in range(0, nn + 1):
            assert a_exact(lam, nn, kk) == brute_a(lam, nn, kk), (lam, nn, kk)


def test_frozen_large_values():
    assert a_eval((2, 1), 30, 14) == Fraction(195477030941, 45920386512000)
    assert a_eval((2, 1), 10, 4) == Fraction(20, 63)
    assert brute_a((2, 1), 10, 4, "genuine") == Fraction(20, 63)
    assert a_eval((2, 1), 30, 14) == ak_poly((2, 1), 14).poly.evaluate((30,))


@given(st.sampled_from(SMALL), st.integers(1, 6), st.integers(0, 9))
def test_split_sums_to_total(lam, kk, extra):
    nn = kk + extra
    a0, a1 = a_split(lam, nn, kk)
    assert a0 + a1 == a_exact(lam, nn, kk)


@given(st.sampled_from([(), (1,), (2,), (1, 1)]), st.integers(1, 6), st.integers(0, 6))
def test_closed_forms(lam, kk, extra):
    nn = kk + sum(lam) + extra
    assert a_eval(lam, nn, kk) == small_closed_form(lam, nn, kk)


def test_cofactor_is_nonzero_in_range():
    for lam in SMALL:
        for kk in range(1, 5):
            for nn in range(kk + sum(lam) - 1, kk + sum(lam) + 3):
                assert cofactor(lam, 0, nn, kk) != 0 and cofactor(lam, 1, nn, kk) != 0


def test_bj_frozen():
    assert bj_poly((1,), 0).poly == MultiPoly.from_univariate([-1, 1], "k")
    assert bj_poly((2,), 0).poly == MultiPoly.from_univariate([0, Fraction(-3, 2), Fraction(1, 2)], "k")
    assert bj_poly((1, 1), 1).poly == MultiPoly.from_univariate(
        [0, Fraction(-1, 3), Fraction(3, 4), Fraction(-2, 3), Fraction(1, 4)], "k")
    assert bj_poly((2, 1), 0).poly.evaluate((2,)) == 0


@pytest.mark.parametrize("lam", [lam for s in range(1, 5) for lam in partitions(s)])
def test_bj_degree_and_leading(lam):
    l = sum(lam)
    for j in range(0, 4):
        b = bj_poly(lam, j)
        assert b.poly.degree() == l + 2 * j
        lead = b.poly.coeff((l + 2 * j,))
        assert lead == bj_leading(lam, j)
        assert lead == Fraction(2 ** j * dimension(lam),
                                math.prod(range(l - 1, 0, -2)) * math.prod(range(l + 2 * j, 0, -2)))


def test_bj_reproduces_values():
    for lam in [(1,), (2,), (2, 1)]:
        for j in range(0, 3):
            b = bj_poly(lam, j)
            for kk in range(max(0, sum(lam) - j), 8):
                assert b.poly.evaluate((kk,)) == a_exact(lam, j + kk, kk) * math.factorial(j + kk)


def test_ak_frozen():
    assert ak_poly((1,), 3).poly == MultiPoly.from_univariate([Fraction(-1, 15), Fraction(-1, 60), Fraction(1, 20)],
                                                               "n")
    assert ak_poly((2,), 4).poly == MultiPoly.from_univariate(
        [Fraction(-37, 2520), Fraction(-3, 560), Fraction(47, 5040)], "n")
    assert ak_poly((1,), 1).poly.is_zero()
    assert ak_poly((2, 1), 14).poly.degree() == 11


def test_ak_empty_partition_is_binomial():
    for kk in range(0, 5):
        p = ak_poly((), kk).poly
        assert p.degree() == kk
        for nn in range(kk, kk + 6):
            assert p.evaluate((nn,)) == Fraction(binom(nn, kk), math.factorial(kk))


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (2, 1), (3,)])
def test_ak_degree_bound(lam):
    l = sum(lam)
    for kk in range(l, l + 6):
        poly = ak_poly(lam, kk).poly
        assert poly.is_zero() or poly.degree() <= kk - l


def test_expected_examples():
    assert expected_value(parse_statistic("1"), 6, 2) == Fraction(binom(6, 2), 2)
    assert expected_value(parse_statistic("m1"), 3, 2) == Fraction(13, 6)
    assert expected_value(parse_statistic("m1^2+3*m2"), 8, 3) == Fraction(841, 20)


@given(st.sampled_from(["m1", "m2", "m1*m2", "m1^2 - 2*m3", "m4 + 1"]), st.integers(0, 7), st.data())
def test_expected_matches_brute_force(text, nn, data):
    kk = data.draw(st.integers(0, nn))
    f = parse_statistic(text)
    assert expected_value(f, nn, kk) == brute_expected(f, nn, kk)


def test_default_trunc():
    assert default_trunc((2, 1)) == 16


def test_error_type_carries_details():
    err = VerificationError("x", {"a": 1})
    assert err.details == {"a": 1}
