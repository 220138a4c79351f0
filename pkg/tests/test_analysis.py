from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from charpoly.analysis import (PositivityCertificate, as_coeffs, dominance_poly, gamma_bound_holds, is_squarefree,
                               minimal_shift, nonneg_after_shift, nonreal_pairs, positivity_certify,
                               quadrant_terms, real_roots_with_multiplicity, revalidate, root_upper_bound,
                               scan_nonreal, squarefree_part, sturm_count, u_eval, u_mul, yun)
from charpoly.charpattern import a_eval, ak_poly
from charpoly.exact_arith import MultiPoly, poly_vars

n, k = poly_vars("n", "k")


def _from_roots(roots, quad=()):
    p = [Fraction(1)]
    for r in roots:
        p = u_mul(p, [-Fraction(r), 1])
    for b, c in quad:
        # x^2 + b x + c with negative discriminant
        p = u_mul(p, [Fraction(c), Fraction(b), 1])
    return p


def test_sturm_examples():
    assert sturm_count([1, 0, 1]) == 0
    assert sturm_count([-4, 0, 1]) == 2
    assert sturm_count([-4, 0, 1], 0, 2) == 1
    assert sturm_count([-4, 0, 1], -2, 2) == 1  # half-open: (-2, 2]
    assert sturm_count([5]) == 0
    with pytest.raises(ValueError):
        sturm_count([0])


def test_example_polynomial():
    poly = ak_poly((2, 1), 14).poly
    c = as_coeffs(poly)
    assert len(c) - 1 == 11
    assert is_squarefree(c)
    assert sturm_count(c) == 9
    assert nonreal_pairs(c) == 1


roots = st.lists(st.integers(-12, 12), min_size=0, max_size=6)
quads = st.lists(st.tuples(st.integers(-4, 4), st.integers(5, 20)), max_size=2)


@given(roots, quads)
def test_sturm_on_factored_polynomials(rs, qs):
    qs = [(b, c) for b, c in qs if b * b < 4 * c]
    p = _from_roots(rs, qs)
    assert sturm_count(p) == len(set(rs))
    assert real_roots_with_multiplicity(p) == len(rs)
    assert nonreal_pairs(p) == len(qs)
    deg = len(p) - 1
    assert sturm_count(p) + 2 * nonreal_pairs(p) == deg - (len(rs) - len(set(rs)))


@given(roots, st.integers(-13, 13), st.integers(0, 10))
def test_sturm_interval_counts(rs, a, width):
    if not rs:
        return
    p = _from_roots(rs)
    b = a + width
    assert sturm_count(p, a, b) == len({r for r in rs if a < r <= b})


@given(roots.filter(bool))
def test_root_bound_and_squarefree(rs):
    p = _from_roots(rs)
    assert all(r < root_upper_bound(p) for r in rs)
    sq = squarefree_part(p)
    assert len(sq) - 1 == len(set(rs))
    assert is_squarefree(p) == (len(set(rs)) == len(rs))
    parts = yun(p)
    assert sum(i * (len(f) - 1) for i, f in enumerate(parts, start=1)) == len(rs)


def test_as_coeffs_rejects_bivariate():
    with pytest.raises(ValueError):
        as_coeffs(n * k)
    assert as_coeffs(MultiPoly.from_univariate([1, 2], "n")) == [1, 2]


def test_scan_small_sizes():
    res = scan_nonreal(1, 12)
    assert all(r.pairs == 0 for r in res["rows"])
    assert res["first_nonreal"] is None
    res = scan_nonreal(2, 12)
    assert all(r.pairs == 0 for r in res["rows"])
    assert not res["violations"]


def test_scan_size_three():
    res = scan_nonreal(3, 14)
    first = res["first_nonreal"]
    assert (first.lam, first.k, first.pairs) == ((2, 1), 14, 1)
    assert not res["violations"]


@pytest.mark.slow
def test_pair_bound_size_four():
    res = scan_nonreal(4, 20)
    assert not res["violations"]


def test_scan_rejects_bad_size():
    with pytest.raises(ValueError):
        scan_nonreal(0, 3)


def test_quadrant_substitution():
    # p = n - k - l + 1 becomes s after the substitution, whatever t is
    l = 3
    p = n - k - (l - 1)
    for t in range(4):
        assert quadrant_terms(p, t, l) == {(1, 0): 1}
    assert nonneg_after_shift(k - 2, 2, 1)
    assert not nonneg_after_shift(k - 2, 1, 1)


def test_minimal_shift():
    assert minimal_shift(lambda t: t >= 37) == 37
    assert minimal_shift(lambda t: True, start=4) == 4
    assert minimal_shift(lambda t: False, cap=20) is None


def test_dominance_branches():
    assert dominance_poly((1,))[0] == "odd"
    assert dominance_poly((2,))[0] == "even"
    assert dominance_poly((1, 1))[0] == "even"


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (2, 1)])
def test_ratio_bound_samples(lam):
    l = sum(lam)
    for kk in range(1, 12):
        for nn in range(kk + l - 1, kk + l + 12):
            assert gamma_bound_holds(lam, nn, kk)


def test_certificate_one_box():
    cert = positivity_certify((1,))
    assert cert.status == "certified"
    assert cert.t == 2
    assert cert.branch == "odd"
    rv = revalidate(cert, 200, seed=3)
    assert rv["negative"] == [] and rv["points"] == 200


@pytest.mark.parametrize("lam,t", [((2,), 3), ((1, 1), 3), ((3,), 5), ((2, 1), 4), ((1, 1, 1), 6)])
def test_certificate_shifts(lam, t):
    cert = positivity_certify(lam)
    assert cert.status == "certified"
    assert cert.t == t


def test_certificate_json_round_trip():
    cert = positivity_certify((2, 1))
    revalidate(cert, 20, seed=1)
    again = PositivityCertificate.from_json(cert.to_json())
    assert again.to_json() == cert.to_json()
    assert again.lam == (2, 1)


def test_certificate_is_consistent_with_values():
    cert = positivity_certify((1,))
    assert a_eval((1,), 3, 2) == Fraction(2, 3)
    for nn in range(2, 30):
        for kk in range(0, nn + 1):
            assert a_eval((1,), nn, kk) >= 0
    assert cert.status == "certified"


def test_ueval():
    assert u_eval([1, 2, 3], 2) == 1 + 4 + 12
