import pytest

from charpoly.chains import chain_type, enum_chain_types
from charpoly.exact_arith import MultiPoly, poly_vars
from charpoly.ptau import divides_two_w_plus_one, p_tau, p_tau_report

z, w = poly_vars("z", "w")

FROZEN = {
    (0, (1,)): z + w + 2,
    (0, (2,)): 2 * w + 2,
    (0, (3,)): 2 * w + 2,
    (1, (2,)): 4 * w + 4,
    (2, (1,)): 3 * z + 3 * w + 6,
    (0, (2, 2)): 2 * z * w + 6 * w ** 2 + 2 * z + 12 * w + 6,
    (0, (2, 1)): 8 * z * w + 6 * w ** 2 + 8 * z + 18 * w + 12,
}


@pytest.mark.parametrize("key", sorted(FROZEN))
def test_frozen_values(key):
    rank, mu = key
    assert p_tau(chain_type(rank, mu)) == FROZEN[key]


def test_full_degree_types_give_one():
    for d in range(6):
        assert p_tau(chain_type(d)) == 1


@pytest.mark.parametrize("r", range(0, 8))
def test_structure(r):
    for tau in enum_chain_types(r):
        p = p_tau(tau)
        assert p.is_integral()
        assert p.degree() == r - tau.degree
        assert (p == 1) == (r == tau.degree)
        if tau.rank < tau.degree:
            q = p.scale(1) / 2
            # (w + 1) | P / 2, checked by exact evaluation at w = -1
            assert q.is_integral()
            assert q.substitute({"w": -1}).is_zero()


@pytest.mark.parametrize("r", range(1, 8))
def test_vanishing_at_minus_one(r):
    # the rank-d type of length r and degree d: d loops plus r - d isolated points
    for d in range(r):
        tau = chain_type(d, (1,) * (r - d))
        assert tau.degree == d and tau.rank == d
        assert p_tau(tau).evaluate({"z": -1, "w": -1}) == 0


def test_full_rank_family_is_not_identically_zero():
    for r in range(1, 6):
        assert not p_tau(chain_type(0, (1,) * r)).is_zero()


def test_divisibility_helper():
    assert divides_two_w_plus_one(2 * w + 2)
    assert divides_two_w_plus_one(FROZEN[(0, (2, 1))])
    assert not divides_two_w_plus_one(w + 1)
    assert not divides_two_w_plus_one(2 * w + 4)


def test_nonnegativity_report():
    rows = p_tau_report(7)
    assert len(rows) == sum(len(enum_chain_types(r)) for r in range(8))
    assert all(row["degree_ok"] and row["integral"] and row["one_iff_full"] for row in rows)
    assert all(row["divisible"] in (True, None) for row in rows)
    # the coefficient sign pattern is only reported
    assert all(isinstance(row["nonnegative"], bool) for row in rows)


def test_variables():
    assert p_tau(chain_type(0, (1,))).vars == ("z", "w")
    assert isinstance(p_tau(chain_type(1)), MultiPoly)
