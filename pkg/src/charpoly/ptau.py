"""Recursive construction of the integer polynomials P^tau(z, w) that
determine the generating functions H^tau."""

from __future__ import annotations

from functools import lru_cache

from .chains import ChainType, enum_chain_types, zeta_count
from .exact_arith import MultiPoly

VARS = ("z", "w")
Z = MultiPoly.var("z", VARS)
W = MultiPoly.var("w", VARS)
ONE = MultiPoly.const(1, VARS)


class InternalConsistencyError(RuntimeError):
    """A structural property that must hold by construction failed."""


def _isolated_step(tau: ChainType, prev: MultiPoly) -> MultiPoly:
    """Add one isolated point: first-order operator applied to P of tau-dot."""
    r, d, nu = tau.length, tau.degree, tau.rank
    m = tau.m(1)
    ell = r - d - 1
    gamma = nu + 1
    mult = Z * W * ell + Z * (3 * ell + gamma) + W * (r + 2 * ell) + (4 * ell + 2 * gamma)
    out = mult * prev
    out = out - Z * (Z + 1) * (W + 2) * prev.diff("z")
    out = out - W * (W + 1) * (Z + 2) * prev.diff("w")
    return out / m


def _reduced_step(tau: ChainType) -> MultiPoly:
    """Reduced type with r > d: sum over larger arrangements containing the derivative."""
    d, nu = tau.degree, tau.rank
    omega = tau.derivative()
    s = omega.degree
    sub = {"z": Z * W + Z + W, "w": W}
    total = MultiPoly.const(0, VARS)
    for s2 in range(s, d + 1):
        for nu2 in range(nu, s2 + 1):
            if s2 - nu2 < s - nu:
                continue
            inner = MultiPoly.const(0, VARS)
            for om2 in enum_chain_types(d, s2, nu2):
                c = zeta_count(omega, om2)
                if c:
                    inner = inner + p_tau(om2).substitute(sub).scale(c)
            if inner.is_zero():
                continue
            weight = Z ** (s2 - s) * W ** ((s2 - nu2) - (s - nu)) * (W + 1) ** (nu2 - nu)
            if (s2 - s) % 2:
                weight = -weight
            total = total + weight * inner
    return total


@lru_cache(maxsize=None)
def p_tau(tau: ChainType) -> MultiPoly:
    """The polynomial P^tau in variables (z, w)."""
    tau = ChainType(tau.rank, tuple(tau.mu))
    r, d = tau.length, tau.degree
    if r == d:
        return ONE
    if tau.m(1) >= 1:
        poly = _isolated_step(tau, p_tau(tau.dot()))
    else:
        poly = _reduced_step(tau)
    poly = poly.with_vars(VARS)
    if not poly.is_integral():
        raise InternalConsistencyError(f"P^{tau.to_str()} has non-integer coefficients: {poly}")
    if poly.degree() != r - d:
        raise InternalConsistencyError(f"P^{tau.to_str()} has degree {poly.degree()}, expected {r - d}")
    return poly


def divides_two_w_plus_one(poly: MultiPoly) -> bool:
    """Whether 2(w+1) divides the polynomial in Z[z, w]."""
    if not all(c.denominator == 1 and c.numerator % 2 == 0 for c in poly.terms.values()):
        return False
    return poly.substitute({"w": -1}).is_zero()


def p_tau_report(max_length: int) -> list:
    """Structural checks for every chain type up to the given length."""
    rows = []
    for r in range(max_length + 1):
        for tau in enum_chain_types(r):
            p = p_tau(tau)
            rows.append({
                "tau": tau,
                "degree_ok": p.degree() == tau.length - tau.degree,
                "integral": p.is_integral(),
                "one_iff_full": (p == 1) == (tau.length == tau.degree),
                "divisible": divides_two_w_plus_one(p) if tau.rank < tau.degree else None,
                "nonnegative": all(c >= 0 for c in p.terms.values()),
            })
    return rows
