"""From chain-type counts to the statistics a^lam(n, k) and the polynomials
a0_hat, a1_hat, B_j and A_k that describe them.

Throughout, a^lam is defined through the character polynomial X^lam, which
agrees with the genuine character of lam[n] once n >= |lam| + lam_1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import series2
from .chains import enum_chain_types, vartheta
from .combinat import (Partition, boundary, dimension, expand_in_x_basis, graded_degree, partitions,
                       young_contains)
from .exact_arith import MultiPoly, binom, double_factorial, interp_grid, interp_1d

N_VARS = ("n", "k")


class VerificationError(RuntimeError):
    """An interpolated object failed one of its consistency checks."""

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.details = details or {}


def default_trunc(lam: Partition) -> int:
    return 4 * sum(lam) + 4


def _trunc(lam: Partition, n: int, N: int | None) -> int:
    base = default_trunc(lam) if N is None else N
    return max(base, n)


# ---------------------------------------------------------------------------
# exact values


def a_split(lam: Partition, n: int, k: int, N: int | None = None) -> tuple:
    """(a_0, a_1) with a_0 + a_1 = a^lam(n, k), from the split chain-type counts."""
    lam = tuple(lam)
    if n < 0 or k < 0 or k > n:
        return (Fraction(0), Fraction(0))
    l = sum(lam)
    lp = sum(boundary(lam))
    N = _trunc(lam, n, N)
    a0 = Fraction(0)
    a1 = Fraction(0)
    fact_n = math.factorial(n)
    for r in range(lp, min(l, n) + 1):
        for tau in enum_chain_types(r):
            d = tau.degree
            # k < d is kept: the split parts need not vanish there
            if r - d > n - k:
                continue
            theta = vartheta(tau, lam)
            if not theta:
                continue
            h0, h1 = series2.h_split(tau, n - r, k - d, N)
            w = Fraction(theta * math.factorial(n - k - r + d), fact_n)
            a0 += w * h0
            a1 += w * h1
    return (a0, a1)


def a_exact(lam: Partition, n: int, k: int, N: int | None = None) -> Fraction:
    a0, a1 = a_split(lam, n, k, N)
    return a0 + a1


# ---------------------------------------------------------------------------
# the two-term factored form


def _halves(lam: Partition):
    l = sum(lam)
    return l // 2, (l - 1) // 2


def prefactor(lam: Partition, n: int, k: int) -> Fraction:
    l = sum(lam)
    return Fraction(math.factorial(n - l + 1), math.factorial(k - 1) * math.factorial(n))


def cofactor(lam: Partition, i: int, n: int, k: int) -> Fraction:
    """Fixed factor multiplying a_i_hat(n, k) in the factored formula (including the prefactor)."""
    l = sum(lam)
    l0, l1 = _halves(lam)
    if i == 0:
        t = Fraction(math.factorial(n - l), 2 ** l0 * math.factorial(k) * math.factorial(n - k + l0))
        t /= double_factorial(2 * l0 - 1)
    else:
        t = double_factorial(2 * (n - l) + 1) / (
            2 ** l1 * math.factorial(l1) * double_factorial(2 * k - 1) * double_factorial(2 * (n - k + l1) + 1))
    return prefactor(lam, n, k) * t


def leading_targets(lam: Partition) -> tuple:
    """Expected coefficients of (nk)^{l+l_i-1} in a0_hat and in 2^{1-l} a1_hat."""
    l = sum(lam)
    out = []
    for i in (0, 1):
        if l % 2 == i:
            out.append(dimension(lam))
        else:
            out.append(-sum(dimension(mu) for mu in partitions(l - 1) if young_contains(lam, mu)))
    return tuple(out)


@dataclass
class AhatPair:
    lam: Partition
    a0: MultiPoly
    a1: MultiPoly
    l0: int
    l1: int
    verification: dict = field(default_factory=dict)

    def evaluate(self, n: int, k: int) -> Fraction:
        return (self.a0.evaluate((n, k)) * cofactor(self.lam, 0, n, k)
                + self.a1.evaluate((n, k)) * cofactor(self.lam, 1, n, k))

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam),
            "l0": self.l0,
            "l1": self.l1,
            "a0_hat": self.a0.to_json(),
            "a1_hat": self.a1.to_json(),
            "verification": self.verification,
        }

    @classmethod
    def from_json(cls, data: dict) -> "AhatPair":
        return cls(tuple(data["lambda"]), MultiPoly.from_json(data["a0_hat"]),
                   MultiPoly.from_json(data["a1_hat"]), data["l0"], data["l1"], data.get("verification", {}))


def _grid(lam: Partition, i: int):
    l = sum(lam)
    li = _halves(lam)[i]
    D = l + li - 1
    grid = [(n, k) for k in range(1, D + 2) for n in range(D + l, 2 * D + l + 1)]
    extra = []
    for k in range(1, 2 * (l + li) + 1):
        for n in (k + l - 1, k + l):
            if (n, k) not in grid:
                extra.append((n, k))
    return D, grid, extra


@lru_cache(maxsize=None)
def ahat_pair(lam: Partition, N: int | None = None) -> AhatPair:
    lam = tuple(lam)
    l = sum(lam)
    if l < 1:
        raise ValueError("a_hat polynomials need |lambda| >= 1")
    l0, l1 = _halves(lam)
    polys = []
    ver = {"grid_points": [], "extra_points": [], "leading_coeffs": []}
    targets = leading_targets(lam)
    for i in (0, 1):
        D, grid, extra = _grid(lam, i)
        vals = {}
        for (n, k) in grid + extra:
            vals[(n, k)] = a_split(lam, n, k, N)[i] / cofactor(lam, i, n, k)
        poly = interp_grid({p: vals[p] for p in grid}, N_VARS, (D, D))
        bad = [p for p in extra if poly.evaluate(p) != vals[p]]
        if bad:
            raise VerificationError(f"a{i}_hat for {lam} fails at extra points", {"points": bad[:5]})
        if not poly.is_integral():
            raise VerificationError(f"a{i}_hat for {lam} has non-integer coefficients")
        if poly.degree("n") != D or poly.degree("k") != D:
            raise VerificationError(f"a{i}_hat for {lam} has degrees {poly.degree('n')}, {poly.degree('k')}, expected {D}")
        lead = poly.coeff((D, D))
        if i == 1:
            lead = lead * Fraction(2) ** (1 - l)
        if lead != targets[i]:
            raise VerificationError(f"leading coefficient of a{i}_hat for {lam} is {lead}, expected {targets[i]}")
        polys.append(poly)
        ver["grid_points"].append(len(grid))
        ver["extra_points"].append(len(extra))
        ver["leading_coeffs"].append(str(lead))
    ver["degree_bounds"] = [l + l0 - 1, l + l1 - 1]
    return AhatPair(lam, polys[0], polys[1], l0, l1, ver)


# ---------------------------------------------------------------------------
# evaluation anywhere


def a_eval(lam: Partition, n: int, k: int) -> Fraction:
    """a^lam(n, k) at arbitrary magnitudes."""
    lam = tuple(lam)
    l = sum(lam)
    if n < 0 or k < 0 or k > n:
        return Fraction(0)
    if l == 0:
        return Fraction(binom(n, k), math.factorial(k))
    if k == 0 and n >= l + lam[0]:
        # N_0 = 1, and chi^{lam[n]} is orthogonal to the trivial character
        return Fraction(0)
    if k >= 1 and n >= k + l - 1:
        return ahat_pair(lam).evaluate(n, k)
    j = n - k
    if j <= l - 2 and n >= l:
        return bj_poly(lam, j).poly.evaluate((k,)) / math.factorial(n)
    return a_exact(lam, n, k)


@dataclass
class BjPoly:
    lam: Partition
    j: int
    poly: MultiPoly

    def to_json(self) -> dict:
        return {"lambda": list(self.lam), "j": self.j, "poly": self.poly.to_json()}


def bj_leading(lam: Partition, j: int) -> Fraction:
    l = sum(lam)
    return Fraction(2 ** j * dimension(lam)) / (double_factorial(l - 1) * double_factorial(l + 2 * j))


@lru_cache(maxsize=None)
def bj_poly(lam: Partition, j: int) -> BjPoly:
    lam = tuple(lam)
    l = sum(lam)
    if l < 1 or j < 0:
        raise ValueError("need |lambda| >= 1 and j >= 0")
    deg = l + 2 * j
    k0 = max(0, l - j)
    ks = list(range(k0, k0 + deg + 4))

    def value(k):
        n = j + k
        a = a_eval(lam, n, k) if j >= l - 1 else a_exact(lam, n, k)
        return a * math.factorial(n)

    vals = [value(k) for k in ks]
    coeffs = interp_1d(ks[: deg + 1], vals[: deg + 1])
    poly = MultiPoly.from_univariate(coeffs, "k")
    bad = [k for k, v in zip(ks, vals) if poly.evaluate((k,)) != v]
    if bad:
        raise VerificationError(f"B_{j} for {lam} fails at extra points", {"k": bad})
    if poly.degree() != deg:
        raise VerificationError(f"B_{j} for {lam} has degree {poly.degree()}, expected {deg}")
    lead = poly.coeff((deg,))
    if lead != bj_leading(lam, j):
        raise VerificationError(f"B_{j} for {lam} leading coefficient {lead}, expected {bj_leading(lam, j)}")
    return BjPoly(lam, j, poly)


@dataclass
class AkPoly:
    lam: Partition
    k: int
    poly: MultiPoly

    def to_json(self) -> dict:
        return {"lambda": list(self.lam), "k": self.k, "poly": self.poly.to_json()}


@lru_cache(maxsize=None)
def ak_poly(lam: Partition, k: int) -> AkPoly:
    """A_k^lam(n), agreeing with a^lam(n, k) for n >= k + |lam|."""
    lam = tuple(lam)
    l = sum(lam)
    if k < 0:
        raise ValueError("k must be nonnegative")
    bound = max(k - l, 0)
    ns = list(range(k + l, k + l + bound + 4))
    vals = [a_eval(lam, n, k) for n in ns]
    coeffs = interp_1d(ns[: bound + 1], vals[: bound + 1])
    poly = MultiPoly.from_univariate(coeffs, "n")
    bad = [n for n, v in zip(ns, vals) if poly.evaluate((n,)) != v]
    if bad:
        raise VerificationError(f"A_{k} for {lam} fails at extra points", {"n": bad})
    if k < l and not poly.is_zero():
        raise VerificationError(f"A_{k} for {lam} should vanish below |lambda|")
    return AkPoly(lam, k, poly)


# ---------------------------------------------------------------------------
# expected values of statistics


def expected_value(f: MultiPoly, n: int, k: int) -> Fraction:
    """(1/n!) sum over S_n of f(pi) N_k(pi) via the character-polynomial expansion."""
    r = max(graded_degree(f), 0)
    coeffs = expand_in_x_basis(f, r)
    return sum((c * a_eval(lam, n, k) for lam, c in coeffs.items()), Fraction(0))
