"""Partitions, Young-diagram containment, symmetric group characters and
character polynomials in the cycle-count variables m1, m2, ...."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .exact_arith import MultiPoly, SingularGridError

Partition = tuple  # weakly decreasing tuple of positive ints


def normalize_partition(parts: Sequence[int]) -> Partition:
    parts = tuple(int(p) for p in parts if int(p) != 0)
    if any(p < 0 for p in parts):
        raise ValueError(f"negative part in {parts}")
    return tuple(sorted(parts, reverse=True))


def is_partition(parts: Sequence[int]) -> bool:
    return all(p > 0 for p in parts) and all(a >= b for a, b in zip(parts, parts[1:]))


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple:
    """All partitions of n with parts <= max_part, in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_up_to(r: int) -> list:
    return [p for s in range(r + 1) for p in partitions(s)]


def multiplicities(parts: Sequence[int]) -> dict:
    out: dict = {}
    for p in parts:
        out[p] = out.get(p, 0) + 1
    return out


def multiplicity(parts: Sequence[int], j: int) -> int:
    return sum(1 for p in parts if p == j)


def young_contains(big: Partition, small: Partition) -> bool:
    """True iff the diagram of ``small`` fits inside that of ``big``."""
    if len(small) > len(big):
        return False
    return all(s <= b for s, b in zip(small, big))


def boundary(lam: Partition) -> Partition:
    """Shrink every part by one (the partition written with a partial symbol in the theory)."""
    return tuple(p - 1 for p in lam if p > 1)


def padded(lam: Partition, n: int) -> Partition:
    """The partition (n - |lam|, lam_1, lam_2, ...); requires n - |lam| >= lam_1."""
    first = n - sum(lam)
    if lam and first < lam[0]:
        raise ValueError(f"n={n} too small for {lam}")
    if first < 0:
        raise ValueError(f"n={n} too small for {lam}")
    return ((first,) if first else ()) + tuple(lam)


def between(lower: Partition, upper: Partition, r: int) -> list:
    """Partitions mu of r with lower <= mu <= upper in containment order."""
    return [mu for mu in partitions(r) if young_contains(mu, lower) and young_contains(upper, mu)]


def class_size(rho: Partition) -> int:
    n = sum(rho)
    denom = 1
    for j, m in multiplicities(rho).items():
        denom *= j ** m * math.factorial(m)
    return math.factorial(n) // denom


def cycle_type_of(perm: Sequence[int]) -> Partition:
    """Cycle type of a permutation given in one-line notation (values 1..n or 0..n-1)."""
    n = len(perm)
    base = 1 if n and min(perm) == 1 else 0
    seen = [False] * n
    lengths = []
    for i in range(n):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j] - base
                length += 1
            lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


# ---------------------------------------------------------------------------
# Murnaghan-Nakayama


@lru_cache(maxsize=None)
def _mn_beta(beta: tuple, rho: tuple) -> int:
    """Character value for the partition with beta-set ``beta`` (sorted tuple) at cycle type rho."""
    if not rho:
        return 1
    h = rho[0]
    rest = rho[1:]
    bset = set(beta)
    total = 0
    for b in beta:
        c = b - h
        if c < 0 or c in bset:
            continue
        height = sum(1 for x in beta if c < x < b)
        new_beta = tuple(sorted((bset - {b}) | {c}))
        val = _mn_beta(new_beta, rest)
        if val:
            total += -val if height % 2 else val
    return total


def mn_character(mu: Partition, cycle_type: Partition) -> int:
    """Irreducible character chi^mu evaluated on the class of the given cycle type."""
    mu = tuple(mu)
    cycle_type = tuple(cycle_type)
    if sum(mu) != sum(cycle_type):
        raise ValueError(f"size mismatch: |{mu}| != |{cycle_type}|")
    length = len(mu)
    beta = tuple(sorted(mu[i] + (length - 1 - i) for i in range(length)))
    # removing long hooks first keeps the recursion shallow
    return _mn_beta(beta, tuple(sorted(cycle_type, reverse=True)))


def dimension(mu: Partition) -> int:
    return mn_character(mu, (1,) * sum(mu))


# ---------------------------------------------------------------------------
# statistic polynomials in m1, m2, ...


_MVAR = re.compile(r"^m([1-9][0-9]*)$")


def stat_vars(J: int) -> tuple:
    return tuple(f"m{j}" for j in range(1, J + 1))


def var_index(name: str) -> int:
    m = _MVAR.match(name)
    if not m:
        raise ValueError(f"not a cycle-count variable: {name}")
    return int(m.group(1))


def graded_degree(f: MultiPoly) -> int:
    if f.is_zero():
        return -1
    weights = [var_index(v) for v in f.vars]
    return max(sum(w * e for w, e in zip(weights, ex)) for ex in f.terms)


def _binom_poly(var: MultiPoly, c: int) -> MultiPoly:
    out = MultiPoly.const(1, var.vars)
    for i in range(c):
        out = out * (var - i)
    return out / math.factorial(c)


@lru_cache(maxsize=None)
def i_poly(rho: Partition, J: int) -> MultiPoly:
    """I^rho = prod_j binom(m_j, m_j(rho)) as a polynomial in m1..mJ."""
    vs = stat_vars(J)
    out = MultiPoly.const(1, vs)
    for j, c in multiplicities(rho).items():
        out = out * _binom_poly(MultiPoly.var(f"m{j}", vs), c)
    return out


def phi_coeff(lam: Partition, rho: Partition) -> int:
    """(-1)^{l-r} sum over mu |- r with boundary(lam) <= mu <= lam of chi^mu(rho)."""
    l = sum(lam)
    r = sum(rho)
    sign = -1 if (l - r) % 2 else 1
    return sign * sum(mn_character(mu, rho) for mu in between(boundary(lam), lam, r))


@lru_cache(maxsize=None)
def x_lambda(lam: Partition, J: int | None = None) -> MultiPoly:
    """Character polynomial X^lam in m1..mJ (J defaults to |lam|)."""
    lam = tuple(lam)
    l = sum(lam)
    if J is None:
        J = l
    vs = stat_vars(J)
    out = MultiPoly.const(0, vs)
    for r in range(sum(boundary(lam)), l + 1):
        for rho in partitions(r):
            c = phi_coeff(lam, rho)
            if c:
                out = out + i_poly(rho, J).scale(c)
    return out


def evaluate_statistic(f: MultiPoly, cycle_type: Partition) -> Fraction:
    mult = multiplicities(cycle_type)
    return f.evaluate({v: mult.get(var_index(v), 0) for v in f.vars})


def _monomial_key(parts: Partition, J: int) -> tuple:
    mult = multiplicities(parts)
    return tuple(mult.get(j, 0) for j in range(1, J + 1))


@lru_cache(maxsize=None)
def _x_basis(r: int):
    J = max(r, 1)
    lams = partitions_up_to(r)
    monos = [_monomial_key(p, J) for p in lams]
    index = {m: i for i, m in enumerate(monos)}
    matrix = [[Fraction(0)] * len(lams) for _ in lams]
    for col, lam in enumerate(lams):
        for e, c in x_lambda(lam, J).terms.items():
            matrix[index[e]][col] = c
    return J, lams, index, matrix


def expand_in_x_basis(f: MultiPoly, max_degree: int) -> dict:
    """Coefficients c_lam with f = sum_{|lam| <= max_degree} c_lam X^lam."""
    from .exact_arith import _solve_exact

    if graded_degree(f) > max_degree:
        raise ValueError(f"graded degree {graded_degree(f)} exceeds {max_degree}")
    J, lams, index, matrix = _x_basis(max_degree)
    g = f.with_vars(stat_vars(J)) if f.vars else MultiPoly.const(f.coeff(()), stat_vars(J))
    rhs = [Fraction(0)] * len(lams)
    for e, c in g.terms.items():
        if e not in index:
            raise ValueError(f"monomial {e} outside the graded basis")
        rhs[index[e]] = c
    try:
        (sol,) = _solve_exact(matrix, [rhs])
    except SingularGridError as exc:  # pragma: no cover - basis is nonsingular
        raise RuntimeError("character polynomial basis is singular") from exc
    return {lam: c for lam, c in zip(lams, sol) if c}


def parse_statistic(text: str) -> MultiPoly:
    """Parse an expression such as ``m1^2+3*m2`` into a statistic polynomial."""
    from .expr import parse_expression

    p = parse_expression(text)
    for v in p.vars:
        var_index(v)
    if not p.vars:
        return p
    J = max(var_index(v) for v in p.vars)
    return p.with_vars(stat_vars(J))
