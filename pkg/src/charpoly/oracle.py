"""Brute-force reference values over the full symmetric group.

Everything here enumerates S_n directly and shares no code with the
chain-type machinery, so it can serve as an independent check.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Sequence

from .combinat import Partition, evaluate_statistic, mn_character, padded, x_lambda
from .exact_arith import MultiPoly, binom, falling_product, gbinom
from .kernels import perm_statistics

MAX_N = 10


def count_increasing(perm: Sequence[int], k: int) -> int:
    """N_k(perm) by checking every k-subset of positions."""
    return sum(1 for idx in itertools.combinations(range(len(perm)), k)
               if all(perm[idx[t]] < perm[idx[t + 1]] for t in range(k - 1)))


def _check_n(n: int):
    if n > MAX_N:
        raise ValueError(f"brute force capped at n = {MAX_N}")


def brute_a(lam: Partition, n: int, k: int, convention: str = "x") -> Fraction:
    """(1/n!) sum_pi chi(pi) N_k(pi), with chi = X^lam or the character of lam[n]."""
    _check_n(n)
    lam = tuple(lam)
    if convention == "x":
        X = x_lambda(lam)
        weight = lambda ct: evaluate_statistic(X, ct)
    elif convention == "genuine":
        big = padded(lam, n)
        weight = lambda ct: mn_character(big, ct)
    else:
        raise ValueError("convention must be 'x' or 'genuine'")
    if k > n:
        return Fraction(0)
    total = Fraction(0)
    for ct, row in perm_statistics(n).items():
        total += weight(ct) * row[k]
    return total / math.factorial(n)


def brute_expected(f: MultiPoly, n: int, k: int) -> Fraction:
    """(1/n!) sum_pi f(pi) N_k(pi) for a statistic in the cycle counts."""
    _check_n(n)
    if k > n:
        return Fraction(0)
    total = Fraction(0)
    for ct, row in perm_statistics(n).items():
        total += evaluate_statistic(f, ct) * row[k]
    return total / math.factorial(n)


def brute_a_slow(lam: Partition, n: int, k: int) -> Fraction:
    """Like brute_a (X convention) but with per-permutation subset counting."""
    if n > 7:
        raise ValueError("slow oracle capped at n = 7")
    from .combinat import cycle_type_of
    X = x_lambda(tuple(lam))
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        total += evaluate_statistic(X, cycle_type_of(perm)) * count_increasing(perm, k)
    return total / math.factorial(n)


# closed forms for the four smallest lambda


def _binom_over_km1(a: Fraction, k: int) -> Fraction:
    """binom(a, k-2) / (k-1), continued to k = 1 through F(a, -1) = 1/(a+1)."""
    if k >= 2:
        return gbinom(a, k - 2) / (k - 1)
    if k == 1:
        return 1 / (a + 1)
    raise ValueError("k must be positive")


def small_closed_form(lam: Partition, n: int, k: int, printed_sign: bool = False) -> Fraction:
    """Closed forms of a^lam(n, k) for lam in {(), (1), (2), (1, 1)}.

    For (1, 1) the last term carries 2kn - (2k-1); ``printed_sign`` selects the
    variant with 2kn + (2k-1), which brute force rules out.
    """
    lam = tuple(lam)
    n = Fraction(n)
    if lam == ():
        return Fraction(binom(int(n), k), math.factorial(k))
    if k < 1:
        raise ValueError("closed forms need k >= 1")
    half = Fraction(1, 2)
    dfk = falling_product(2 * k - 1, k, 2)  # (2k-1)!!
    if lam == (1,):
        return (-gbinom(n - 1, k - 1) / math.factorial(k)
                + Fraction(2) ** (k - 1) / dfk * gbinom(n - half, k - 1))
    tail = Fraction(2) ** (k - 2) / (n * dfk) * _binom_over_km1(n - 3 * half, k)
    if lam == (2,):
        return (gbinom(n - 1, k - 2) / (2 * math.factorial(k - 1))
                - gbinom(n - 2, k - 1) / (n * math.factorial(k))
                - ((2 * k - 4) * n + (2 * k - 1)) * tail)
    if lam == (1, 1):
        return (gbinom(n - 2, k - 2) / math.factorial(k)
                + gbinom(n - 1, k - 2) / (2 * math.factorial(k - 1))
                + gbinom(n - 2, k - 1) / (n * math.factorial(k))
                - (2 * k * n + (1 if printed_sign else -1) * (2 * k - 1)) * tail)
    raise ValueError(f"no closed form for {lam}")
