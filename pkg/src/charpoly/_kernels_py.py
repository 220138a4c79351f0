"""Pure-Python implementations of the hot enumeration kernels.

The compiled module ``_kernels`` exposes the same three functions.
"""

from __future__ import annotations

import itertools
import math


def _cycle_type(perm) -> tuple:
    n = len(perm)
    seen = [False] * n
    lengths = []
    for i in range(n):
        if not seen[i]:
            c = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                c += 1
            lengths.append(c)
    lengths.sort(reverse=True)
    return tuple(lengths)


def increasing_counts(perm) -> list:
    """Number of increasing subsequences of each length 0..n of a 0-based permutation."""
    n = len(perm)
    totals = [0] * (n + 1)
    totals[0] = 1
    ends = []  # ends[i][t] = increasing subsequences of length t+1 ending at i
    for i in range(n):
        row = [0] * n
        row[0] = 1
        pi = perm[i]
        for j in range(i):
            if perm[j] < pi:
                prev = ends[j]
                for t in range(j + 1):
                    if prev[t]:
                        row[t + 1] += prev[t]
        ends.append(row)
        for t in range(i + 1):
            totals[t + 1] += row[t]
    return totals


def perm_statistics(n: int) -> dict:
    """Map cycle type -> [sum of N_k over permutations of that type for k = 0..n]."""
    out: dict = {}
    for perm in itertools.permutations(range(n)):
        ct = _cycle_type(perm)
        counts = increasing_counts(perm)
        acc = out.get(ct)
        if acc is None:
            out[ct] = counts
        else:
            for k in range(n + 1):
                acc[k] += counts[k]
    return out


def chain_cycle_counts(sizes) -> dict:
    """Cycle types produced by joining chains of the given sizes via all c! bijections.

    A bijection from chain ends to chain starts is a permutation of the chains;
    each of its cycles becomes a cycle whose length is the total size of the
    chains involved.  Enumerated as set partitions with (b-1)! cyclic orders
    per block of size b.
    """
    sizes = list(sizes)
    out: dict = {}
    c = len(sizes)
    if c == 0:
        return {(): 1}

    def rec(remaining, blocks, weight):
        if not remaining:
            ct = tuple(sorted(blocks, reverse=True))
            out[ct] = out.get(ct, 0) + weight
            return
        first, rest = remaining[0], remaining[1:]
        for k in range(len(rest) + 1):
            for combo in itertools.combinations(range(len(rest)), k):
                chosen = set(combo)
                total = sizes[first] + sum(sizes[rest[i]] for i in combo)
                left = [rest[i] for i in range(len(rest)) if i not in chosen]
                rec(left, blocks + [total], weight * math.factorial(k))

    rec(list(range(c)), [], 1)
    return out


def count_compatible_chains(a, b, n: int) -> list:
    """Count increasing chains of pairs (l, m) in [n]^2 by length 0..n.

    A pair is allowed iff for every t: (l > a[t]) == (m > b[t]).
    """
    a = list(a)
    b = list(b)
    allowed = [[all((l > x) == (m > y) for x, y in zip(a, b)) for m in range(1, n + 1)]
               for l in range(1, n + 1)]
    totals = [0] * (n + 1)
    totals[0] = 1
    # prefix[t][i][j]: chains of length t with last pair (< i, < j), 1-based sizes n+1
    f = [[[0] * n for _ in range(n)] for _ in range(n + 1)]
    # cum[t][i+1][j+1] = sum of f[t][i'][j'] for i' <= i, j' <= j
    cum = [[[0] * (n + 1) for _ in range(n + 1)] for _ in range(n + 1)]
    for i in range(n):
        for j in range(n):
            if allowed[i][j]:
                f[1][i][j] = 1
                for t in range(2, min(i, j) + 2):
                    f[t][i][j] = cum[t - 1][i][j]
            for t in range(1, n + 1):
                cum[t][i + 1][j + 1] = cum[t][i][j + 1] + cum[t][i + 1][j] - cum[t][i][j] + f[t][i][j]
    for t in range(1, n + 1):
        totals[t] = cum[t][n][n]
    return totals
