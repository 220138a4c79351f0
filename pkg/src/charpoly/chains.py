"""Sequence arrangements, chain types, relative orders and the structure
constants built from them, plus definitional brute-force counters."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

from . import kernels
from .combinat import Partition, between, boundary, mn_character, multiplicities, partitions


class SizeCapError(ValueError):
    """Raised when a brute-force enumeration would exceed its size cap."""


class ChainType(NamedTuple):
    rank: int
    mu: Partition

    @property
    def length(self) -> int:
        return self.rank + sum(self.mu)

    @property
    def degree(self) -> int:
        return self.length - len(self.mu)

    def m(self, j: int) -> int:
        return sum(1 for p in self.mu if p == j)

    @property
    def is_reduced(self) -> bool:
        return 1 not in self.mu

    def reduction(self) -> "ChainType":
        return ChainType(self.rank, tuple(p for p in self.mu if p > 1))

    def derivative(self) -> "ChainType":
        return ChainType(self.rank, tuple(p - 1 for p in self.mu if p > 1))

    def dot(self) -> "ChainType":
        """Remove one chain of size one."""
        if 1 not in self.mu:
            raise ValueError(f"{self} has no size-one chain")
        mu = list(self.mu)
        mu.remove(1)
        return ChainType(self.rank, tuple(mu))

    def to_str(self) -> str:
        return f"({self.rank},({','.join(map(str, self.mu))}))"


def chain_type(rank: int, mu: Sequence[int] = ()) -> ChainType:
    return ChainType(int(rank), tuple(sorted((int(p) for p in mu), reverse=True)))


@lru_cache(maxsize=None)
def enum_chain_types(r: int, d: int | None = None, rank: int | None = None) -> tuple:
    """All chain types of length r (optionally of degree d and/or rank), canonically ordered."""
    out = []
    for nu in range(r, -1, -1):
        if rank is not None and nu != rank:
            continue
        for mu in partitions(r - nu):
            t = ChainType(nu, mu)
            if d is None or t.degree == d:
                out.append(t)
    return tuple(out)


# ---------------------------------------------------------------------------
# arrangements


@dataclass(frozen=True)
class Arrangement:
    length: int
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset((int(i), int(j)) for i, j in self.pairs))
        for i, j in self.pairs:
            if not (1 <= i <= self.length and 1 <= j <= self.length):
                raise ValueError(f"pair {(i, j)} outside [{self.length}]^2")
        if not self.is_valid():
            raise ValueError(f"pairs {sorted(self.pairs)} are not order compatible")

    def is_valid(self) -> bool:
        ps = sorted(self.pairs)
        return all(b[0] > a[0] and b[1] > a[1] for a, b in zip(ps, ps[1:]))

    @property
    def degree(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> list:
        return sorted(self.pairs)

    def inverse(self) -> "Arrangement":
        return Arrangement(self.length, frozenset((j, i) for i, j in self.pairs))

    def isolated(self) -> list:
        used = {i for p in self.pairs for i in p}
        return [i for i in range(1, self.length + 1) if i not in used]

    def reduction(self) -> "Arrangement":
        iso = set(self.isolated())
        keep = [i for i in range(1, self.length + 1) if i not in iso]
        pos = {v: k + 1 for k, v in enumerate(keep)}
        return Arrangement(len(keep), frozenset((pos[i], pos[j]) for i, j in self.pairs))

    def derivative(self) -> "Arrangement":
        ps = self.sorted_pairs()
        firsts = [i for i, _ in ps]
        seconds = [j for _, j in ps]
        d = len(ps)
        out = set()
        for a in range(d):
            for b in range(d):
                if firsts[a] == seconds[b]:
                    out.add((a + 1, b + 1))
        return Arrangement(d, frozenset(out))

    def contained_in(self, perm: Sequence[int]) -> bool:
        """alpha | sigma for a permutation in one-line notation with values 1..r."""
        return all(perm[i - 1] == j for i, j in self.pairs)


def arrangement(length: int, pairs) -> Arrangement:
    return Arrangement(length, frozenset(pairs))


def all_arrangements(r: int, d: int | None = None) -> Iterator[Arrangement]:
    degrees = range(r + 1) if d is None else [d]
    for dd in degrees:
        for rows in itertools.combinations(range(1, r + 1), dd):
            for cols in itertools.combinations(range(1, r + 1), dd):
                yield Arrangement(r, frozenset(zip(rows, cols)))


def typ_of(alpha: Arrangement) -> ChainType:
    out_edge = {}
    has_in = set()
    loops = 0
    loop_vertices = set()
    for i, j in alpha.pairs:
        if i == j:
            loops += 1
            loop_vertices.add(i)
        else:
            out_edge[i] = j
            has_in.add(j)
    sizes = []
    for v in range(1, alpha.length + 1):
        if v in loop_vertices or v in has_in:
            continue
        size = 1
        w = v
        while w in out_edge:
            w = out_edge[w]
            size += 1
        sizes.append(size)
    return ChainType(loops, tuple(sorted(sizes, reverse=True)))


@lru_cache(maxsize=None)
def representative(tau: ChainType) -> Arrangement:
    """Loops first, then chains by decreasing size on consecutive indices."""
    pairs = [(p, p) for p in range(1, tau.rank + 1)]
    start = tau.rank + 1
    for size in tau.mu:
        pairs.extend((i, i + 1) for i in range(start, start + size - 1))
        start += size
    return Arrangement(tau.length, frozenset(pairs))


@lru_cache(maxsize=None)
def arrangements_of_type(tau: ChainType) -> tuple:
    return tuple(a for a in all_arrangements(tau.length, tau.degree) if typ_of(a) == tau)


# ---------------------------------------------------------------------------
# relative orders


@dataclass(frozen=True)
class RelativeOrder:
    """Interleaving of [r1] and [r2], stored as the slots used by the first sequence."""

    r1: int
    r2: int
    slots: tuple

    def __post_init__(self):
        s = tuple(sorted(self.slots))
        object.__setattr__(self, "slots", s)
        if len(s) != self.r1 or len(set(s)) != self.r1 or (s and not (1 <= s[0] and s[-1] <= self.r1 + self.r2)):
            raise ValueError("invalid slot subset")

    def iota1(self, i: int) -> int:
        return self.slots[i - 1]

    def iota2(self, i: int) -> int:
        return self.second_slots()[i - 1]

    def second_slots(self) -> tuple:
        s = set(self.slots)
        return tuple(x for x in range(1, self.r1 + self.r2 + 1) if x not in s)

    def relates(self, i1: int, i2: int) -> bool:
        """i1 R i2, i.e. element i1 of the first sequence precedes element i2 of the second."""
        return self.iota1(i1) <= self.iota2(i2)

    def before_counts(self) -> tuple:
        """For each first-sequence element, the number of second-sequence elements before it."""
        return tuple(s - 1 - k for k, s in enumerate(self.slots))

    def compatible(self, a1: Arrangement, a2: Arrangement) -> bool:
        return all(self.relates(i1, i2) == self.relates(j1, j2)
                   for i1, j1 in a1.pairs for i2, j2 in a2.pairs)

    def merge(self, a1: Arrangement, a2: Arrangement) -> Arrangement:
        pairs = {(self.iota1(i), self.iota1(j)) for i, j in a1.pairs}
        pairs |= {(self.iota2(i), self.iota2(j)) for i, j in a2.pairs}
        return Arrangement(self.r1 + self.r2, frozenset(pairs))


def relative_orders(r1: int, r2: int) -> Iterator[RelativeOrder]:
    for slots in itertools.combinations(range(1, r1 + r2 + 1), r1):
        yield RelativeOrder(r1, r2, slots)


# ---------------------------------------------------------------------------
# structure constants


@lru_cache(maxsize=None)
def zeta_count(omega: ChainType, omega_prime: ChainType) -> int:
    """Number of sub-arrangements of a fixed type-omega_prime arrangement having type omega."""
    if omega.length != omega_prime.length:
        raise ValueError("chain types of different length")
    beta = representative(omega_prime).sorted_pairs()
    want = omega.degree
    if want > len(beta):
        return 0
    count = 0
    for sub in itertools.combinations(beta, want):
        if typ_of(Arrangement(omega.length, frozenset(sub))) == omega:
            count += 1
    return count


@lru_cache(maxsize=None)
def consistent_cycle_types(tau: ChainType) -> tuple:
    """Cycle-type distribution of the permutations sigma with alpha | sigma."""
    counts = kernels.chain_cycle_counts(tuple(tau.mu))
    out = {}
    ones = (1,) * tau.rank
    for ct, c in counts.items():
        full = tuple(sorted(ct + ones, reverse=True))
        out[full] = out.get(full, 0) + c
    return tuple(sorted(out.items()))


@lru_cache(maxsize=None)
def vartheta(tau: ChainType, lam: Partition) -> int:
    lam = tuple(lam)
    r = tau.length
    l = sum(lam)
    mus = between(boundary(lam), lam, r)
    if not mus:
        return 0
    total = 0
    for ct, c in consistent_cycle_types(tau):
        total += c * sum(mn_character(mu, ct) for mu in mus)
    return -total if (l - r) % 2 else total


def vartheta_by_enumeration(tau: ChainType, lam: Partition) -> int:
    """Definitional value: sum over all of S_r of characters at permutations containing alpha."""
    from .combinat import cycle_type_of

    lam = tuple(lam)
    r = tau.length
    alpha = representative(tau)
    mus = between(boundary(lam), lam, r)
    total = 0
    for perm in itertools.permutations(range(1, r + 1)):
        if alpha.contained_in(perm):
            ct = cycle_type_of(perm)
            total += sum(mn_character(mu, ct) for mu in mus)
    return -total if (sum(lam) - r) % 2 else total


# ---------------------------------------------------------------------------
# brute-force counters


def _check_cap(r: int, n: int, cap_r: int, cap_n: int):
    if r > cap_r or n > cap_n:
        raise SizeCapError(f"brute force limited to r <= {cap_r}, n <= {cap_n} (got r={r}, n={n})")


@lru_cache(maxsize=None)
def brute_h_row(tau: ChainType, n: int, cap_r: int = 6, cap_n: int = 6) -> tuple:
    """(h(n, 0), ..., h(n, n)) by enumerating arrangements and relative orders."""
    r = tau.length
    _check_cap(r, n, cap_r, cap_n)
    totals = [0] * (n + 1)
    alphas = arrangements_of_type(tau)
    for c in itertools.combinations_with_replacement(range(n + 1), r):
        for alpha in alphas:
            a = [c[i - 1] for i, _ in alpha.pairs]
            b = [c[j - 1] for _, j in alpha.pairs]
            row = kernels.count_compatible_chains(a, b, n)
            for k in range(n + 1):
                totals[k] += row[k]
    return tuple(totals)


def brute_h(tau: ChainType, n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return brute_h_row(tau, n)[k]


def brute_h_definitional(tau: ChainType, n: int, k: int) -> int:
    """Literal definition using RelativeOrder objects; for very small sizes only."""
    _check_cap(tau.length, n, 4, 4)
    total = 0
    gammas = list(all_arrangements(n, k))
    for alpha in arrangements_of_type(tau):
        for gamma in gammas:
            for R in relative_orders(tau.length, n):
                if R.compatible(alpha, gamma):
                    total += 1
    return total


def _weak_sequences(r: int, n: int, fixed: dict) -> Iterator[tuple]:
    """Weakly increasing sequences in {0..n}^r with prescribed values at some positions."""
    seq = [0] * r

    def rec(pos, low):
        if pos == r:
            yield tuple(seq)
            return
        if pos in fixed:
            v = fixed[pos]
            if v >= low:
                seq[pos] = v
                yield from rec(pos + 1, v)
            return
        # cannot exceed any later fixed value
        high = min([fixed[q] for q in fixed if q > pos], default=n)
        for v in range(low, high + 1):
            seq[pos] = v
            yield from rec(pos + 1, v)

    yield from rec(0, 0)


@lru_cache(maxsize=None)
def brute_kappa_row(tau: ChainType, n: int, cap_r: int = 6, cap_n: int = 6) -> tuple:
    """(kappa(n, 0), ..., kappa(n, n)) by enumerating pairs of relative orders."""
    r = tau.length
    _check_cap(r, n, cap_r, cap_n)
    totals = [0] * (n + 1)
    for alpha in arrangements_of_type(tau):
        ps = alpha.sorted_pairs()
        for cs in itertools.combinations_with_replacement(range(n + 1), r):
            fixed = {}
            ok = True
            for i, j in ps:
                v = cs[i - 1]
                if fixed.get(j - 1, v) != v:
                    ok = False
                    break
                fixed[j - 1] = v
            if not ok:
                continue
            for ct in _weak_sequences(r, n, fixed):
                row = kernels.count_compatible_chains(cs, ct, n)
                for k in range(n + 1):
                    totals[k] += row[k]
    return tuple(totals)


def brute_kappa(tau: ChainType, n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return brute_kappa_row(tau, n)[k]
