# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; same interface as ``_kernels_py``."""

from libc.stdlib cimport malloc, free
from libc.string cimport memset

ctypedef long long i64


cdef inline void _swap(int *a, int i, int j) noexcept nogil:
    cdef int t = a[i]
    a[i] = a[j]
    a[j] = t


cdef i64 _cycle_code(int *perm, int n, char *seen, i64 base) noexcept nogil:
    """Encode the multiset of cycle lengths as sum of base^(len-1)."""
    cdef int i, j, c
    cdef i64 code = 0, p
    memset(seen, 0, n)
    for i in range(n):
        if not seen[i]:
            c = 0
            j = i
            while not seen[j]:
                seen[j] = 1
                j = perm[j]
                c += 1
            p = 1
            for j in range(c - 1):
                p *= base
            code += p
    return code


def _decode(i64 code, int n, i64 base):
    parts = []
    cdef int length = 1
    cdef i64 m
    while code:
        m = code % base
        for _ in range(m):
            parts.append(length)
        code //= base
        length += 1
    parts.sort(reverse=True)
    return tuple(parts)


def perm_statistics(int n):
    """Map cycle type -> [sum of N_k over permutations of that type for k = 0..n]."""
    if n == 0:
        return {(): [1]}
    if n > 12:
        raise ValueError("n too large for full enumeration")
    cdef int *perm = <int *> malloc(n * sizeof(int))
    cdef int *stack = <int *> malloc(n * sizeof(int))
    cdef char *seen = <char *> malloc(n)
    cdef i64 *ends = <i64 *> malloc(n * n * sizeof(i64))
    cdef i64 *totals = <i64 *> malloc((n + 1) * sizeof(i64))
    cdef int i, j, t, k
    cdef i64 base = n + 1, code
    cdef dict index = {}
    # at most p(12) = 77 cycle types
    cdef i64 *acc = <i64 *> malloc(80 * (n + 1) * sizeof(i64))
    cdef int idx, ntypes = 0
    memset(acc, 0, 80 * (n + 1) * sizeof(i64))
    try:
        for i in range(n):
            perm[i] = i
            stack[i] = 0
        i = 0
        while True:
            # process current permutation
            code = _cycle_code(perm, n, seen, base)
            memset(totals, 0, (n + 1) * sizeof(i64))
            totals[0] = 1
            for j in range(n):
                for t in range(n):
                    ends[j * n + t] = 0
                ends[j * n] = 1
                for k in range(j):
                    if perm[k] < perm[j]:
                        for t in range(k + 1):
                            ends[j * n + t + 1] += ends[k * n + t]
                for t in range(j + 1):
                    totals[t + 1] += ends[j * n + t]
            obj = index.get(code)
            if obj is None:
                idx = ntypes
                index[code] = idx
                ntypes += 1
            else:
                idx = obj
            for t in range(n + 1):
                acc[idx * (n + 1) + t] += totals[t]
            # Heap's algorithm, iterative
            while i < n:
                if stack[i] < i:
                    if i % 2 == 0:
                        _swap(perm, 0, i)
                    else:
                        _swap(perm, stack[i], i)
                    stack[i] += 1
                    i = 0
                    break
                else:
                    stack[i] = 0
                    i += 1
            if i >= n:
                break
        out = {}
        for code, idx in index.items():
            out[_decode(code, n, base)] = [int(acc[idx * (n + 1) + t]) for t in range(n + 1)]
    finally:
        free(perm)
        free(stack)
        free(seen)
        free(ends)
        free(totals)
        free(acc)
    return out


def chain_cycle_counts(sizes):
    """Cycle types produced by joining chains of the given sizes via all c! bijections."""
    cdef int c = len(sizes)
    if c == 0:
        return {(): 1}
    if c > 12:
        raise ValueError("too many chains")
    cdef int r = sum(sizes)
    # digits count cycles of each length, so base c + 1 suffices
    if (c + 1) ** r >= 2 ** 62:
        from ._kernels_py import chain_cycle_counts as slow
        return slow(sizes)
    cdef int *perm = <int *> malloc(c * sizeof(int))
    cdef int *stack = <int *> malloc(c * sizeof(int))
    cdef int *sz = <int *> malloc(c * sizeof(int))
    cdef char *seen = <char *> malloc(c)
    cdef int i, j, k, length
    cdef i64 base = c + 1, code, p
    cdef dict counts = {}
    try:
        for i in range(c):
            perm[i] = i
            stack[i] = 0
            sz[i] = sizes[i]
        i = 0
        while True:
            memset(seen, 0, c)
            code = 0
            for j in range(c):
                if not seen[j]:
                    length = 0
                    k = j
                    while not seen[k]:
                        seen[k] = 1
                        length += sz[k]
                        k = perm[k]
                    p = 1
                    for _ in range(length - 1):
                        p *= base
                    code += p
            counts[code] = counts.get(code, 0) + 1
            while i < c:
                if stack[i] < i:
                    if i % 2 == 0:
                        _swap(perm, 0, i)
                    else:
                        _swap(perm, stack[i], i)
                    stack[i] += 1
                    i = 0
                    break
                else:
                    stack[i] = 0
                    i += 1
            if i >= c:
                break
    finally:
        free(perm)
        free(stack)
        free(sz)
        free(seen)
    return {_decode(code, r, base): cnt for code, cnt in counts.items()}


def count_compatible_chains(a, b, int n):
    """Count increasing chains of pairs (l, m) in [n]^2 by length 0..n.

    A pair is allowed iff for every t: (l > a[t]) == (m > b[t]).
    """
    cdef int s = len(a)
    cdef int *aa = <int *> malloc((s + 1) * sizeof(int))
    cdef int *bb = <int *> malloc((s + 1) * sizeof(int))
    cdef int N1 = n + 1
    cdef i64 *f = <i64 *> malloc((n + 1) * N1 * N1 * sizeof(i64))
    cdef i64 *cum = <i64 *> malloc((n + 1) * N1 * N1 * sizeof(i64))
    cdef int i, j, t, q
    cdef bint ok
    try:
        for q in range(s):
            aa[q] = a[q]
            bb[q] = b[q]
        memset(f, 0, (n + 1) * N1 * N1 * sizeof(i64))
        memset(cum, 0, (n + 1) * N1 * N1 * sizeof(i64))
        for i in range(n):
            for j in range(n):
                ok = True
                for q in range(s):
                    if ((i + 1) > aa[q]) != ((j + 1) > bb[q]):
                        ok = False
                        break
                if ok:
                    f[(1 * N1 + i) * N1 + j] = 1
                    for t in range(2, min(i, j) + 2):
                        f[(t * N1 + i) * N1 + j] = cum[(( t - 1) * N1 + i) * N1 + j]
                for t in range(1, n + 1):
                    cum[(t * N1 + i + 1) * N1 + j + 1] = (cum[(t * N1 + i) * N1 + j + 1]
                                                          + cum[(t * N1 + i + 1) * N1 + j]
                                                          - cum[(t * N1 + i) * N1 + j]
                                                          + f[(t * N1 + i) * N1 + j])
        totals = [1] + [int(cum[(t * N1 + n) * N1 + n]) for t in range(1, n + 1)]
    finally:
        free(aa)
        free(bb)
        free(f)
        free(cum)
    return totals
