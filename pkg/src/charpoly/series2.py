"""Truncated bivariate series: power series in x, bounded-below Laurent in y.

A :class:`BiSeries` stores the coefficient of ``x^j y^(offset+t)`` for
``j + t <= N``.  Coefficients are exact (Python ints or Fractions) held in
numpy object arrays so row products use ``numpy.convolve``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from threading import Lock

import numpy as np

from .chains import ChainType
from .exact_arith import binom, double_factorial, guarded_factorial_ratio
from .ptau import p_tau


class TruncationError(ValueError):
    """Requested coefficient lies beyond the truncation order."""


def _zeros(length: int) -> np.ndarray:
    a = np.empty(length, dtype=object)
    a[:] = 0
    return a


class BiSeries:
    __slots__ = ("N", "offset", "rows")

    def __init__(self, N: int, offset: int = 0, rows=None):
        self.N = N
        self.offset = offset
        if rows is None:
            rows = [_zeros(N - j + 1) for j in range(N + 1)]
        self.rows = rows

    # construction
    @classmethod
    def from_function(cls, N: int, f, offset: int = 0) -> "BiSeries":
        s = cls(N, offset)
        for j in range(N + 1):
            row = s.rows[j]
            for t in range(N - j + 1):
                row[t] = f(j, offset + t)
        return s

    @classmethod
    def from_dict(cls, N: int, coeffs: dict, offset: int = 0) -> "BiSeries":
        s = cls(N, offset)
        for (j, k), c in coeffs.items():
            t = k - offset
            if t < 0:
                raise ValueError("coefficient below offset")
            if j + t <= N:
                s.rows[j][t] += c
        return s

    @classmethod
    def constant(cls, N: int, c=1) -> "BiSeries":
        s = cls(N, 0)
        s.rows[0][0] = c
        return s

    @classmethod
    def x(cls, N: int) -> "BiSeries":
        return cls.from_dict(N, {(1, 0): 1})

    @classmethod
    def y(cls, N: int) -> "BiSeries":
        return cls.from_dict(N, {(0, 1): 1})

    # access
    def coeff(self, j: int, k: int):
        t = k - self.offset
        if j < 0 or t < 0:
            return 0
        if j + t > self.N:
            raise TruncationError(f"x^{j} y^{k} beyond truncation N={self.N} (offset {self.offset})")
        return self.rows[j][t]

    def items(self):
        for j, row in enumerate(self.rows):
            for t, c in enumerate(row):
                if c:
                    yield (j, self.offset + t), c

    def to_dict(self) -> dict:
        return dict(self.items())

    def copy(self) -> "BiSeries":
        return BiSeries(self.N, self.offset, [r.copy() for r in self.rows])

    # arithmetic helpers
    def _aligned(self, other: "BiSeries"):
        """Bring both to a common offset and truncation."""
        off = min(self.offset, other.offset)
        N = min(self.N + (self.offset - off), other.N + (other.offset - off))
        return self._reframe(off, N), other._reframe(off, N)

    def _reframe(self, offset: int, N: int) -> "BiSeries":
        """Re-express with a lower offset and total cap N (in the new frame)."""
        shift = self.offset - offset
        if shift < 0:
            raise ValueError("can only lower the offset")
        if shift == 0 and N == self.N:
            return self
        if N > self.N + shift:
            raise ValueError("cannot extend truncation")
        out = BiSeries(N, offset)
        for j in range(N + 1):
            length = N - j + 1
            src = self.rows[j] if j <= self.N else None
            row = out.rows[j]
            if src is None:
                continue
            take = min(len(src), length - shift)
            if take > 0:
                row[shift:shift + take] = src[:take]
        return out

    def __add__(self, other):
        if not isinstance(other, BiSeries):
            other = BiSeries.constant(self.N + abs(self.offset), other)
        a, b = self._aligned(other)
        return BiSeries(a.N, a.offset, [x + y for x, y in zip(a.rows, b.rows)])

    __radd__ = __add__

    def __neg__(self):
        return BiSeries(self.N, self.offset, [-r for r in self.rows])

    def __sub__(self, other):
        if not isinstance(other, BiSeries):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "BiSeries":
        return BiSeries(self.N, self.offset, [r * c for r in self.rows])

    def __mul__(self, other):
        if not isinstance(other, BiSeries):
            return self.scale(other)
        N = min(self.N, other.N)
        out = BiSeries(N, self.offset + other.offset)
        for i in range(N + 1):
            ai = self.rows[i]
            if not ai[: N - i + 1].any():
                continue
            for j in range(N - i + 1):
                bj = other.rows[j]
                length = N - i - j + 1
                prod = np.convolve(ai[:length], bj[:length])[:length]
                out.rows[i + j] += prod
        return out

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = BiSeries.constant(self.N)
        result.offset = 0
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "BiSeries":
        """Multiplicative inverse; requires offset 0 and a unit constant term."""
        if self.offset != 0:
            raise ValueError("inverse needs offset 0")
        c0 = self.rows[0][0]
        if c0 == 0:
            raise ZeroDivisionError("constant term is zero")
        N = self.N
        exact_unit = c0 in (1, -1)

        def div(x):
            return x * c0 if exact_unit else Fraction(x) / c0

        # inverse of the y-series in row 0
        a0 = self.rows[0]
        inv0 = _zeros(N + 1)
        inv0[0] = div(1)
        for t in range(1, N + 1):
            s = 0
            for q in range(1, t + 1):
                if a0[q]:
                    s += a0[q] * inv0[t - q]
            inv0[t] = -div(s)
        out = BiSeries(N, 0)
        out.rows[0] = inv0
        for j in range(1, N + 1):
            length = N - j + 1
            acc = _zeros(length)
            for i in range(1, j + 1):
                acc += np.convolve(self.rows[i][:length], out.rows[j - i][:length])[:length]
            out.rows[j] = -np.convolve(inv0[:length], acc)[:length]
        return out

    def shift_y(self, s: int) -> "BiSeries":
        """Multiply by y^s."""
        return BiSeries(self.N, self.offset + s, [r.copy() for r in self.rows])

    def div_x(self) -> "BiSeries":
        """Exact division by x (row 0 must vanish); truncation drops by one."""
        if self.rows[0].any():
            raise ValueError("series not divisible by x")
        N = self.N - 1
        return BiSeries(N, self.offset, [self.rows[j + 1][: N - j + 1].copy() for j in range(N + 1)])

    def normalized(self) -> "BiSeries":
        """Raise the offset past leading zero y-columns (truncation shrinks accordingly)."""
        s = self
        while s.N > 0 and not any(r[0] for r in s.rows):
            s = BiSeries(s.N - 1, s.offset + 1, [r[1:].copy() for r in s.rows[:-1]])
        return s

    def agrees_with(self, other: "BiSeries") -> bool:
        """Coefficientwise equality on the common known window."""
        a, b = self._aligned(other)
        return all((x == y).all() for x, y in zip(a.rows, b.rows))

    def subs_x_scale_y(self, g: "BiSeries") -> "BiSeries":
        """Apply y -> g(x) * y with g a power series in x alone (g(0) != 0)."""
        if self.offset < 0:
            raise ValueError("needs nonnegative offset")
        N = self.N
        gx = _zeros(N + 1)
        for j in range(min(N, g.N) + 1):
            gx[j] = g.rows[j][0]
        out = BiSeries(N, self.offset)
        power = _zeros(N + 1)
        power[0] = 1
        for _ in range(self.offset):
            power = np.convolve(power, gx)[: N + 1]
        for t in range(N + 1):
            col = _zeros(N - t + 1)
            for j in range(N - t + 1):
                col[j] = self.rows[j][t]
            res = np.convolve(col, power[: N - t + 1])[: N - t + 1]
            for j in range(N - t + 1):
                out.rows[j][t] += res[j]
            power = np.convolve(power, gx)[: N + 1]
        return out

    def subs_x_to_xy(self) -> "BiSeries":
        """Apply x -> x*y; requires offset 0."""
        if self.offset != 0:
            raise ValueError("needs offset 0")
        N = self.N
        out = BiSeries(N, 0)
        for j in range(N + 1):
            for t in range(N - j + 1):
                if 2 * j + t <= N and self.rows[j][t]:
                    out.rows[j][j + t] += self.rows[j][t]
        return out


# ---------------------------------------------------------------------------
# base elements


def q_inverse(N: int) -> BiSeries:
    return BiSeries.from_function(N, lambda j, k: math.comb(j + k, j) ** 2)


_BASE_LOCK = Lock()
_BASE: dict = {}


def base_elements(N: int) -> dict:
    """Qinv, Q, u, v, eta, xi and the images of u and v under the sign automorphism."""
    with _BASE_LOCK:
        if N in _BASE:
            return _BASE[N]
    qi = q_inverse(N)
    q = qi.inverse()
    x = BiSeries.x(N)
    y = BiSeries.y(N)
    one = BiSeries.constant(N)
    # halve exactly: numerators are even integer series
    u2 = (one + x - y) * qi + one
    v2 = (one - x + y) * qi - one
    u = _halve(u2)
    v = _halve(v2)
    qi2 = qi * qi
    out = {
        "Qinv": qi, "Q": q, "u": u, "v": v,
        "eta": y * qi2, "xi": x * qi2,
        "u_minus": one - u, "v_minus": -(one + v),
    }
    with _BASE_LOCK:
        _BASE[N] = out
    return out


def _halve(s: BiSeries) -> BiSeries:
    rows = []
    for r in s.rows:
        h = r.copy()
        for i, c in enumerate(r):
            if c % 2:
                raise ArithmeticError("odd coefficient when halving")
            h[i] = c // 2
        rows.append(h)
    return BiSeries(s.N, s.offset, rows)


_POW_LOCK = Lock()
_POWERS: dict = {}


def _power(N: int, name: str, e: int) -> BiSeries:
    key = (N, name, e)
    with _POW_LOCK:
        if key in _POWERS:
            return _POWERS[key]
    if e == 0:
        val = BiSeries.constant(N)
    elif e < 0:
        inv = {"Q": "Qinv", "Qinv": "Q"}[name]
        val = _power(N, inv, -e)
    elif e == 1:
        val = base_elements(N)[name]
    else:
        val = _power(N, name, e - 1) * base_elements(N)[name]
    with _POW_LOCK:
        _POWERS[key] = val
    return val


def h_series(tau: ChainType, sign: int, N: int) -> BiSeries:
    """H^tau (sign +1) or its image under the sign automorphism (sign -1).

    Coefficients of x^j y^k are exact for j + k - (nu - d) <= N + (d - nu), i.e.
    every h(n, k) with n <= N is available.
    """
    if not tau.is_reduced:
        raise ValueError(f"{tau} is not reduced")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    r, d, nu = tau.length, tau.degree, tau.rank
    Nint = N + (d - nu)
    P = p_tau(tau)
    uname, vname = ("u", "v") if sign == 1 else ("u_minus", "v_minus")
    A, B = r - d, r - nu
    # group by power of u: sum_a (-1)^a u^{A-a} sum_b p_ab v^{B-b}
    total = None
    by_a: dict = {}
    for (a, b), c in P.terms.items():
        by_a.setdefault(a, []).append((b, int(c)))
    for a, lst in by_a.items():
        inner = None
        for b, c in lst:
            term = _power(Nint, vname, B - b).scale(c)
            inner = term if inner is None else inner + term
        inner = inner * _power(Nint, uname, A - a)
        if a % 2:
            inner = -inner
        total = inner if total is None else total + inner
    e = d - 1 - 2 * nu
    qpart = _power(Nint, "Q", e)
    if sign == -1 and e % 2:
        qpart = -qpart
    out = total * qpart
    return out.shift_y(nu - d)


_SPLIT_LOCK = Lock()
_SPLIT: dict = {}


def _split(tau: ChainType, N: int):
    with _SPLIT_LOCK:
        hit = _SPLIT.get(tau)
        if hit is not None and hit[0] >= N:
            return hit
        if hit is not None:
            N = max(N, hit[0] + hit[0] // 2)
    plus = h_series(tau, 1, N)
    minus = h_series(tau, -1, N)
    entry = (N, plus, minus)
    with _SPLIT_LOCK:
        old = _SPLIT.get(tau)
        if old is None or old[0] < N:
            _SPLIT[tau] = entry
    return entry


DEFAULT_N = 12


def _reduced_parts(tau: ChainType, n: int, N: int | None):
    if N is None:
        N = max(DEFAULT_N, n)
    if n > N:
        raise TruncationError(f"n={n} exceeds truncation N={N}")
    bar = tau.reduction()
    m = tau.m(1)
    factor = binom(n + tau.length, m)
    return bar, factor, N


def h_coeff(tau: ChainType, i: int, n: int, k: int, N: int | None = None) -> Fraction:
    """Split part h_i^tau(n, k); for non-reduced tau uses the binomial reduction factor."""
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    if n < 0 or k > n:
        return Fraction(0)
    bar, factor, N = _reduced_parts(tau, n, N)
    _, plus, minus = _split(bar, N)
    p = plus.coeff(n - k, k)
    q = minus.coeff(n - k, k)
    val = Fraction(p - q, 2) if i == 0 else Fraction(p + q, 2)
    return val * factor


def h_split(tau: ChainType, n: int, k: int, N: int | None = None) -> tuple:
    """(h_0, h_1) at (n, k).

    Negative k is allowed: the two parts can be nonzero there even though
    their sum vanishes.
    """
    if n < 0 or k > n:
        return (Fraction(0), Fraction(0))
    bar, factor, N = _reduced_parts(tau, n, N)
    _, plus, minus = _split(bar, N)
    p = plus.coeff(n - k, k)
    q = minus.coeff(n - k, k)
    return (Fraction(p - q, 2) * factor, Fraction(p + q, 2) * factor)


def h_total(tau: ChainType, n: int, k: int, N: int | None = None) -> int:
    h0, h1 = h_split(tau, n, k, N)
    s = h0 + h1
    if s.denominator != 1:
        raise ArithmeticError("non-integer h value")
    return int(s)


# ---------------------------------------------------------------------------
# closed forms for coefficients of E * Q^{-1-r}


def q_closed(eps: int, delta: int, r: int, j: int, k: int) -> Fraction:
    gamma = eps + delta - eps * delta
    if j < 0 or k < 0 or j + k < -r + gamma:
        raise ValueError("outside the range where the closed form holds")
    pre = guarded_factorial_ratio([j + k + r - gamma], [j, k])
    if r % 2 == 0:
        r0 = r // 2
        if j - eps < -r0 or k - delta < -r0:
            return Fraction(0)
        val = Fraction(1, 2 ** r0) if r0 >= 0 else Fraction(2 ** (-r0))
        val *= guarded_factorial_ratio([j + k + r0 - eps * delta], [j + r0 - eps, k + r0 - delta])
        val /= double_factorial(2 * r0 - 1)
        return pre * val
    r1 = (r - 1) // 2
    if r1 < 0:
        return Fraction(0)
    val = Fraction(1, 2 ** (r1 + gamma))
    val *= double_factorial(2 * (j + k + r1 - eps * delta) + 1)
    val /= math.factorial(r1) * double_factorial(2 * (j + r1 - eps) + 1) * double_factorial(2 * (k + r1 - delta) + 1)
    return pre * val


def e_factor(eps: int, delta: int, N: int) -> BiSeries:
    if eps == 0 and delta == 0:
        return BiSeries.constant(N)
    sx = -1 if delta else 1
    sy = -1 if eps else 1
    return BiSeries.from_dict(N, {(0, 0): Fraction(1, 2), (1, 0): Fraction(sx, 2), (0, 1): Fraction(sy, 2)})
