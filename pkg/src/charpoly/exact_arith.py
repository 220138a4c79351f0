"""Exact scalar and polynomial arithmetic.

Scalars are :class:`fractions.Fraction` (always in lowest terms).  Polynomials
are sparse dictionaries from exponent tuples to nonzero rationals over an
ordered list of named variables.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Number = Union[int, Fraction]


class SingularGridError(ValueError):
    """Raised when interpolation data does not contain a complete grid."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def falling_product(a: Number, m: int, step: int = 1) -> Fraction:
    """Return prod_{i=0}^{m-1} (a - step*i)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if step not in (1, 2):
        raise ValueError("step must be 1 or 2")
    a = as_fraction(a)
    out = Fraction(1)
    for i in range(m):
        out *= a - step * i
    return out


def rising_product(a: Number, m: int, step: int = 1) -> Fraction:
    """Return prod_{i=1}^{m} (a + step*i)."""
    a = as_fraction(a)
    out = Fraction(1)
    for i in range(1, m + 1):
        out *= a + step * i
    return out


def double_factorial(n: int) -> Fraction:
    """n!! with 0!! = (-1)!! = 1, extended to negative odd n by n!! = n (n-2)!!."""
    if n >= 0:
        out = 1
        while n > 1:
            out *= n
            n -= 2
        return Fraction(out)
    if n % 2 == 0:
        raise ValueError(f"double factorial undefined for even negative {n}")
    # (n)!! = (n+2)!! / (n+2) going downward from (-1)!! = 1
    out = Fraction(1)
    m = -1
    while m > n:
        out /= m
        m -= 2
    return out


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative {n}")
    return math.factorial(n)


def guarded_factorial_ratio(numerators: Sequence[int], denominators: Sequence[int]) -> Fraction:
    """prod s! / prod t!, taken to be zero when some t < 0."""
    for s in numerators:
        if s < 0:
            raise ValueError(f"negative numerator argument {s}")
    if any(t < 0 for t in denominators):
        return Fraction(0)
    num = 1
    for s in numerators:
        num *= math.factorial(s)
    den = 1
    for t in denominators:
        den *= math.factorial(t)
    return Fraction(num, den)


def gbinom(a: Number, k: int) -> Fraction:
    """Generalized binomial coefficient binom(a, k) = a(a-1)...(a-k+1)/k!; zero for k < 0."""
    if k < 0:
        return Fraction(0)
    return falling_product(a, k, 1) / math.factorial(k)


def binom(n: int, k: int) -> int:
    """Integer binomial with binom(n, k) = 0 outside 0 <= k <= n (n >= 0)."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


# ---------------------------------------------------------------------------
# multivariate polynomials


def _grlex_key(exps: tuple) -> tuple:
    return (sum(exps), exps)


class MultiPoly:
    """Sparse multivariate polynomial with rational coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple, Number] | None = None):
        self.vars = tuple(variables)
        clean: dict[tuple, Fraction] = {}
        if terms:
            nv = len(self.vars)
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != nv:
                    raise ValueError("exponent vector length mismatch")
                if any(x < 0 for x in e):
                    raise ValueError("negative exponent")
                c = as_fraction(c)
                if c:
                    clean[e] = clean.get(e, Fraction(0)) + c
                    if not clean[e]:
                        del clean[e]
        self.terms = clean

    # construction helpers
    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.vars = variables
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, c: Number, variables: Iterable[str] = ()) -> "MultiPoly":
        variables = tuple(variables)
        c = as_fraction(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def var(cls, name: str, variables: Iterable[str] | None = None) -> "MultiPoly":
        variables = tuple(variables) if variables is not None else (name,)
        if name not in variables:
            variables = variables + (name,)
        e = tuple(1 if v == name else 0 for v in variables)
        return cls._raw(variables, {e: Fraction(1)})

    @classmethod
    def from_univariate(cls, coeffs: Sequence[Number], name: str) -> "MultiPoly":
        return cls((name,), {(i,): c for i, c in enumerate(coeffs) if c})

    # variable alignment
    def with_vars(self, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        if variables == self.vars:
            return self
        idx = []
        for v in self.vars:
            if v not in variables:
                if any(e[self.vars.index(v)] for e in self.terms):
                    raise ValueError(f"variable {v} in use, cannot drop")
                idx.append(None)
            else:
                idx.append(variables.index(v))
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for pos, x in zip(idx, e):
                if pos is not None:
                    ne[pos] = x
            out[tuple(ne)] = c
        return MultiPoly._raw(variables, out)

    def _align(self, other: "MultiPoly"):
        if self.vars == other.vars:
            return self, other
        merged = list(self.vars)
        for v in other.vars:
            if v not in merged:
                merged.append(v)
        return self.with_vars(merged), other.with_vars(merged)

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other, self.vars)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(a.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: Number) -> "MultiPoly":
        c = as_fraction(c)
        if not c:
            return MultiPoly._raw(self.vars, {})
        return MultiPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._align(other)
        out: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(a.vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / as_fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("nonnegative integer powers only")
        result = MultiPoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other, self.vars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash(frozenset(self.drop_unused().terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self, var: str | None = None) -> int:
        """Degree in ``var`` (total degree if None); -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def coeff_of(self, **powers) -> Fraction:
        e = tuple(powers.get(v, 0) for v in self.vars)
        return self.coeff(e)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def content_denominator(self) -> int:
        d = 1
        for c in self.terms.values():
            d = d * c.denominator // math.gcd(d, c.denominator)
        return d

    def sorted_terms(self) -> list:
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def drop_unused(self) -> "MultiPoly":
        used = [i for i in range(len(self.vars)) if any(e[i] for e in self.terms)]
        if len(used) == len(self.vars):
            return self
        return self.with_vars([self.vars[i] for i in used])

    # evaluation / substitution
    def evaluate(self, point) -> Fraction:
        """Evaluate at a dict {var: value} or a sequence ordered like ``vars``."""
        if isinstance(point, Mapping):
            vals = [as_fraction(point.get(v, 0)) for v in self.vars]
        else:
            vals = [as_fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, p in zip(vals, e):
                if p:
                    t *= x ** p
            total += t
        return total

    def __call__(self, *args, **kwargs):
        if kwargs:
            return self.evaluate(kwargs)
        return self.evaluate(args)

    def substitute(self, mapping: Mapping[str, "MultiPoly | Number"]) -> "MultiPoly":
        """Replace variables by polynomials (or scalars); others are kept."""
        keep = [v for v in self.vars if v not in mapping]
        target_vars = list(keep)
        images = {}
        for v, img in mapping.items():
            if isinstance(img, MultiPoly):
                for w in img.vars:
                    if w not in target_vars:
                        target_vars.append(w)
        for v in self.vars:
            if v in mapping:
                img = mapping[v]
                if not isinstance(img, MultiPoly):
                    img = MultiPoly.const(img, ())
                images[v] = img.with_vars(target_vars) if img.vars != tuple(target_vars) else img
            else:
                images[v] = MultiPoly.var(v, target_vars)
        target_vars = tuple(target_vars)
        powers: dict = {}

        def power(v, p):
            key = (v, p)
            if key not in powers:
                powers[key] = images[v] ** p
            return powers[key]

        out = MultiPoly._raw(target_vars, {})
        for e, c in self.terms.items():
            term = MultiPoly.const(c, target_vars)
            for v, p in zip(self.vars, e):
                if p:
                    term = term * power(v, p)
            out = out + term
        return out

    def diff(self, var: str) -> "MultiPoly":
        if var not in self.vars:
            return MultiPoly._raw(self.vars, {})
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPoly._raw(self.vars, out)

    def to_univariate(self, var: str | None = None) -> list:
        """Ascending coefficient list; the polynomial must involve only ``var``."""
        p = self.drop_unused()
        if var is None:
            if len(p.vars) > 1:
                raise ValueError("not univariate")
            var = p.vars[0] if p.vars else "x"
        if p.vars and p.vars != (var,):
            raise ValueError(f"not univariate in {var}: {p.vars}")
        deg = p.degree()
        coeffs = [Fraction(0)] * (deg + 1)
        for e, c in p.terms.items():
            coeffs[e[0] if e else 0] = c
        return coeffs

    # formatting
    def __repr__(self):
        return f"MultiPoly({self!s})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (v if p == 1 else f"{v}^{p}") for v, p in zip(self.vars, e) if p
            )
            if not mono:
                s = str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                cs = str(c)
                if c.denominator != 1:
                    cs = f"({cs})"
                s = f"{cs}*{mono}"
            parts.append(s)
        out = parts[0]
        for s in parts[1:]:
            out += " - " + s[1:] if s.startswith("-") else " + " + s
        return out

    def to_json(self) -> dict:
        return {"vars": list(self.vars), "terms": [
            {"coeff": fraction_to_str(c), "exps": list(e)} for e, c in self.sorted_terms()
        ]}

    @classmethod
    def from_json(cls, data: Mapping) -> "MultiPoly":
        return cls(data["vars"], {tuple(t["exps"]): Fraction(t["coeff"]) for t in data["terms"]})


def fraction_to_str(c: Fraction) -> str:
    c = as_fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_vars(*names: str):
    """Return MultiPoly generators sharing the variable list ``names``."""
    return tuple(MultiPoly.var(n, names) for n in names)


# ---------------------------------------------------------------------------
# interpolation


def _solve_exact(matrix: list, rhs_cols: list) -> list:
    """Gauss-Jordan over Fractions; returns the inverse applied to each column list."""
    n = len(matrix)
    aug = [list(map(Fraction, row)) + [Fraction(col[i]) for col in rhs_cols] for i, row in enumerate(matrix)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise SingularGridError("singular interpolation system")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [[aug[i][n + j] for i in range(n)] for j in range(len(rhs_cols))]


def vandermonde_inverse(nodes: Sequence[int]) -> list:
    """Matrix M with M @ values = ascending monomial coefficients."""
    n = len(nodes)
    if len(set(nodes)) != n:
        raise SingularGridError("repeated interpolation nodes")
    vand = [[Fraction(x) ** p for p in range(n)] for x in nodes]
    identity = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    cols = _solve_exact(vand, identity)
    # cols[j] is the solution for e_j, i.e. column j of the inverse
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def interp_1d(nodes: Sequence[int], values: Sequence[Number]) -> list:
    inv = vandermonde_inverse(nodes)
    vals = [as_fraction(v) for v in values]
    return [sum((row[j] * vals[j] for j in range(len(vals))), Fraction(0)) for row in inv]


def interp_grid(values: Mapping[tuple, Number], variables: Sequence[str], degree_bounds: Sequence[int]) -> MultiPoly:
    """Unique polynomial with the given per-variable degree bounds matching a rectangular grid.

    ``values`` maps integer points (tuples ordered like ``variables``) to exact
    values.  The grid uses, for each axis, the smallest ``bound+1`` distinct
    coordinates present; points outside that grid are ignored here and left to
    callers for verification.
    """
    variables = tuple(variables)
    nv = len(variables)
    if len(degree_bounds) != nv:
        raise ValueError("one degree bound per variable")
    pts = {tuple(p) if isinstance(p, tuple) else (p,): as_fraction(v) for p, v in values.items()}
    axes = []
    for i, b in enumerate(degree_bounds):
        coords = sorted({p[i] for p in pts})
        if len(coords) < b + 1:
            raise SingularGridError(f"axis {variables[i]} has {len(coords)} nodes, need {b + 1}")
        axes.append(coords[: b + 1])
    import itertools

    shape = [len(a) for a in axes]
    tensor = {}
    for idx in itertools.product(*[range(s) for s in shape]):
        p = tuple(axes[i][j] for i, j in enumerate(idx))
        if p not in pts:
            raise SingularGridError(f"grid point {p} missing")
        tensor[idx] = pts[p]
    # transform axis by axis from values to monomial coefficients
    for axis in range(nv):
        inv = vandermonde_inverse(axes[axis])
        new = {}
        others = [range(s) for i, s in enumerate(shape) if i != axis]
        for rest in itertools.product(*others):
            def full(j):
                lst = list(rest)
                lst.insert(axis, j)
                return tuple(lst)

            col = [tensor[full(j)] for j in range(shape[axis])]
            for i, row in enumerate(inv):
                new[full(i)] = sum((r * c for r, c in zip(row, col)), Fraction(0))
        tensor = new
    return MultiPoly(variables, {e: c for e, c in tensor.items() if c})
