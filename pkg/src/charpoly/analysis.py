"""Real-root counting, the near-real-rootedness scan, and positivity
certificates for a^lam(n, k)."""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from .charpattern import a_eval, ahat_pair, ak_poly, bj_poly
from .combinat import Partition, partitions
from .exact_arith import MultiPoly, binom, double_factorial

INF = math.inf
T_CAP = 500

# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, ascending coefficient lists


def _trim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def as_coeffs(p) -> list:
    """Ascending Fraction coefficients of a univariate MultiPoly or sequence."""
    if isinstance(p, MultiPoly):
        live = [v for i, v in enumerate(p.vars) if p.degree(v) > 0]
        if len(live) > 1:
            raise ValueError("polynomial is not univariate")
        if not live:
            return _trim([p.coeff((0,) * len(p.vars))])
        return _trim(p.to_univariate(live[0]))
    return _trim([Fraction(c) for c in p])


def u_eval(a: Sequence, x) -> Fraction:
    out = Fraction(0)
    for c in reversed(a):
        out = out * x + c
    return out


def u_deriv(a: Sequence) -> list:
    return _trim([i * a[i] for i in range(1, len(a))])


def u_divmod(a: Sequence, b: Sequence):
    a = [Fraction(c) for c in _trim(a)]
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] -= c * bc
        a = _trim(a)
    return _trim(q), a


def u_gcd(a: Sequence, b: Sequence) -> list:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, u_divmod(a, b)[1]
    if not a:
        return a
    return [c / a[-1] for c in a]


def u_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def squarefree_part(a: Sequence) -> list:
    a = _trim(a)
    if len(a) <= 1:
        return a
    g = u_gcd(a, u_deriv(a))
    return u_divmod(a, g)[0]


def is_squarefree(a: Sequence) -> bool:
    a = _trim(a)
    return len(a) <= 1 or len(u_gcd(a, u_deriv(a))) == 1


def yun(a: Sequence) -> list:
    """Square-free factors [f1, f2, ...] with a = c * prod fi^i."""
    a = _trim(a)
    if len(a) <= 1:
        return []
    out = []
    b = u_deriv(a)
    g = u_gcd(a, b)
    c = u_divmod(a, g)[0]
    d = u_divmod(b, g)[0]
    while len(c) > 1:
        d = [x - y for x, y in _pad(d, u_deriv(c))]
        d = _trim(d)
        f = u_gcd(c, d) if d else c
        out.append(f)
        c = u_divmod(c, f)[0]
        d = u_divmod(d, f)[0] if d else []
    return out


def _pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


def sturm_sequence(a: Sequence) -> list:
    seq = [_trim(a), u_deriv(a)]
    while seq[-1]:
        r = u_divmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign_at(p: list, x) -> int:
    if x == INF:
        return (p[-1] > 0) - (p[-1] < 0)
    if x == -INF:
        s = (p[-1] > 0) - (p[-1] < 0)
        return s if (len(p) - 1) % 2 == 0 else -s
    v = u_eval(p, Fraction(x))
    return (v > 0) - (v < 0)


def _variations(seq: list, x) -> int:
    signs = [s for s in (_sign_at(p, x) for p in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_count(p, a=-INF, b=INF) -> int:
    """Number of distinct real roots in (a, b]."""
    coeffs = as_coeffs(p)
    if not coeffs:
        raise ValueError("zero polynomial has infinitely many roots")
    sq = squarefree_part(coeffs)
    if len(sq) <= 1:
        return 0
    seq = sturm_sequence(sq)
    return _variations(seq, a) - _variations(seq, b)


def real_roots_with_multiplicity(p) -> int:
    return sum(i * sturm_count(f) for i, f in enumerate(yun(as_coeffs(p)), start=1))


def nonreal_pairs(p) -> int:
    coeffs = as_coeffs(p)
    deg = len(coeffs) - 1
    return (deg - real_roots_with_multiplicity(coeffs)) // 2


def root_upper_bound(a: Sequence) -> Fraction:
    """Cauchy bound: every real root is below this value."""
    a = _trim(a)
    lead = abs(a[-1])
    return 1 + max((abs(c) / lead for c in a[:-1]), default=Fraction(0))


# ---------------------------------------------------------------------------
# near-real-rootedness scan


@dataclass
class ScanRow:
    lam: Partition
    k: int
    degree: int
    real_roots: int
    pairs: int
    squarefree: bool


def improved_bound_applies(lam: Partition, k: int) -> bool:
    """Whether a1_hat(n, k) keeps one sign for integer n in [l, k - l0 - 1]."""
    l = sum(lam)
    pair = ahat_pair(lam)
    signs = {(v > 0) - (v < 0) for v in (pair.a1.evaluate((n, k)) for n in range(l, k - pair.l0))}
    signs.discard(0)
    return len(signs) <= 1


def scan_nonreal(size: int, k_max: int, report_improved: bool = False) -> dict:
    """Conjugate-pair counts of A_k^lam for lam of the given size and size <= k <= k_max."""
    if size < 1:
        raise ValueError("size must be at least 1")
    rows = []
    violations = []
    first = None
    for lam in partitions(size):
        for k in range(size, k_max + 1):
            poly = ak_poly(lam, k).poly
            coeffs = as_coeffs(poly)
            if not coeffs:
                rows.append(ScanRow(lam, k, -1, 0, 0, True))
                continue
            real = real_roots_with_multiplicity(coeffs)
            deg = len(coeffs) - 1
            pairs = (deg - real) // 2
            row = ScanRow(lam, k, deg, sturm_count(coeffs), pairs, is_squarefree(coeffs))
            rows.append(row)
            if pairs > size - 1:
                violations.append(row)
            if pairs and (first is None or k < first.k):
                first = row
    out = {"rows": rows, "violations": violations, "first_nonreal": first}
    if report_improved:
        out["improved"] = [
            (r.lam, r.k, r.pairs, (size + 2) // 4)
            for r in rows if r.degree > 0 and improved_bound_applies(r.lam, r.k)
        ]
    return out


# ---------------------------------------------------------------------------
# shifted-quadrant nonnegativity


def _integral_terms(p: MultiPoly) -> dict:
    den = p.content_denominator()
    return {e: int(c * den) for e, c in p.terms.items()}


def _shift_var(terms: dict, idx: int, c: int) -> dict:
    """Replace variable idx by (variable + c)."""
    if c == 0:
        return dict(terms)
    out: dict = {}
    for e, coef in terms.items():
        a = e[idx]
        for i in range(a + 1):
            val = coef * math.comb(a, i) * c ** (a - i)
            if val:
                ne = e[:idx] + (i,) + e[idx + 1:]
                out[ne] = out.get(ne, 0) + val
    return {e: v for e, v in out.items() if v}


def quadrant_terms(p: MultiPoly, t: int, l: int) -> dict:
    """Coefficients of p(s + k' + t + l - 1, k' + t) in (s, k')."""
    terms = _integral_terms(p.with_vars(("n", "k")))
    terms = _shift_var(terms, 0, t + l - 1)
    terms = _shift_var(terms, 1, t)
    out: dict = {}
    for (a, b), coef in terms.items():
        # n -> s + k'
        for i in range(a + 1):
            ne = (i, a - i + b)
            out[ne] = out.get(ne, 0) + coef * math.comb(a, i)
    return {e: v for e, v in out.items() if v}


def nonneg_after_shift(p: MultiPoly, t: int, l: int) -> bool:
    return all(v >= 0 for v in quadrant_terms(p, t, l).values())


def univariate_nonneg_after_shift(p: MultiPoly, t: int) -> bool:
    """All coefficients of p(k' + t) nonnegative."""
    terms = _integral_terms(p)
    return all(v >= 0 for v in _shift_var(terms, 0, t).values())


def minimal_shift(pred, start: int = 0, cap: int = T_CAP):
    """Smallest t in [start, cap] with pred(t), assuming monotonicity; None if cap exceeded."""
    if pred(start):
        return start
    lo, hi = start, start + 1
    while not pred(hi):
        lo = hi
        if hi >= cap:
            return None
        hi = min(cap, 2 * hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def dominance_poly(lam: Partition) -> tuple:
    """(branch, sign polynomials, dominance polynomial) for the main region."""
    l = sum(lam)
    pair = ahat_pair(lam)
    a0, a1 = pair.a0, pair.a1
    n = MultiPoly.var("n", ("n", "k"))
    k = MultiPoly.var("k", ("n", "k"))
    if l % 2 == 0:
        signs = [a0, -a1]
        dom = a0 * a0 * 2 ** (2 * l - 2) - (n - l + 1) * (2 * (n - k) + l + 1) * (2 * k + 1) * a1 * a1 * pair.l0
        return "even", signs, dom
    signs = [-a0, a1]
    dom = k * (2 * (n - l) + 1) * a1 * a1 - (n - k + pair.l1 + 1) * a0 * a0 * (2 ** (2 * l) * l)
    return "odd", signs, dom


def gamma_ratio(lam: Partition, n: int, k: int) -> Fraction:
    """Exact ratio T1/T0 of the fixed factors in the factored formula."""
    l = sum(lam)
    l0, l1 = l // 2, (l - 1) // 2
    return (Fraction(2) ** (l0 - l1) * double_factorial(2 * l0 - 1) / math.factorial(l1)
            * double_factorial(2 * (n - l) + 1) / math.factorial(n - l)
            * math.factorial(n - k + l0) / double_factorial(2 * (n - k + l1) + 1)
            * math.factorial(k) / double_factorial(2 * k - 1))


def gamma_bound_holds(lam: Partition, n: int, k: int) -> bool:
    """Check the squared form of the square-root bound on the ratio at one point."""
    l = sum(lam)
    l0, l1 = l // 2, (l - 1) // 2
    r2 = gamma_ratio(lam, n, k) ** 2
    if l % 2 == 0:
        return r2 <= Fraction(2) ** (2 - 2 * l) * l0 * (n - l + 1) * (2 * (n - k) + l + 1) * (2 * k + 1)
    return r2 >= Fraction(2) ** (-2 * l) * Fraction(k * (2 * (n - l) + 1), l * (n - k + l1 + 1))


# ---------------------------------------------------------------------------
# certificates


@dataclass
class PositivityCertificate:
    lam: Partition
    t: int | None
    branch: str
    t_js: list
    shift_checks: list = field(default_factory=list)
    finite_checks: list = field(default_factory=list)
    status: str = "certified"
    counterexample: tuple | None = None
    revalidation: dict | None = None

    def to_json(self) -> dict:
        d = {
            "lambda": list(self.lam),
            "t": self.t,
            "branch": self.branch,
            "t_js": self.t_js,
            "finite_checks": self.finite_checks,
            "status": self.status,
            "shift_checks": self.shift_checks,
        }
        if self.counterexample is not None:
            d["counterexample"] = {"n": self.counterexample[0], "k": self.counterexample[1],
                                   "value": str(self.counterexample[2])}
        if self.revalidation is not None:
            d["revalidation"] = self.revalidation
        return d

    @classmethod
    def from_json(cls, d: dict) -> "PositivityCertificate":
        cx = d.get("counterexample")
        return cls(tuple(d["lambda"]), d["t"], d["branch"], d["t_js"], d.get("shift_checks", []),
                   d.get("finite_checks", []), d["status"],
                   None if cx is None else (cx["n"], cx["k"], Fraction(cx["value"])), d.get("revalidation"))


def _nonneg_on_ray(poly: MultiPoly, n0: int):
    """Check poly(n) >= 0 for all integers n >= n0; returns (ok, first bad n)."""
    coeffs = as_coeffs(poly)
    if not coeffs:
        return True, None
    if coeffs[-1] < 0:
        # negative for large n; find a witness
        n = max(n0, int(root_upper_bound(coeffs)) + 1)
        return False, n
    if sturm_count(coeffs, n0 - 1, INF) == 0:
        return u_eval(coeffs, n0) >= 0, None if u_eval(coeffs, n0) >= 0 else n0
    top = int(root_upper_bound(coeffs)) + 1
    for n in range(n0, top + 1):
        if u_eval(coeffs, n) < 0:
            return False, n
    return True, None


def positivity_certify(lam: Partition, cap: int = T_CAP) -> PositivityCertificate:
    lam = tuple(lam)
    l = sum(lam)
    if not 1 <= l <= 10:
        raise ValueError("certification supports 1 <= |lambda| <= 10")
    lam1 = lam[0]
    nmin = l + lam1
    branch, signs, dom = dominance_poly(lam)

    def main_ok(t):
        return all(nonneg_after_shift(p, t, l) for p in signs) and nonneg_after_shift(dom, t, l)

    t_main = minimal_shift(main_ok, 1, cap)
    t_js = []
    shift_checks = []
    for j in range(l - 1):
        b = bj_poly(lam, j).poly
        start = max(l - j, 0)
        tj = minimal_shift(lambda t: univariate_nonneg_after_shift(b, t), start, cap)
        t_js.append(tj)
        shift_checks.append({"poly": f"B_{j}", "shift": tj})
    t_js.append(t_main)
    shift_checks.append({"poly": "main", "shift": t_main})
    if any(t is None for t in t_js):
        return PositivityCertificate(lam, None, branch, t_js, shift_checks, [], "search_cap_exceeded")
    t = max(t_js)
    cert = PositivityCertificate(lam, t, branch, t_js, shift_checks)

    def fail(n, k, v):
        cert.status = "counterexample"
        cert.counterexample = (n, k, v)
        return cert

    # zero region k < l
    zero_pts = 0
    for k in range(min(l, t + l)):
        for n in range(max(nmin, k), max(nmin, k) + 3):
            v = a_eval(lam, n, k)
            zero_pts += 1
            if v != 0:
                if v < 0:
                    return fail(n, k, v)
                raise ArithmeticError(f"a^{lam}({n},{k}) = {v} should vanish")
    cert.finite_checks.append({"check": "zero_region", "k": [0, l - 1], "points": zero_pts})

    # (i): n - k = j <= l - 2 for l <= k < t
    pts = 0
    for j in range(l - 1):
        b = bj_poly(lam, j).poly
        for k in range(l, t):
            if j + k < nmin:
                continue
            v = b.evaluate((k,))
            pts += 1
            if v < 0:
                return fail(j + k, k, v / math.factorial(j + k))
    cert.finite_checks.append({"check": "B_j", "j": [0, l - 2], "k": [l, t - 1], "points": pts})

    # (ii): A_k on n >= k + l - 1 for l <= k < t
    ks = 0
    for k in range(l, t):
        n_edge = k + l - 1
        if n_edge >= nmin:
            v = a_eval(lam, n_edge, k)
            if v < 0:
                return fail(n_edge, k, v)
        ok, bad = _nonneg_on_ray(ak_poly(lam, k).poly, max(k + l, nmin))
        if not ok:
            return fail(bad, k, ak_poly(lam, k).poly.evaluate((bad,)))
        ks += 1
    cert.finite_checks.append({"check": "A_k", "k": [l, t - 1], "polys": ks})

    # the square-root bound on the exact factor ratio, sampled
    rng = random.Random(hash(lam) & 0xFFFF)
    gpts = 0
    for _ in range(50):
        k = rng.randint(max(t, 1), max(t, 1) + 40)
        n = k + l - 1 + rng.randint(0, 40)
        if not gamma_bound_holds(lam, n, k):
            raise ArithmeticError(f"ratio bound fails at {(n, k)}")
        gpts += 1
    cert.finite_checks.append({"check": "ratio_bound", "points": gpts})
    return cert


def revalidate(cert: PositivityCertificate, points: int = 200, seed: int = 0, n_max: int = 80) -> dict:
    """Spot-check a^lam(n, k) >= 0 at random points with n >= |lam| + lam_1."""
    lam = cert.lam
    l = sum(lam)
    nmin = l + lam[0]
    rng = random.Random(seed)
    bad = []
    for _ in range(points):
        n = rng.randint(nmin, max(n_max, nmin))
        k = rng.randint(0, n)
        v = a_eval(lam, n, k)
        if v < 0:
            bad.append((n, k, str(v)))
    result = {"points": points, "seed": seed, "negative": bad}
    cert.revalidation = result
    return result
