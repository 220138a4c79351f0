"""Command-line interface: ``charpoly <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import ENGINE_VERSION, __version__
from .cache import Cache, canonical_dumps, resolve_dir
from .exact_arith import fraction_to_str


class UsageError(Exception):
    """Bad user input; exit code 2."""


class CheckFailure(Exception):
    """A verification failed; exit code 1 with a JSON diagnostic."""

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.details = details or {}


def parse_partition(text: str) -> tuple:
    text = text.strip()
    if text in ("", "0", "()", "empty"):
        return ()
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"bad partition {text!r}: expected comma-separated integers")
    if any(p <= 0 for p in parts) or list(parts) != sorted(parts, reverse=True):
        raise UsageError(f"bad partition {text!r}: parts must be positive and non-increasing")
    return parts


def _common(parser: argparse.ArgumentParser, top: bool):
    d = None if top else argparse.SUPPRESS
    parser.add_argument("--cache-dir", default=d, help="artifact cache directory (env CHARPOLY_CACHE overrides)")
    parser.add_argument("--trunc", type=int, default=d, help="series truncation order")
    parser.add_argument("--format", choices=("json", "table"), default="table" if top else d)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="charpoly", description="Character-weighted increasing-pattern statistics.")
    p.add_argument("--version", action="version", version=f"charpoly {__version__}")
    _common(p, True)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        _common(sp, False)
        return sp

    sp = add("ahat", "polynomials a0_hat, a1_hat for a partition")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--json", dest="json_out", help="also write the artifact to this file")

    sp = add("eval", "exact value a^lambda(n, k)")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)

    sp = add("akpoly", "the polynomial A_k^lambda(n)")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--count-roots", action="store_true")

    sp = add("bj", "the polynomial B_j^lambda(k)")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--j", type=int, required=True)

    sp = add("positivity", "positivity certificate for a partition")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--points", type=int, default=200, help="random revalidation points")

    sp = add("scan", "conjugate-pair counts of A_k^lambda")
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--kmax", type=int, required=True)

    sp = add("expected", "expected value of f(pi) N_k(pi) over S_n")
    sp.add_argument("--stat", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)

    sp = add("oracle-check", "compare the chain-type formula with brute force")
    sp.add_argument("--lambda-max-size", type=int, default=4)
    sp.add_argument("--nmax", type=int, default=8)

    sp = add("ptau", "the polynomial P^tau for a chain type")
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--mu", default="", help="chain sizes, comma separated")

    sp = add("selftest", "run the acceptance suite")
    sp.add_argument("--extended", action="store_true", help="include positivity sizes 6-10")
    return p


# ---------------------------------------------------------------------------
# output helpers


def _emit(args, payload: dict, table_lines: list):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in table_lines:
            print(line)


def _cache(args) -> Cache:
    return Cache(resolve_dir(args.cache_dir))


# ---------------------------------------------------------------------------
# subcommands


def cmd_ahat(args):
    from .charpattern import AhatPair, ahat_pair
    lam = parse_partition(args.lam)
    if not lam:
        raise UsageError("ahat needs |lambda| >= 1")
    payload = _cache(args).fetch("ahat", {"lambda": list(lam)},
                                 lambda: ahat_pair(lam, args.trunc).to_json(), args.trunc)
    pair = AhatPair.from_json(payload)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(canonical_dumps(payload))
    _emit(args, payload, [f"lambda = {lam}", f"a0_hat = {pair.a0}", f"a1_hat = {pair.a1}"])


def cmd_eval(args):
    from .charpattern import a_eval
    lam = parse_partition(args.lam)
    if args.n < 0 or args.k < 0:
        raise UsageError("n and k must be nonnegative")
    v = a_eval(lam, args.n, args.k)
    _emit(args, {"lambda": list(lam), "n": args.n, "k": args.k, "value": fraction_to_str(v)},
          [fraction_to_str(v)])


def cmd_akpoly(args):
    from .analysis import as_coeffs, is_squarefree, nonreal_pairs, sturm_count
    from .charpattern import ak_poly
    from .exact_arith import MultiPoly
    lam = parse_partition(args.lam)
    if args.k < 0:
        raise UsageError("k must be nonnegative")
    params = {"lambda": list(lam), "k": args.k}
    payload = _cache(args).fetch("akpoly", params, lambda: ak_poly(lam, args.k).to_json())
    poly = MultiPoly.from_json(payload["poly"])
    out = dict(payload)
    lines = [f"A_{args.k}^{lam}(n) = {poly}"]
    if args.count_roots:
        c = as_coeffs(poly)
        if not c:
            out["roots"] = {"degree": None, "zero": True}
            lines.append("identically zero")
        else:
            info = {"degree": len(c) - 1, "real_roots": sturm_count(c), "squarefree": is_squarefree(c),
                    "nonreal_pairs": nonreal_pairs(c)}
            out["roots"] = info
            lines.append(f"degree {info['degree']}, real roots {info['real_roots']}, "
                         f"squarefree {info['squarefree']}, non-real pairs {info['nonreal_pairs']}")
    _emit(args, out, lines)


def cmd_bj(args):
    from .charpattern import bj_poly
    lam = parse_partition(args.lam)
    if not lam or args.j < 0:
        raise UsageError("bj needs |lambda| >= 1 and j >= 0")
    b = bj_poly(lam, args.j)
    _emit(args, b.to_json(), [f"B_{args.j}^{lam}(k) = {b.poly}"])


def cmd_positivity(args):
    from .analysis import PositivityCertificate, positivity_certify, revalidate
    lam = parse_partition(args.lam)
    if not 1 <= sum(lam) <= 10:
        raise UsageError("positivity supports 1 <= |lambda| <= 10")

    def compute():
        cert = positivity_certify(lam)
        if cert.status == "certified":
            revalidate(cert, args.points)
        return cert.to_json()

    payload = _cache(args).fetch("cert", {"lambda": list(lam), "points": args.points}, compute)
    cert = PositivityCertificate.from_json(payload)
    lines = [f"lambda = {lam}: {cert.status}, t = {cert.t} ({cert.branch} branch), t_j = {cert.t_js}"]
    _emit(args, payload, lines)
    if cert.status == "counterexample":
        raise CheckFailure("negative value found", payload)
    if cert.revalidation and cert.revalidation["negative"]:
        raise CheckFailure("revalidation found negative values", payload)


def cmd_scan(args):
    from .analysis import scan_nonreal
    if args.size < 1 or args.kmax < args.size:
        raise UsageError("need size >= 1 and kmax >= size")
    res = scan_nonreal(args.size, args.kmax)
    rows = [{"lambda": list(r.lam), "k": r.k, "degree": r.degree, "real_roots": r.real_roots,
             "pairs": r.pairs} for r in res["rows"]]
    first = res["first_nonreal"]
    payload = {"size": args.size, "kmax": args.kmax, "rows": rows,
               "first_nonreal": None if first is None else {"lambda": list(first.lam), "k": first.k,
                                                            "pairs": first.pairs},
               "bound_violations": len(res["violations"])}
    lines = ["lambda          k  deg  real  pairs"]
    lines += [f"{str(r.lam):14s} {r.k:3d} {r.degree:4d} {r.real_roots:5d} {r.pairs:6d}" for r in res["rows"]]
    lines.append("first non-real-rooted: " + ("none" if first is None else f"{first.lam} at k={first.k}"))
    _emit(args, payload, lines)
    if res["violations"]:
        raise CheckFailure("conjugate-pair bound violated", {"violations": [list(r.lam) for r in res["violations"]]})


def cmd_expected(args):
    from .charpattern import expected_value
    from .combinat import parse_statistic
    from .expr import ExpressionError
    try:
        f = parse_statistic(args.stat)
    except (ExpressionError, ValueError) as exc:
        raise UsageError(f"bad statistic: {exc}")
    v = expected_value(f, args.n, args.k)
    _emit(args, {"stat": args.stat, "n": args.n, "k": args.k, "value": fraction_to_str(v)}, [fraction_to_str(v)])


def cmd_oracle_check(args):
    from .acceptance import check_oracle
    if args.nmax > 10:
        raise UsageError("brute force is capped at n = 10")
    ok, detail = check_oracle(args.lambda_max_size, args.nmax)
    _emit(args, {"ok": ok, "detail": detail}, [("OK " if ok else "FAIL ") + detail])
    if not ok:
        raise CheckFailure("oracle mismatch", {"detail": detail})


def cmd_ptau(args):
    from .chains import chain_type
    from .ptau import p_tau
    try:
        mu = tuple(int(x) for x in args.mu.split(",") if x.strip())
    except ValueError:
        raise UsageError("mu must be comma-separated integers")
    if args.rank < 0 or any(m <= 0 for m in mu):
        raise UsageError("rank must be nonnegative and chain sizes positive")
    tau = chain_type(args.rank, mu)
    payload = _cache(args).fetch("ptau", {"rank": tau.rank, "mu": list(tau.mu)},
                                 lambda: {"tau": {"rank": tau.rank, "mu": list(tau.mu)},
                                          "poly": p_tau(tau).to_json()})
    from .exact_arith import MultiPoly
    _emit(args, payload, [f"P^{tau.to_str()} = {MultiPoly.from_json(payload['poly'])}"])


def cmd_selftest(args):
    from .acceptance import run_all
    results = run_all(extended=args.extended, echo=print)
    failed = [r.number for r in results if not r.passed]
    if failed:
        raise CheckFailure("acceptance failures", {"criteria": failed})


COMMANDS = {
    "ahat": cmd_ahat, "eval": cmd_eval, "akpoly": cmd_akpoly, "bj": cmd_bj,
    "positivity": cmd_positivity, "scan": cmd_scan, "expected": cmd_expected,
    "oracle-check": cmd_oracle_check, "ptau": cmd_ptau, "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    from .charpattern import VerificationError
    from .ptau import InternalConsistencyError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"charpoly: error: {exc}", file=sys.stderr)
        return 2
    except CheckFailure as exc:
        print(json.dumps({"error": str(exc), "details": exc.details, "engine": ENGINE_VERSION}, default=str),
              file=sys.stderr)
        return 1
    except (VerificationError, InternalConsistencyError) as exc:
        details = getattr(exc, "details", {})
        print(json.dumps({"error": str(exc), "details": details, "engine": ENGINE_VERSION}, default=str),
              file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
