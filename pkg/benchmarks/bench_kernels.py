"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--n 8]
"""

from __future__ import annotations

import argparse
import timeit

from charpoly.kernels import available_backends

CASES = {
    "perm_statistics": lambda impl, n: impl.perm_statistics(n),
    "chain_cycle_counts": lambda impl, n: impl.chain_cycle_counts((3, 2, 2, 1, 1, 1, 1)),
    "count_compatible_chains": lambda impl, n: impl.count_compatible_chains([1, 3, 5], [2, 2, 6], 3 * n),
}


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--n", type=int, default=8, help="permutation size for perm_statistics")
    args = p.parse_args(argv)

    backends = available_backends()
    if "compiled" not in backends:
        print("compiled extension not built; timing the Python backend only")
    print(f"{'kernel':26s} " + " ".join(f"{name:>12s}" for name in backends) + "    speedup")
    for case, fn in CASES.items():
        results = {}
        outputs = {}
        for name, impl in backends.items():
            outputs[name] = fn(impl, args.n)
            results[name] = min(timeit.repeat(lambda: fn(impl, args.n), number=1, repeat=args.repeat))
        if len({repr(sorted(o.items())) if isinstance(o, dict) else repr(list(o)) for o in outputs.values()}) != 1:
            raise SystemExit(f"{case}: backends disagree")
        cols = " ".join(f"{results[name] * 1e3:10.2f}ms" for name in backends)
        speed = f"{results['python'] / results['compiled']:8.1f}x" if "compiled" in results else ""
        print(f"{case:26s} {cols} {speed}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
