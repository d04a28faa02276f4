"""Side-by-side latency of the numba kernels and their numpy fallbacks.

Usage:
    python3 benchmarks/compare_backends.py [--vocab 131072] [--window 512]
        [--buffer 32] [--iterations 200]

Both backends produce bit-identical penalty vectors (asserted here on a
sample context before timing); only speed differs.
"""

import argparse

import numpy as np

from lzpenalty import LzPenaltyConfig, penalty_vector_for_tokens, run_bench
from lzpenalty.backends import get_kernels


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--vocab", type=int, default=131072)
    parser.add_argument("--window", type=int, default=512)
    parser.add_argument("--buffer", type=int, default=32)
    parser.add_argument("--iterations", type=int, default=200)
    args = parser.parse_args()

    backends = ["numpy"]
    try:
        get_kernels("numba")
        backends.insert(0, "numba")
    except ImportError:
        print("numba not importable; timing the numpy fallback only")

    config = LzPenaltyConfig(window_capacity=args.window,
                             buffer_capacity=args.buffer)
    rng = np.random.default_rng(0)
    ctx = rng.integers(0, args.vocab, args.window + args.buffer + 8)
    if len(backends) == 2:
        same = np.array_equal(
            penalty_vector_for_tokens(ctx, args.vocab, config, backend="numba"),
            penalty_vector_for_tokens(ctx, args.vocab, config, backend="numpy"),
        )
        print(f"backends bit-identical on sample context: {same}")
        assert same

    print(f"{'backend':<8} {'matcher':<8} {'median_us':>10} {'p99_us':>10} "
          f"{'overhead_pct':>12}")
    for backend in backends:
        for matcher in ("indexed", "naive"):
            row = run_bench(
                [args.vocab], [args.window], args.buffer,
                iterations=args.iterations, matcher=matcher, backend=backend,
            )[0]
            print(f"{backend:<8} {matcher:<8} {row['median_us']:>10.1f} "
                  f"{row['p99_us']:>10.1f} {row['overhead_pct']:>12.1f}")


if __name__ == "__main__":
    main()
