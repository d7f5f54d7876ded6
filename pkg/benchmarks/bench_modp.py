"""Compare the jitted mod-p rank kernel against the pure numpy fallback.

Run:  python3 benchmarks/bench_modp.py [n_rows] [n_cols] [p]
"""

import sys
import time

import numpy as np


def bench(nrows=400, ncols=400, p=10007, repeats=3, seed=11):
    rng = np.random.default_rng(seed)
    dense = rng.integers(0, p, size=(nrows, ncols), dtype=np.int64)

    from coarsehom import _modp

    # warm the JIT (or do nothing on the fallback path)
    _modp.rank_mod(dense[:8, :8].copy(), p)

    results = {}
    for name, fn in [("active backend", _modp.rank_mod), ("numpy fallback", _modp._rank_mod_numpy)]:
        best = None
        rank = None
        for _ in range(repeats):
            t0 = time.perf_counter()
            rank = fn(dense.copy(), p)
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        results[name] = (rank, best)
    return results


def main(argv):
    nrows = int(argv[1]) if len(argv) > 1 else 400
    ncols = int(argv[2]) if len(argv) > 2 else 400
    p = int(argv[3]) if len(argv) > 3 else 10007
    results = bench(nrows, ncols, p)
    print(f"rank of a random {nrows} x {ncols} matrix mod {p}:")
    for name, (rank, best) in results.items():
        print(f"  {name:16s} rank {rank}  best of 3: {best * 1000:.1f} ms")
    ranks = {r for r, _ in results.values()}
    if len(ranks) != 1:
        print("BACKENDS DISAGREE", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
