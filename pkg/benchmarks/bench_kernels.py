"""Compare the compiled and pure-Python modular kernels.

    python3 benchmarks/bench_kernels.py [--size N] [--repeat R]
"""

import argparse
import random
import time

from cubic27 import kernels


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=300)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    n = args.size
    # rank-deficient integer matrix: product of n x k and k x n factors
    k = n * 2 // 3
    a = [[rng.randint(-9, 9) for _ in range(k)] for _ in range(n)]
    b = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(k)]
    m = [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(n)] for i in range(n)]
    names = ["python"] + (["compiled"] if kernels.BACKEND == "compiled" else [])
    times = {}
    for name in names:
        kern = kernels.backend_for(name)
        p = next(iter(kern.primes()))
        rows = [[x % p for x in r] for r in m]
        t, r = best_of(lambda: kern.rank_mod_p([list(x) for x in rows], p), args.repeat)
        times[name] = t
        print("%-8s rank_mod_p %dx%d  rank %d  %.4f s" % (name, n, n, r, t))
    if len(times) == 2:
        print("speedup %.1fx" % (times["python"] / times["compiled"]))
    else:
        print("compiled backend unavailable")


if __name__ == "__main__":
    main()
