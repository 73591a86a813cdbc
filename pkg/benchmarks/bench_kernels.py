"""Compare the compiled point-counting kernels with the numpy/Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from shaforge import _kernels_py as fallback
from shaforge.intarith import primes_up_to

try:
    from shaforge import _kernels as compiled
except ImportError:
    compiled = None


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def cases():
    # y^2 + y = x^3 - x^2 - 10x - 20 in both coordinate systems
    b2, b4, b6 = -4, -20, -79
    A, B = -27 * 496, -54 * 20008
    big = primes_up_to(70000)
    batch = primes_up_to(200000)
    batch = batch[batch > 11][:2000]
    yield "exhaustive p=65521", lambda k: k.count_exhaustive(65521, b2 % 65521, b4 % 65521, b6 % 65521)
    yield "exhaustive 200 primes < 70000", lambda k: [
        k.count_exhaustive(p, b2 % p, b4 % p, b6 % p) for p in big[-200:].tolist()
    ]
    yield "bsgs p=1000003", lambda k: k.count_bsgs(1000003, A % 1000003, B % 1000003)
    yield "bsgs p=2147483647", lambda k: k.count_bsgs(2147483647, A % 2147483647, B % 2147483647)

    def batch_run(k):
        cols = [np.array([v % p for p in batch.tolist()], dtype=np.int64) for v in (b2, b4, b6, A, B)]
        return k.ap_good_batch(batch, *cols, 1 << 16)

    yield "ap_good_batch 2000 primes", batch_run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled is None:
        print("compiled kernels not built; run: python3 setup.py build_ext --inplace")
    print(f"{'case':<34}{'fallback s':>12}{'compiled s':>12}{'speedup':>9}")
    for name, fn in cases():
        t_py, out_py = best_of(lambda: fn(fallback), args.repeat)
        if compiled is None:
            print(f"{name:<34}{t_py:>12.4f}{'-':>12}{'-':>9}")
            continue
        t_c, out_c = best_of(lambda: fn(compiled), args.repeat)
        same = np.array_equal(np.asarray(out_py), np.asarray(out_c))
        flag = "" if same else "  MISMATCH"
        print(f"{name:<34}{t_py:>12.4f}{t_c:>12.4f}{t_py / t_c:>8.1f}x{flag}")


if __name__ == "__main__":
    main()
