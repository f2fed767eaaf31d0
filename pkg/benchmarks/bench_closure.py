"""Time the compiled closure kernel against the pure-Python fallback.

Both implementations run the same randomized stream of constraint
insertions with periodic snapshot/restore, and the final distance tables
are checksummed to confirm they agree before timings are reported.

Usage: python3 benchmarks/bench_closure.py [--dim 24] [--systems 40] [--adds 300]
"""

import argparse
import random
import time

from troprec import _closure
from troprec._closure_py import BIG, Closure as PyClosure

try:
    from troprec._closure_cy import Closure as CyClosure
except ImportError:
    CyClosure = None


def workload(make, dim, systems, adds, seed):
    rng = random.Random(seed)
    checksum = 0
    t0 = time.perf_counter()
    for _ in range(systems):
        c = make(dim)
        snap = None
        for k in range(adds):
            u = rng.randrange(dim)
            v = rng.randrange(dim)
            if u == v:
                continue
            c.add(u, v, rng.randint(-8, 30), rng.random() < 0.3)
            if k % 60 == 20:
                snap = c.snapshot()
            elif k % 60 == 50 and snap is not None:
                c.restore(snap)
        for i in range(dim):
            for j in range(dim):
                d = c.dist(i, j)
                if d is not None:
                    checksum += d[0] * 3 + d[1]
    return time.perf_counter() - t0, checksum


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--dim", type=int, default=24)
    ap.add_argument("--systems", type=int, default=40)
    ap.add_argument("--adds", type=int, default=300)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    print("selected backend: %s" % _closure.BACKEND)
    py_t, py_sum = workload(PyClosure, args.dim, args.systems, args.adds, args.seed)
    print("python : %8.3f s" % py_t)
    if CyClosure is None:
        print("cython : not built (pip install -e . --no-build-isolation)")
        return
    cy_t, cy_sum = workload(CyClosure, args.dim, args.systems, args.adds, args.seed)
    if cy_sum != py_sum:
        raise SystemExit(
            "checksum mismatch: python %d vs cython %d" % (py_sum, cy_sum)
        )
    print("cython : %8.3f s" % cy_t)
    print("speedup: %8.2fx" % (py_t / cy_t))


if __name__ == "__main__":
    main()
