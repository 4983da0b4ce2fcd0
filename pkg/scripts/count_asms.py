"""Time the exact enumeration against the closed-form counts."""

import argparse
import time

from sixvertex import closedform as cf
from sixvertex.enumeration import boundary_stats, default_threads


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--nmax", type=int, default=7)
    p.add_argument("--threads", type=int, default=default_threads())
    args = p.parse_args()
    for n in range(1, args.nmax + 1):
        start = time.perf_counter()
        stats = boundary_stats(n, ceiling=max(args.nmax, 8), threads=args.threads)
        elapsed = time.perf_counter() - start
        refined = list(stats.refined)
        ok = stats.total == cf.a_total(n) and refined == [cf.a_refined(n, r) for r in range(1, n + 1)]
        print(f"n={n}  total={stats.total}  refined={refined}  "
              f"{'ok' if ok else 'MISMATCH'}  {elapsed:.2f}s")


if __name__ == "__main__":
    main()
