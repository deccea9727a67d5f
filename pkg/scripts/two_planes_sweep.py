"""For the scattered set {(x, x^q)} on PG(1, q^3): count, for each point of the
plane pi, the planes through it with the same linear set.

    python3 scripts/two_planes_sweep.py --q 5 7
"""
import argparse
import collections
import time

from fieldred import linset as ls
from fieldred.reduction import make_context


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3, 5])
    ap.add_argument("--budget", type=int, default=10 ** 8)
    args = ap.parse_args()
    for q in args.q:
        t0 = time.perf_counter()
        ctx = make_context(2, 3, q)
        L = ls.LinearSet(ctx, ls.scattered_rank3(ctx))
        counts = ls.planes_through_points(L, args.budget)
        dist = collections.Counter(counts.values())
        print(f"q={q}: |B(pi)|={L.size} scattered={L.is_scattered()} "
              f"planes-per-point distribution={dict(sorted(dist.items()))} "
              f"({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
