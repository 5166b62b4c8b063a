"""Decide synthesized instances and summarize status, rank recovery and timing.

Usage: python scripts/synth_sweep.py --count 200 --seed 1 --selection min-rank
"""

import argparse
import collections
import statistics
import time

from pickpoly.engine import FEASIBLE, DecideConfig, decide
from pickpoly.synth import FIXED_DENOMINATORS, synthesize_batch


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--selection", choices=("min-rank", "first"), default="min-rank")
    ap.add_argument("--generated", action="store_true", help="use the default candidate stream instead of the fixed denominators")
    args = ap.parse_args()

    cands = () if args.generated else FIXED_DENOMINATORS
    cfg = DecideConfig(n=args.n, candidates=cands, selection=args.selection)
    by_degree = collections.defaultdict(lambda: [0, 0, 0])
    times = []
    worst = 0.0
    for s in synthesize_batch(args.count, seed=args.seed, n=args.n):
        t0 = time.perf_counter()
        rep = decide(s.data, cfg)
        times.append(time.perf_counter() - t0)
        row = by_degree[s.rank]
        row[0] += 1
        if rep.status == FEASIBLE:
            row[1] += 1
            row[2] += rep.witness.rank == s.rank
            worst = max(worst, max(rep.residuals))
    print(f"{'degree':>6} {'count':>6} {'feasible':>9} {'rank ok':>8}")
    for deg in sorted(by_degree):
        total, feas, ok = by_degree[deg]
        print(f"{deg:>6} {total:>6} {feas:>9} {ok:>8}")
    print(f"worst residual {worst:.2e}")
    print(f"decide time: median {statistics.median(times) * 1e3:.1f} ms, max {max(times) * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
