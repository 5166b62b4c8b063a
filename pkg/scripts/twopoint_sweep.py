"""Random feasible two-point problems: interpolation error and degree against Pick rank.

Usage: python scripts/twopoint_sweep.py --count 2000 --seed 0
"""

import argparse
import cmath
import collections
import math

import numpy as np

from pickpoly.pick import BlaschkeProduct, DiscData, pick_matrix, psd_check, two_point_blaschke


def _disc(rng, radius):
    return complex(radius * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform()))


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--count", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--radius", type=float, default=0.95, help="nodes are drawn from this disc")
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    table = collections.Counter()
    worst = collections.defaultdict(float)
    for k in range(args.count):
        a1, a2 = _disc(rng, args.radius), _disc(rng, args.radius)
        if abs(a1 - a2) < 1e-2:
            continue
        G = BlaschkeProduct(cmath.exp(2j * math.pi * rng.uniform()), tuple(_disc(rng, 0.9) for _ in range(k % 3)))
        b1, b2 = G(a1), G(a2)
        rank = psd_check(pick_matrix(DiscData((a1, a2), (b1, b2)))).rank
        B = two_point_blaschke(a1, a2, b1, b2)
        table[(rank, B.degree)] += 1
        worst[rank] = max(worst[rank], abs(B(a1) - b1), abs(B(a2) - b2))
    print(f"{'rank':>4} {'degree':>6} {'count':>6}")
    for (rank, deg), c in sorted(table.items()):
        print(f"{rank:>4} {deg:>6} {c:>6}")
    for rank in sorted(worst):
        print(f"rank {rank}: worst residual {worst[rank]:.2e}")


if __name__ == "__main__":
    main()
