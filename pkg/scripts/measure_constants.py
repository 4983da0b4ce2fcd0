"""Measure the constants the identities leave undetermined.

* the union-symmetry constant (P against f times the pairwise sines), per n
* the constant relating the double generating function to (H G - H G)/(t - s)
* the ratio f_closed / product form, per n
* the counting/signed ratio of Z at eta = 2pi/3
"""

import argparse
import math

import numpy as np

from sixvertex import closedform as cf
from sixvertex.enumeration import brute_z
from sixvertex.model import ETA_CUBE, WeightConvention, random_config
from sixvertex.rootuni import union_constant


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--nmax", type=int, default=5)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    rng = np.random.default_rng(args.seed)

    print("n  union constant (mean, spread over configs)")
    for n in range(1, args.nmax + 1):
        vals = np.array([union_constant(random_config(rng, n, ETA_CUBE)).mean()
                         for _ in range(args.trials)])
        spread = np.max(np.abs(vals - vals.mean())) / abs(vals.mean())
        print(f"{n}  {vals.mean():.12g}  {spread:.1e}")

    print("\nn  double generating-function constant")
    for n in range(1, min(args.nmax, 6) + 1):
        print(f"{n}  {cf.double_gen_check(n).details['const']}")

    print("\nn  f_closed / product form (mean, spread)")
    samples = np.linspace(0.05, 1.0, 20)
    for n in range(1, args.nmax + 1):
        mean, spread = cf.f_closed_vs_product(n, samples)
        print(f"{n}  {mean:.12g}  {spread:.1e}")

    print("\nn  Z_counting / Z_signed at eta = 2pi/3 (min, max over configs)")
    for n in range(1, min(args.nmax, 6) + 1):
        ratios = []
        for _ in range(args.trials):
            cfg = random_config(rng, n, ETA_CUBE)
            ratios.append(brute_z(cfg, WeightConvention.COUNTING) / brute_z(cfg))
        print(f"{n}  {min(ratios):.15g}  {max(ratios):.15g}")


if __name__ == "__main__":
    main()
