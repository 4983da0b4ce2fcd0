"""Run every verification suite for a range of n and print a status table."""

import argparse

from sixvertex.verify import SUITES, run_suite


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--nmax", type=int, default=5)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    print("suite        " + "  ".join(f"n={n:<8}" for n in range(1, args.nmax + 1)))
    for suite in SUITES:
        cells = []
        for n in range(1, args.nmax + 1):
            rep = run_suite(suite, n, trials=args.trials, seed=args.seed)
            res = rep.max_residual
            tag = res if isinstance(res, str) else f"{res:.0e}"
            cells.append(f"{rep.status[0]}:{tag:<8}")
        print(f"{suite:<12} " + "  ".join(cells))


if __name__ == "__main__":
    main()
