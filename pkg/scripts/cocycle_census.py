"""Census of the torus cocycle: sign distribution, commutator kernel size and cocycle check per (p, n)."""

import argparse
from collections import Counter

from gspin_cover_kit import covertorus as ct
from gspin_cover_kit.localfield import LocalField
from gspin_cover_kit.subgroups import brute_centralizer, torus_universe


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5])
    ap.add_argument("--max-n", type=int, default=2)
    args = ap.parse_args()

    for p in args.primes:
        F = LocalField(p)
        for n in range(0, args.max_n + 1):
            S = ct.sigma_table(F, n, lambda a, b: ct.sigma_torus(F, a, b))
            signs = Counter(S.flatten().tolist())
            U = torus_universe(F, n)
            center = brute_centralizer(F, U, n)
            rep = ct.verify_cocycle(F, n)
            print(
                f"p={p} n={n}: sigma=+1 on {signs[1]}, -1 on {signs[-1]} class pairs; "
                f"center of cover has {len(center)}/{len(U)} classes; cocycle ok: {rep.passed}"
            )


if __name__ == "__main__":
    main()
