"""Tabulate orthogonal partitions above O0 and check that all dominate O1, for n = 1..N."""

import argparse
import time

from gspin_cover_kit import orbits as orb


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--verbose", action="store_true", help="list the partitions above O0")
    args = ap.parse_args()

    start = time.perf_counter()
    for n in range(1, args.max_n + 1):
        rep = orb.check_reduction(n)
        total = len(orb.enumerate_orbits(n))
        v_ok = n < 2 or set(orb.v_orbit(orb.O1(n))) == set(orb.u1_roots(n))
        print(
            f"n={n}: {total:3d} orbits, {len(rep.above_O0):3d} above O0={orb.O0(n)}, "
            f"all >= O1={orb.O1(n)}: {rep.holds}, V_O1 = U1: {v_ok}"
        )
        if args.verbose:
            print("   ", " ".join(str(O) for O in rep.above_O0))
    print(f"done in {time.perf_counter() - start:.2f}s")


if __name__ == "__main__":
    main()
