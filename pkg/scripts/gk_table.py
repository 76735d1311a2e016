"""Print c(w, chi) and its pole order for every Weyl element of small rank.

    python scripts/gk_table.py --n 2
"""

import argparse

from gspin_cover_kit.exceptional import gk_constant, gk_w0_closed_form, pole_order
from gspin_cover_kit.rootdata import longest_element, weyl_enumerate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--q", type=int, default=None, help="also evaluate at this residue field size")
    args = ap.parse_args()

    n = args.n
    rows = sorted(weyl_enumerate(n), key=lambda w: (w.length(), w.reduced_word()))
    for w in rows:
        c = gk_constant(n, w)
        line = f"{str(w):<28} len={w.length():<2} poles={pole_order(n, w):<2} c={c}"
        if args.q:
            line += f"  [q={args.q}: {c.evaluate(args.q)}]"
        print(line)
    ok = gk_constant(n, longest_element(n)) == gk_w0_closed_form(n)
    print(f"\nw0 matches closed form: {ok}")


if __name__ == "__main__":
    main()
