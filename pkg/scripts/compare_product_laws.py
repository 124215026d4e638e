"""Tally where the printed product and inverse laws agree with the derived ones.

Usage: python scripts/compare_product_laws.py [--window N]

For every ordered pair from the default 320-point grid the two product laws
are compared parameter by parameter; disagreements are bucketed by the
(xi, eps) classes of the factors. With --window, the first disagreeing pair
is also checked as maps on the window so the printed law's result is shown
to be a different automorphism, not another name for the same one.
"""

import argparse
from collections import Counter

from r2k.algebra import Algebra
from r2k.automorphisms import (aut_compose, aut_inverse, automorphism_grid, compose_paper,
                               inverse_paper, oracle_mismatch)
from r2k.gamma import GammaEmbedding


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--window", type=int, default=3)
    args = ap.parse_args()

    grid = automorphism_grid()
    by_class = Counter()
    fields = Counter()
    first = None
    for p1 in grid:
        for p2 in grid:
            d, q = aut_compose(p1, p2), compose_paper(p1, p2)
            if d == q:
                continue
            by_class[(p1.xi, p1.eps, p2.xi, p2.eps)] += 1
            for name in ("f", "a", "b"):
                if getattr(d, name) != getattr(q, name):
                    fields[name] += 1
            first = first or (p1, p2, d, q)

    total = len(grid) ** 2
    print(f"product law: {sum(by_class.values())}/{total} pairs disagree")
    print("  by (xi1, eps1, xi2, eps2):")
    for k in sorted(by_class):
        print(f"    {k}: {by_class[k]}")
    print(f"  by component: {dict(sorted(fields.items()))}")

    inv = Counter((p.xi, p.eps) for p in grid if aut_inverse(p) != inverse_paper(p))
    print(f"inverse law: {sum(inv.values())}/{len(grid)} disagree, by (xi, eps): {dict(sorted(inv.items()))}")

    if first:
        alg = Algebra(GammaEmbedding.rational(1))
        p1, p2, d, q = first
        print(f"first disagreement: {p1} o {p2}")
        print(f"  derived: {d}  printed: {q}")
        syms = alg.window(args.window)
        for tag, r in (("derived", d), ("printed", q)):
            bad = oracle_mismatch(alg, p1, p2, r, syms)
            print(f"  {tag} vs composite on N={args.window}: "
                  + ("agree" if bad is None else f"differ at {bad[0]}"))


if __name__ == "__main__":
    main()
