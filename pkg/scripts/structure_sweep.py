"""Time the structure audit (grading, super-antisymmetry, Jacobi) over windows.

Usage: python scripts/structure_sweep.py [--max-window N] [--workers K]
"""

import argparse
import time

from r2k.algebra import Algebra, structure_audit
from r2k.gamma import GammaEmbedding


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-window", type=int, default=5)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    cases = [("rational 1", GammaEmbedding.rational(1), range(1, args.max_window + 1)),
             ("rational 1/2", GammaEmbedding.rational("1/2"), range(1, args.max_window + 1)),
             ("generic r=2", GammaEmbedding.generic(2), range(1, min(args.max_window, 2) + 1))]
    print(f"{'embedding':<14}{'N':>3}{'symbols':>9}{'triples':>10}{'failures':>9}{'seconds':>9}")
    for name, emb, windows in cases:
        alg = Algebra(emb)
        for n in windows:
            t0 = time.perf_counter()
            rep = structure_audit(alg, n, workers=args.workers)
            dt = time.perf_counter() - t0
            fails = sum(r.failures for r in rep.records.values())
            print(f"{name:<14}{n:>3}{len(alg.window(n)):>9}{rep['structure.jacobi'].count:>10}"
                  f"{fails:>9}{dt:>9.2f}")


if __name__ == "__main__":
    main()
