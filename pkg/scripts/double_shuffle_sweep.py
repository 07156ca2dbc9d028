"""Verify the double shuffle relation over a grid of (a, m, b, n) and print a summary table."""

import argparse
import time

from lwcqsym.mzv import double_shuffle_relation, verify


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-weight", type=int, default=7, help="largest a and b")
    ap.add_argument("--max-zeros", type=int, default=2, help="largest m and n")
    ap.add_argument("--tol", type=float, default=1e-6)
    args = ap.parse_args()
    print(f"{'a':>2} {'m':>2} {'b':>2} {'n':>2}  {'terms':>5}  {'residual':>10}  {'tails':>10}  ok")
    failures = 0
    start = time.perf_counter()
    for a in range(2, args.max_weight + 1):
        for b in range(a, args.max_weight + 1):
            for m in range(0, min(args.max_zeros, a - 2) + 1):
                for n in range(0, min(args.max_zeros, b - 2) + 1):
                    rel = double_shuffle_relation(a, b, m, n)
                    rep = verify(rel, tol=args.tol)
                    failures += not rep.verified
                    terms = len(rel.lhs) + len(rel.rhs)
                    print(f"{a:>2} {m:>2} {b:>2} {n:>2}  {terms:>5}  {rep.residual:>10.2e}  {rep.tail_bound:>10.2e}  {rep.verified}")
    print(f"{failures} failures in {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
