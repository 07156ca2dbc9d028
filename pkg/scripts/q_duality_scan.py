"""Compare the two sides of q-duality with and without the (1-q) rescaling.

Each row shows the scaled residual (the one used for verification) and the
raw residual of the unscaled q-sums.
"""

import argparse
import itertools

from lwcqsym.qmzv import duality_check


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-entry", type=int, default=3)
    ap.add_argument("--max-depth", type=int, default=2)
    ap.add_argument("--q", type=float, nargs="+", default=[0.25, 0.5, 0.75])
    ap.add_argument("--tol", type=float, default=1e-8)
    args = ap.parse_args()
    entries = range(1, args.max_entry + 1)
    print(f"{'s':>8} {'t':>8} {'q':>5}  {'scaled':>10}  {'raw':>10}  verified  raw equal")
    for k in range(1, args.max_depth + 1):
        for s in itertools.product(entries, repeat=k):
            for t in itertools.product(entries, repeat=k):
                for q in args.q:
                    rep = duality_check(s, t, q, args.tol)
                    d = rep.details
                    print(
                        f"{','.join(map(str, s)):>8} {','.join(map(str, t)):>8} {q:>5}  "
                        f"{rep.residual:>10.2e}  {d['raw_residual']:>10.2e}  {str(rep.verified):>8}  {d['raw_verified']}"
                    )


if __name__ == "__main__":
    main()
