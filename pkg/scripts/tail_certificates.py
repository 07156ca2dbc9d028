"""Show cutoff, value and certified tail bound for a list of zeta symbols as the tolerance tightens."""

import argparse

from lwcqsym.errors import ToleranceNotReached
from lwcqsym.mzv import parse_symbol, zeta_lwc

DEFAULT = ["2", "3;1", "4;2", "2,2", "1,3", "3,3;1,1", "1,5;1,1", "3,3;2,0"]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("symbols", nargs="*", default=DEFAULT)
    ap.add_argument("--tols", type=float, nargs="+", default=[1e-4, 1e-6, 1e-8, 1e-10])
    args = ap.parse_args()
    for text in args.symbols:
        sym = parse_symbol(text)
        print(sym)
        for tol in args.tols:
            try:
                r = zeta_lwc(sym, tol=tol)
            except ToleranceNotReached as exc:
                print(f"  tol {tol:.0e}: {exc}")
                continue
            print(f"  tol {tol:.0e}: {r.value:.15f}  ±{r.tail_bound:.2e}  cutoff {r.cutoff}")


if __name__ == "__main__":
    main()
