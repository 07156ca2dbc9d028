"""Stuffle, shuffle and double shuffle forms of zeta(a;m) zeta(b;n), checked numerically."""

import argparse

from lwcqsym.mzv import double_shuffle_relation, shuffle_relation, stuffle_relation, verify


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-a", type=int, default=3)
    ap.add_argument("-m", type=int, default=1)
    ap.add_argument("-b", type=int, default=3)
    ap.add_argument("-n", type=int, default=1)
    ap.add_argument("--tol", type=float, default=1e-5)
    args = ap.parse_args()
    for make in (stuffle_relation, shuffle_relation, double_shuffle_relation):
        rel = make(args.a, args.b, args.m, args.n)
        print(verify(rel, tol=args.tol).format())
        print()


if __name__ == "__main__":
    main()
