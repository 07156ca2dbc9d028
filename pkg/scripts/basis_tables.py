"""Print the F-to-M and M-to-F transition matrices on finite slices of each degree."""

import argparse

from lwcqsym.basis import transition_matrix
from lwcqsym.compositions import format_lwc


def show(keys, rows) -> None:
    labels = [format_lwc(k) for k in keys]
    width = max(len(s) for s in labels)
    print(" " * width + "  " + " ".join(f"{s:>{width}}" for s in labels))
    for lab, row in zip(labels, rows):
        print(f"{lab:>{width}}  " + " ".join(f"{v:>{width}}" for v in row))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-size", type=int, default=3)
    ap.add_argument("--zero-budget", type=int, default=1)
    args = ap.parse_args()
    for n in range(1, args.max_size + 1):
        for direction in ("FtoM", "MtoF"):
            keys, rows = transition_matrix(n, args.zero_budget, direction)
            print(f"size {n}, at most {args.zero_budget} zeros, {direction} ({len(keys)} x {len(keys)}):")
            show(keys, rows)
            print()


if __name__ == "__main__":
    main()
