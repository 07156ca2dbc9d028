"""Integer helpers shared across modules."""

from math import comb, factorial


def binomial(p: int, q: int) -> int:
    """``C(p, q)`` with the convention ``C(p, q) = 0`` when ``p < q`` or ``q < 0``."""
    if q < 0 or p < q:
        return 0
    return comb(p, q)


def quasi_shuffle_count(p: int, q: int) -> int:
    """Number of quasi-shuffles of words of lengths ``p`` and ``q``."""
    return sum(
        factorial(p + q - r) // (factorial(r) * factorial(p - r) * factorial(q - r))
        for r in range(min(p, q) + 1)
    )
