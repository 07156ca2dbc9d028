"""Compositions, left weak compositions (LWCs) and the refinement order.

An LWC is stored as a plain tuple of nonnegative ints whose last entry is
positive, e.g. ``(0, 0, 3)``.  The empty tuple is the empty composition and
indexes the unit ``M_() = 1``.  The block view groups each run of zeros with
the positive part that closes it::

    (0, 0, 2, 0, 1, 3)  <->  ((2, 2), (1, 1), (0, 3))
"""

from __future__ import annotations

import itertools
import re
from typing import Iterable, Iterator, Sequence

from .errors import ParseError, PreconditionError

Blocks = tuple[tuple[int, int], ...]


def is_lwc(parts: Sequence[int]) -> bool:
    return all(isinstance(p, int) and p >= 0 for p in parts) and (
        len(parts) == 0 or parts[-1] > 0
    )


def is_composition(parts: Sequence[int]) -> bool:
    return all(isinstance(p, int) and p > 0 for p in parts)


def as_lwc(parts: Iterable[int]) -> tuple[int, ...]:
    """Validate and return ``parts`` as an LWC tuple."""
    t = tuple(int(p) for p in parts)
    if any(p < 0 for p in t):
        raise PreconditionError(f"negative part in {t}")
    if t and t[-1] == 0:
        raise PreconditionError(f"last part must be positive: {t}")
    return t


def size(alpha: Sequence[int]) -> int:
    return sum(alpha)


def zero_count(alpha: Sequence[int]) -> int:
    return sum(1 for p in alpha if p == 0)


def blocks(alpha: Sequence[int]) -> Blocks:
    """Split an LWC into ``(zero_run, positive_part)`` pairs."""
    out = []
    zeros = 0
    for p in alpha:
        if p == 0:
            zeros += 1
        else:
            out.append((zeros, p))
            zeros = 0
    if zeros:
        raise PreconditionError(f"not a left weak composition: {tuple(alpha)}")
    return tuple(out)


def from_blocks(bl: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    out: list[int] = []
    for i, s in bl:
        if i < 0 or s < 1:
            raise PreconditionError(f"bad block ({i}, {s})")
        out.extend([0] * i)
        out.append(s)
    return tuple(out)


def descent_set(alpha: Sequence[int]) -> frozenset[int]:
    """Partial sums of a composition, excluding the total."""
    if not is_composition(alpha):
        raise PreconditionError(f"descent_set needs positive parts, got {tuple(alpha)}")
    sums = itertools.accumulate(alpha)
    return frozenset(list(sums)[:-1])


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    """All compositions of ``n`` (just ``()`` for ``n == 0``)."""
    if n == 0:
        yield ()
        return
    for cuts in itertools.product((False, True), repeat=n - 1):
        parts, run = [], 1
        for cut in cuts:
            if cut:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


def refines(alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """True iff ``alpha`` precedes or equals ``beta`` in the extended refinement order.

    Each block ``(j, b)`` of ``beta`` must be matched by at most ``j`` zeros
    followed by positive parts of ``alpha`` summing to ``b``.  Since a
    composition has no zeros, the matching writing of ``alpha`` is forced,
    so a single left-to-right scan decides the relation.
    """
    pos = 0
    n = len(alpha)
    for j, b in blocks(beta):
        z = 0
        while pos < n and alpha[pos] == 0:
            z += 1
            pos += 1
        if z > j:
            return False
        total = 0
        while total < b:
            if pos >= n or alpha[pos] == 0:
                return False
            total += alpha[pos]
            pos += 1
        if total != b:
            return False
    return pos == n


def block_alignment(alpha: Sequence[int], beta: Sequence[int]) -> tuple[int, ...] | None:
    """Zero-run lengths of ``beta`` aligned to the blocks of ``alpha``.

    Returns ``None`` unless ``beta`` refines ``alpha``.
    """
    if not refines(beta, alpha):
        return None
    out = []
    pos = 0
    for _, s in blocks(alpha):
        z = 0
        while beta[pos] == 0:
            z += 1
            pos += 1
        out.append(z)
        total = 0
        while total < s:
            total += beta[pos]
            pos += 1
    return tuple(out)


def refinements_below(alpha: Sequence[int]) -> list[tuple[int, ...]]:
    """Every ``beta`` with ``beta`` refining ``alpha``, each exactly once."""
    per_block = []
    for i, s in blocks(alpha):
        comps = list(compositions(s))
        per_block.append([(0,) * j + c for j in range(i + 1) for c in comps])
    return [tuple(itertools.chain.from_iterable(choice)) for choice in itertools.product(*per_block)]


def lwcs(n: int, max_zeros: int, max_length: int | None = None) -> Iterator[tuple[int, ...]]:
    """All LWCs of size ``n`` with at most ``max_zeros`` zero parts."""
    if n == 0:
        yield ()
        return
    for comp in compositions(n):
        k = len(comp)
        for z in range(max_zeros + 1):
            if max_length is not None and k + z > max_length:
                break
            # weak compositions of z into k slots, one slot before each part
            for bars in itertools.combinations(range(z + k - 1), k - 1):
                runs, prev = [], -1
                for b in bars:
                    runs.append(b - prev - 1)
                    prev = b
                runs.append(z + k - 1 - prev - 1)
                yield from_blocks(zip(runs, comp))


def graded_lex_key(alpha: Sequence[int]) -> tuple:
    """Sort key: size, then length, then parts left to right."""
    return (sum(alpha), len(alpha), tuple(alpha))


_ITEM = re.compile(r"^(\d+)(?:\^(-?\d+))?$")


def parse_lwc(text: str) -> tuple[int, ...]:
    """Parse ``"(0^2,3)"`` style text; ``"()"`` is the empty composition."""
    t = text.strip()
    if t.startswith("(") and t.endswith(")"):
        t = t[1:-1]
    elif "(" in t or ")" in t:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    t = t.strip()
    if not t:
        return ()
    parts: list[int] = []
    for item in t.split(","):
        m = _ITEM.match(item.strip())
        if not m:
            raise ParseError(f"bad part {item.strip()!r} in {text!r}")
        value = int(m.group(1))
        reps = 1 if m.group(2) is None else int(m.group(2))
        if reps < 0:
            raise ParseError(f"negative run length in {text!r}")
        parts.extend([value] * reps)
    if parts and parts[-1] == 0:
        raise ParseError(f"last part must be positive in {text!r}")
    return tuple(parts)


def format_lwc(alpha: Sequence[int]) -> str:
    return "(" + ",".join(str(p) for p in alpha) + ")"
