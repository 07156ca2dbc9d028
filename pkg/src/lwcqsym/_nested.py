"""Nested sums with certified enclosures.

Evaluates ``sum_{n_1 < ... < n_L} prod_l x_{n_l}^{e_l}`` for positive
weights ``x_n`` and nonnegative exponents ``e_l``.  Indices up to ``N`` are
summed by a prefix-sum recursion, one numpy chunk at a time.  What is left
splits exactly as ``sum_j P_j Q_j``: ``P_j`` sums the first ``j`` levels with
indices at most ``N`` (a by-product of the recursion) and ``Q_j`` sums the
remaining levels with indices above ``N``.  Each ``Q_j`` is enclosed by a
model-specific ``tail`` function, which yields a rigorous interval.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ToleranceNotReached

EPS = sys.float_info.epsilon
FIRST_CHUNK = 1024
MAX_CHUNK = 2**16


@dataclass(frozen=True)
class NestedSum:
    value: float
    tail_bound: float
    cutoff: int
    converged: bool
    partial: float

    @property
    def lower(self) -> float:
        return self.value - self.tail_bound

    @property
    def upper(self) -> float:
        return self.value + self.tail_bound


class Engine:
    """Incremental prefix-sum evaluation of one nested sum.

    ``weight(n)`` maps an int64 array of indices to float weights;
    ``tail(exps, N)`` returns ``(lo, hi)`` enclosing the sum of the levels
    ``exps`` over indices strictly above ``N``.
    """

    def __init__(self, exps: Sequence[int], weight: Callable, tail: Callable):
        self.exps = tuple(int(e) for e in exps)
        self.weight = weight
        self.tail = tail
        L = len(self.exps)
        # P[j] with Kahan compensation; P[0] = 1 is the empty prefix
        self.P = [1.0] + [0.0] * L
        self._comp = [0.0] * (L + 1)
        self.N = 0
        self.chunks = 0
        self.widest = 0

    def _chunk(self, a: int, b: int) -> None:
        n = np.arange(a, b, dtype=np.int64)
        x = self.weight(n)
        prev = None
        sums = []
        for level, e in enumerate(self.exps, start=1):
            if prev is None:
                acc = np.full(len(n), self.P[0])
            else:
                acc = np.empty(len(n))
                acc[0] = 0.0
                np.cumsum(prev[:-1], out=acc[1:])
                acc += self.P[level - 1]
            term = acc * x**e if e else acc
            sums.append(float(term.sum()))
            prev = term
        for level, s in enumerate(sums, start=1):
            y = s - self._comp[level]
            t = self.P[level] + y
            self._comp[level] = (t - self.P[level]) - y
            self.P[level] = t
        self.N = b - 1
        self.chunks += 1
        self.widest = max(self.widest, b - a)

    def extend_to(self, N: int) -> None:
        while self.N < N:
            size = min(MAX_CHUNK, max(FIRST_CHUNK, self.N), N - self.N)
            self._chunk(self.N + 1, self.N + 1 + size)

    def partial(self) -> float:
        return self.P[-1] if self.exps else 1.0

    def enclosure(self) -> tuple[float, float]:
        """Value estimate and certified half-width at the current cutoff."""
        L = len(self.exps)
        S = self.partial()
        if L == 0:
            return 1.0, 0.0
        lo = hi = 0.0
        for j in range(L):
            qlo, qhi = self.tail(self.exps[j:], self.N)
            lo += self.P[j] * qlo
            hi += self.P[j] * qhi
        # recursive summation error: in-chunk cumsums plus carries, per level
        rounding = 2 * L * (self.widest + self.chunks + 4) * EPS * (S + hi)
        half = (hi - lo) / 2
        return S + (lo + hi) / 2, half * (1 + 4 * EPS) + rounding

    def run(self, tol: float, max_cutoff: int, strict: bool = True) -> NestedSum:
        if not self.exps:
            return NestedSum(1.0, 0.0, 0, True, 1.0)
        while True:
            step = min(MAX_CHUNK, max(FIRST_CHUNK, self.N))
            self.extend_to(min(self.N + step, max_cutoff))
            value, bound = self.enclosure()
            if bound <= tol:
                return NestedSum(value, bound, self.N, True, self.partial())
            if self.N >= max_cutoff:
                if strict:
                    raise ToleranceNotReached(
                        f"tail bound {bound:.3e} above tolerance {tol:.1e} at cutoff {self.N}"
                    )
                return NestedSum(value, bound, self.N, False, self.partial())


# ------------------------------------------------------------ models


def suffix_excesses(exps: Sequence[int]) -> list[int]:
    """``sum(exps[l:]) - len(exps[l:])`` for every suffix, outermost first."""
    out = []
    acc = 0
    for r, e in enumerate(reversed(exps), start=1):
        acc += e
        out.append(acc - r)
    return out[::-1]


def harmonic_weight(n: np.ndarray) -> np.ndarray:
    return 1.0 / n.astype(np.float64)


def harmonic_tail(exps: Sequence[int], N: int) -> tuple[float, float]:
    """Integral comparison for ``sum_{N < m_1 < ...} prod m_l^{-e_l}``."""
    E = suffix_excesses(exps)
    if min(E) <= 0:
        return 0.0, math.inf
    denom = math.prod(E)
    r = len(exps)
    hi = N ** (-E[0]) / denom if N > 0 else math.inf
    lo = (N + r) ** (-E[0]) / denom
    return lo, hi


def q_weight(q: float) -> Callable:
    lq = math.log(q)
    one_minus_q = -math.expm1(lq)

    def weight(n: np.ndarray) -> np.ndarray:
        nf = n.astype(np.float64)
        return np.exp(nf * lq) * one_minus_q / -np.expm1(nf * lq)

    return weight


def q_tail(q: float) -> Callable:
    lq = math.log(q)
    one_minus_q = -math.expm1(lq)

    def tail(exps: Sequence[int], N: int) -> tuple[float, float]:
        B = list(np.cumsum(list(exps)[::-1]))[::-1]
        if min(B) <= 0:
            return 0.0, math.inf
        W = int(B[0])
        log_g = B[0] * N * lq + sum(b * lq - math.log(-math.expm1(b * lq)) for b in map(int, B))
        g = math.exp(log_g)
        lo = one_minus_q**W * g
        hi = (one_minus_q / -math.expm1((N + 1) * lq)) ** W * g
        return lo, hi

    return tail
