"""Truncated power series in x_0, x_1, ..., x_N: the independent oracle.

A monomial is a tuple of ``(var, exp)`` pairs sorted by variable with every
exponent positive; ``()`` is the constant monomial.  Series carry the
variable count ``N`` and the degree cap ``D``; variable ``0`` is the extra
``x_0`` used by the Mbar component.

Every expansion here enumerates index chains directly; nothing is derived
from the algebraic product formulas under test.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping, Sequence

import numpy as np

from .compositions import as_lwc, blocks
from .errors import BudgetExceeded, ParseError, PreconditionError

Monomial = tuple[tuple[int, int], ...]

# rows of nondecreasing maps kept in memory at once by gamma_P
ENUMERATION_BUDGET = 5 * 10**6


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_from_exponents(exps: Sequence[int], offset: int = 0) -> Monomial:
    return tuple((i + offset, int(e)) for i, e in enumerate(exps) if e)


@dataclass(frozen=True)
class TruncatedSeries:
    """Polynomial in ``x_0..x_N`` with all terms of degree above ``D`` discarded."""

    N: int
    D: int
    terms: Mapping[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.N < 1 or self.D < 0:
            raise PreconditionError(f"bad truncation N={self.N}, D={self.D}")
        clean = {}
        for m, c in self.terms.items():
            c = Fraction(c)
            if not c:
                continue
            if mono_degree(m) > self.D:
                continue
            if any(v > self.N or v < 0 for v, _ in m):
                raise PreconditionError(f"variable index out of range in {m}")
            clean[m] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def constant(cls, c, N: int, D: int) -> "TruncatedSeries":
        return cls(N, D, {(): Fraction(c)})

    @classmethod
    def variable(cls, var: int, N: int, D: int) -> "TruncatedSeries":
        return cls(N, D, {((var, 1),): Fraction(1)})

    def _check(self, other: "TruncatedSeries") -> None:
        if (self.N, self.D) != (other.N, other.D):
            raise PreconditionError(
                f"mismatched truncations ({self.N},{self.D}) and ({other.N},{other.D})"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.N, self.D) == (other.N, other.D) and self.terms == other.terms

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return TruncatedSeries(self.N, self.D, out)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.N, self.D, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def scale(self, c) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries(self.N, self.D, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return multiply(self, other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def to_json_obj(self) -> list[dict]:
        items = sorted(self.terms.items(), key=lambda kv: (mono_degree(kv[0]), kv[0]))
        return [
            {"monomial": [list(p) for p in m], "coeff": f"{c.numerator}/{c.denominator}"}
            for m, c in items
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text: str, N: int, D: int) -> "TruncatedSeries":
        try:
            data = json.loads(text)
            terms = {tuple((int(v), int(e)) for v, e in d["monomial"]): Fraction(d["coeff"]) for d in data}
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"bad series JSON: {exc}") from exc
        return cls(N, D, terms)


def multiply(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Exact product, re-truncated at degree ``D``."""
    f._check(g)
    out: dict = {}
    for m1, c1 in f.terms.items():
        d1 = mono_degree(m1)
        for m2, c2 in g.terms.items():
            if d1 + mono_degree(m2) > f.D:
                continue
            m = mono_mul(m1, m2)
            out[m] = out.get(m, 0) + c1 * c2
    return TruncatedSeries(f.N, f.D, out)


def specialize(f: TruncatedSeries, values: Mapping[int, object] | Sequence):
    """Evaluate ``f`` at ``x_v = values[v]``.

    Fractions and ints give an exact result; floats give a float.
    """
    total = 0
    for m, c in f.terms.items():
        term = c
        for v, e in m:
            try:
                x = values[v]
            except (KeyError, IndexError):
                raise PreconditionError(f"no value given for x_{v}") from None
            term = term * x**e
        total = total + term
    return total


def _degree_check(alpha, D: int) -> None:
    if sum(alpha) > D:
        raise PreconditionError(f"|{tuple(alpha)}| = {sum(alpha)} exceeds degree cap {D}")


# ------------------------------------------------------------- monomial M


def _expand_M_binomial(alpha: tuple, N: int) -> dict:
    """Chains over positive parts only, weighted by binomials of the gaps."""
    bl = blocks(alpha)
    out: dict = {}

    def rec(p: int, prev: int, mono: tuple, weight: int) -> None:
        if p == len(bl):
            out[mono] = out.get(mono, 0) + weight
            return
        i, s = bl[p]
        for n in range(prev + 1 + i, N + 1):
            rec(p + 1, n, mono + ((n, s),), weight * comb(n - prev - 1, i))

    rec(0, 0, (), 1)
    return out


def _expand_M_literal(alpha: tuple, N: int) -> dict:
    """Strict chains over every position, zero exponents included."""
    out: dict = {}
    for idx in itertools.combinations(range(1, N + 1), len(alpha)):
        mono = tuple((n, e) for n, e in zip(idx, alpha) if e)
        out[mono] = out.get(mono, 0) + 1
    return out


@lru_cache(maxsize=4096)
def _expand_M_cached(alpha: tuple, N: int, D: int, method: str) -> TruncatedSeries:
    if method == "binomial":
        terms = _expand_M_binomial(alpha, N)
    elif method == "literal":
        terms = _expand_M_literal(alpha, N)
    else:
        raise PreconditionError(f"unknown method {method!r}")
    return TruncatedSeries(N, D, terms)


def expand_M(alpha: Sequence[int], N: int, D: int, method: str = "binomial") -> TruncatedSeries:
    """``M_alpha`` restricted to ``x_1..x_N``.

    ``method="binomial"`` sums over the positive parts with binomial gap
    weights; ``method="literal"`` runs over strictly increasing indices for
    every part, letting zero parts only occupy an index.  Restricting to
    finitely many variables is exact because the last part is positive.
    """
    alpha = as_lwc(alpha)
    _degree_check(alpha, D)
    return _expand_M_cached(alpha, N, D, method)


def expand_Mbar(key: Sequence[int], N: int, D: int) -> TruncatedSeries:
    """``x_0^{a0} M_{tail}`` for an Mbar key ``(a0, *tail)``."""
    key = tuple(key)
    if not key or key[0] < 0:
        raise PreconditionError(f"bad Mbar key {key}")
    head, tail = key[0], as_lwc(key[1:])
    _degree_check(key, D)
    m = expand_M(tail, N, D)
    if not head:
        return m
    return TruncatedSeries(N, D, {mono_mul(((0, head),), mono): c for mono, c in m.terms.items()})


def expand_combination(lc, N: int, D: int) -> TruncatedSeries:
    """Image of an M- or Mbar-tagged LinComb."""
    expand = expand_Mbar if lc.tag == "Mbar" else expand_M
    out = TruncatedSeries(N, D)
    for k, c in lc.items():
        out = out + expand(k, N, D).scale(c)
    return out


# ---------------------------------------------------------- fundamental F


def chain_pattern(alpha: Sequence[int]) -> tuple[tuple[int, ...], tuple[bool, ...]]:
    """Exponent per chain element and whether the step after it is strict.

    Zeros of a block contribute exponent-0 elements, the positive part ``s``
    contributes ``s`` exponent-1 elements, and the step leaving a block's
    positive part for the next block is strict.
    """
    exps: list[int] = []
    strict: list[bool] = []
    bl = blocks(alpha)
    for p, (i, s) in enumerate(bl):
        exps.extend([0] * i + [1] * s)
        strict.extend([False] * (i + s - 1))
        strict.append(p < len(bl) - 1)
    return tuple(exps), tuple(strict)


def expand_F(alpha: Sequence[int], N: int, D: int) -> TruncatedSeries:
    """``F_alpha`` restricted to ``x_1..x_N`` via dynamic programming on the chain."""
    alpha = as_lwc(alpha)
    _degree_check(alpha, D)
    if not alpha:
        return TruncatedSeries.constant(1, N, D)
    exps, strict = chain_pattern(alpha)
    # state: last index value -> {monomial: count}
    layer: dict[int, dict] = {0: {(): 1}}
    prev_strict = True  # first index is >= 1
    for e, st in zip(exps, strict):
        new: dict[int, dict] = {}
        for v, polys in layer.items():
            lo = v + 1 if prev_strict else max(v, 1)
            for w in range(lo, N + 1):
                tgt = new.setdefault(w, {})
                for m, c in polys.items():
                    m2 = mono_mul(m, ((w, e),)) if e else m
                    tgt[m2] = tgt.get(m2, 0) + c
        layer = new
        prev_strict = st
    out: dict = {}
    for polys in layer.values():
        for m, c in polys.items():
            out[m] = out.get(m, 0) + c
    return TruncatedSeries(N, D, out)


@dataclass(frozen=True)
class LabeledPoset:
    """Labeled chain ``C_1 + P_1 + ... + C_k + P_k`` attached to an LWC.

    ``labels[t]`` is the label of the t-th chain element from the bottom and
    ``marker[t]`` is 1 on P-block elements and 0 on C-block elements.
    """

    labels: tuple[int, ...]
    marker: tuple[int, ...]
    block_labels: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    @classmethod
    def from_lwc(cls, alpha: Sequence[int]) -> "LabeledPoset":
        bl = blocks(as_lwc(alpha))
        nxt = 1
        c_lab = []
        for i, _ in bl:
            c_lab.append(tuple(range(nxt, nxt + i)))
            nxt += i
        p_lab: list = [None] * len(bl)
        for p in reversed(range(len(bl))):
            s = bl[p][1]
            p_lab[p] = tuple(range(nxt, nxt + s))
            nxt += s
        labels: list[int] = []
        marker: list[int] = []
        for c, pl in zip(c_lab, p_lab):
            labels += list(c) + list(pl)
            marker += [0] * len(c) + [1] * len(pl)
        return cls(tuple(labels), tuple(marker), tuple(zip(c_lab, p_lab)))

    def __len__(self) -> int:
        return len(self.labels)

    def describe(self) -> str:
        def fmt(t):
            return "{" + ",".join(map(str, t)) + "}" if t else "∅"

        return "⊕".join(fmt(c) + "⊕" + fmt(p) for c, p in self.block_labels)


@lru_cache(maxsize=64)
def _weak_chains(size: int, N: int) -> np.ndarray:
    rows = list(itertools.combinations_with_replacement(range(1, N + 1), size))
    return np.array(rows, dtype=np.int64).reshape(len(rows), size)


def gamma_P(alpha: Sequence[int], N: int, D: int, budget: int | None = None) -> TruncatedSeries:
    """Generating function of P-partitions of the labeled chain of ``alpha``.

    Enumerates every order-preserving map into ``1..N``, keeps those that
    increase strictly across every comparable pair whose labels decrease,
    and weighs each by ``prod x_{f(e)}^{marker(e)}``.
    """
    alpha = as_lwc(alpha)
    _degree_check(alpha, D)
    poset = LabeledPoset.from_lwc(alpha)
    n = len(poset)
    if n == 0:
        return TruncatedSeries.constant(1, N, D)
    count = comb(N + n - 1, n)
    if count > (ENUMERATION_BUDGET if budget is None else budget):
        raise BudgetExceeded(f"{count} maps to enumerate for a poset of size {n}")
    f = _weak_chains(n, N)
    keep = np.ones(len(f), dtype=bool)
    lab = poset.labels
    for a in range(n):
        for b in range(a + 1, n):
            if lab[a] > lab[b]:
                keep &= f[:, a] < f[:, b]
    f = f[keep]
    cols = [t for t in range(n) if poset.marker[t]]
    exps = np.zeros((len(f), N + 1), dtype=np.int64)
    for t in cols:
        np.add.at(exps, (np.arange(len(f)), f[:, t]), 1)
    uniq, counts = np.unique(exps, axis=0, return_counts=True)
    terms = {_mono_from_exponents(row): int(c) for row, c in zip(uniq.tolist(), counts.tolist())}
    return TruncatedSeries(N, D, terms)
