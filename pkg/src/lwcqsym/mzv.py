"""LWC multiple zeta values: evaluation, Stirling reduction and relation checks.

A symbol ``ζ(s_1,...,s_k; i_1,...,i_k)`` stands for the LWC
``(0^{i_1}, s_1, ..., 0^{i_k}, s_k)``, i.e. the sum over
``n_1 < ... < n_k`` of ``prod_p C(n_p - n_{p-1} - 1, i_p) / n_p^{s_p}``.
Relations are LinCombs whose keys are sorted tuples of symbols (products).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from . import _nested
from .compositions import as_lwc, blocks, from_blocks
from .errors import DivergenceError, ParseError, PreconditionError
from .lincomb import LinComb
from .quasi_shuffle import closed_0a_0b

DEFAULT_TOL = 1e-8
MAX_CUTOFF = 2**24


@dataclass(frozen=True, order=True)
class ZetaSymbol:
    s: tuple[int, ...]
    I: tuple[int, ...]

    def __post_init__(self):
        s, I = tuple(self.s), tuple(self.I)
        if len(s) != len(I):
            raise PreconditionError(f"s and I lengths differ: {s}, {I}")
        if any(x < 1 for x in s) or any(i < 0 for i in I):
            raise PreconditionError(f"bad symbol data s={s}, I={I}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "I", I)

    @classmethod
    def from_lwc(cls, alpha: Sequence[int]) -> "ZetaSymbol":
        bl = blocks(as_lwc(alpha))
        return cls(tuple(s for _, s in bl), tuple(i for i, _ in bl))

    def lwc(self) -> tuple[int, ...]:
        return from_blocks(zip(self.I, self.s))

    @property
    def weight(self) -> int:
        return sum(self.s)

    @property
    def depth(self) -> int:
        return len(self.s)

    def text(self) -> str:
        body = ",".join(map(str, self.s))
        if any(self.I):
            body += ";" + ",".join(map(str, self.I))
        return body

    def __str__(self) -> str:
        return f"ζ({self.text()})"


def parse_symbol(text: str) -> ZetaSymbol:
    """Parse ``"3,3;1,0"``; the ``;I`` part may be omitted when all zero."""
    t = text.strip()
    if t.startswith("ζ(") and t.endswith(")"):
        t = t[2:-1]
    s_text, sep, i_text = t.partition(";")
    try:
        s = tuple(int(x) for x in s_text.split(","))
        I = tuple(int(x) for x in i_text.split(",")) if sep else (0,) * len(s)
    except ValueError:
        raise ParseError(f"bad zeta symbol {text!r}") from None
    if len(s) != len(I):
        raise ParseError(f"s and I lengths differ in {text!r}")
    try:
        return ZetaSymbol(s, I)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None


def zsym(s, I=None) -> ZetaSymbol:
    s = (s,) if isinstance(s, int) else tuple(s)
    if I is None:
        I = (0,) * len(s)
    I = (I,) if isinstance(I, int) else tuple(I)
    return ZetaSymbol(s, I)


def converges(sym: ZetaSymbol | Sequence[int]) -> bool:
    """Exact convergence test: every suffix has weight above its length."""
    alpha = sym.lwc() if isinstance(sym, ZetaSymbol) else as_lwc(sym)
    return bool(alpha) and min(_nested.suffix_excesses(alpha)) > 0


def blockwise_condition(sym: ZetaSymbol) -> bool:
    """The sufficient condition ``s_p >= i_p + 2`` for every block."""
    return all(s >= i + 2 for s, i in zip(sym.s, sym.I))


# ---------------------------------------------------------------- values


@lru_cache(maxsize=4096)
def _zeta_cached(alpha: tuple, tol: float, max_cutoff: int, strict: bool) -> _nested.NestedSum:
    engine = _nested.Engine(alpha, _nested.harmonic_weight, _nested.harmonic_tail)
    return engine.run(tol, max_cutoff, strict)


def zeta_lwc(sym: ZetaSymbol | Sequence[int], tol: float = DEFAULT_TOL, max_cutoff: int = MAX_CUTOFF, strict: bool = True) -> _nested.NestedSum:
    """Value of an LWC-MZV with a certified bound on the absolute error.

    Raises ``DivergenceError`` for divergent symbols and, when ``strict``,
    ``ToleranceNotReached`` if the cutoff cap is hit first.
    """
    if not tol > 0:
        raise PreconditionError("tol must be positive")
    alpha = sym.lwc() if isinstance(sym, ZetaSymbol) else as_lwc(sym)
    if not converges(alpha):
        raise DivergenceError(f"{ZetaSymbol.from_lwc(alpha) if alpha else '()'} diverges")
    return _zeta_cached(alpha, float(tol), int(max_cutoff), bool(strict))


def partial_sum(sym: ZetaSymbol | Sequence[int], N: int) -> float:
    """Nested sum with every index at most ``N``."""
    alpha = sym.lwc() if isinstance(sym, ZetaSymbol) else as_lwc(sym)
    engine = _nested.Engine(alpha, _nested.harmonic_weight, _nested.harmonic_tail)
    engine.extend_to(N)
    return engine.partial()


# -------------------------------------------------------------- Stirling


class StirlingTable:
    """Signed Stirling numbers of the first kind, filled row by row."""

    def __init__(self):
        self._rows: list[list[int]] = [[1]]

    def row(self, i: int) -> list[int]:
        if i < 0:
            raise PreconditionError("negative Stirling index")
        while len(self._rows) <= i:
            m = len(self._rows) - 1
            prev = self._rows[-1] + [0]
            # (t)_{m+1} = (t)_m (t - m)
            new = [0] * (m + 2)
            for k in range(m + 2):
                new[k] = (prev[k - 1] if k else 0) - m * prev[k]
            self._rows.append(new)
        return self._rows[i]

    def __call__(self, i: int, k: int) -> int:
        if k < 0 or k > i:
            return 0
        return self.row(i)[k]


stirling = StirlingTable()


def stirling_reduce(a: int, m: int) -> LinComb:
    """``ζ(a;m)`` as a rational combination of classical single zetas."""
    if m < 0 or a < m + 2:
        raise PreconditionError(f"need a >= m + 2, got a={a}, m={m}")
    out = LinComb(tag="zeta")
    for k in range(m + 1):
        c = stirling(m, k)
        if not c:
            continue
        out._iadd((zsym(a - k),), Fraction(c, factorial(m)))
        if m:
            out._iadd((zsym(a - k + 1),), -Fraction(c, factorial(m - 1)))
    return out


# ------------------------------------------------------------- relations


def _product_key(*syms: ZetaSymbol) -> tuple:
    return tuple(sorted(syms))


@dataclass
class Relation:
    """A claimed identity ``lhs = rhs`` between rational combinations of zeta products."""

    name: str
    lhs: LinComb
    rhs: LinComb

    def difference(self) -> LinComb:
        return self.lhs - self.rhs

    def symbols(self) -> list[ZetaSymbol]:
        seen = set()
        for side in (self.lhs, self.rhs):
            for key in side:
                seen.update(key)
        return sorted(seen, key=lambda z: (z.weight, z.depth, z))

    def divergent_symbols(self) -> list[ZetaSymbol]:
        return [z for z in self.symbols() if not converges(z)]

    def format(self) -> str:
        return f"{self.lhs.format()} = {self.rhs.format()}"

    def perturbed(self, key=None, delta=Fraction(1, 1000)) -> "Relation":
        """Copy with ``delta`` added to one lhs coefficient (the first by default)."""
        key = key if key is not None else next(iter(self.lhs.sorted_items()))[0]
        bump = LinComb.monomial(key, delta, tag="zeta")
        return Relation(self.name + " (perturbed)", self.lhs + bump, self.rhs)


def _check_pair(a: int, b: int, m: int, n: int) -> None:
    if min(a, b) < 1 or min(m, n) < 0:
        raise PreconditionError("a, b must be positive and m, n nonnegative")
    if a < m + 2:
        raise PreconditionError(f"a >= m + 2 violated (a={a}, m={m})")
    if b < n + 2:
        raise PreconditionError(f"b >= n + 2 violated (b={b}, n={n})")


def _product_lhs(a, b, m, n) -> LinComb:
    return LinComb.monomial(_product_key(zsym(a, m), zsym(b, n)), tag="zeta")


def stuffle_relation(a: int, b: int, m: int, n: int) -> Relation:
    """``ζ(a;m) ζ(b;n)`` expanded through the quasi-shuffle closed form."""
    _check_pair(a, b, m, n)
    rhs = closed_0a_0b(a, b, m, n).map_keys(lambda g: (ZetaSymbol.from_lwc(g),), tag="zeta")
    return Relation(f"stuffle(a={a},m={m},b={b},n={n})", _product_lhs(a, b, m, n), rhs)


def shuffle_relation(a: int, b: int, m: int, n: int) -> Relation:
    """``ζ(a;m) ζ(b;n)`` expanded through the shuffle of the word forms."""
    _check_pair(a, b, m, n)
    rhs = LinComb(tag="zeta")
    for i in range(b):
        rhs._iadd((zsym((b - i, a + i), (n, m)),), comb(a + i - 1, i))
    for j in range(a):
        rhs._iadd((zsym((a - j, b + j), (m, n)),), comb(b + j - 1, j))
    return Relation(f"shuffle(a={a},m={m},b={b},n={n})", _product_lhs(a, b, m, n), rhs)


def euler_decomposition(a: int, b: int) -> Relation:
    """Classical ``ζ(a) ζ(b)`` as a combination of double zetas."""
    if a < 2 or b < 2:
        raise PreconditionError("need a, b >= 2")
    rel = shuffle_relation(a, b, 0, 0)
    rel.name = f"euler(a={a},b={b})"
    return rel


def double_shuffle_relation(a: int, b: int, m: int, n: int) -> Relation:
    """Stuffle expansion minus shuffle expansion, common terms cancelled.

    Terms left with a positive coefficient form the lhs; the rest, negated,
    form the rhs.
    """
    diff = stuffle_relation(a, b, m, n).rhs - shuffle_relation(a, b, m, n).rhs
    lhs = LinComb(((k, c) for k, c in diff.items() if c > 0), tag="zeta")
    rhs = LinComb(((k, -c) for k, c in diff.items() if c < 0), tag="zeta")
    return Relation(f"double-shuffle(a={a},m={m},b={b},n={n})", lhs, rhs)


def stirling_product_relation(a: int, b: int, m: int, n: int) -> Relation:
    """``ζ(a;m) ζ(b;n)`` as four double sums of products of classical zetas."""
    _check_pair(a, b, m, n)
    ra, rb = stirling_reduce(a, m), stirling_reduce(b, n)
    rhs = ra.bilinear(rb, lambda k1, k2: {_product_key(*k1, *k2): 1}, tag="zeta")
    return Relation(f"stirling-product(a={a},m={m},b={b},n={n})", _product_lhs(a, b, m, n), rhs)


def stirling_relation(a: int, m: int) -> Relation:
    return Relation(f"stirling(a={a},m={m})", LinComb.monomial((zsym(a, m),), tag="zeta"), stirling_reduce(a, m))


# ----------------------------------------------------------- verification


@dataclass
class Report:
    relation: str
    lhs: float
    rhs: float
    residual: float
    tail_bound: float
    tolerance: float
    verified: bool
    per_symbol: list[dict] = field(default_factory=list)

    def to_json_obj(self) -> dict:
        return {
            "relation": self.relation,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "tail_bound": self.tail_bound,
            "tolerance": self.tolerance,
            "verified": self.verified,
            "per_symbol": self.per_symbol,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2)

    def format(self) -> str:
        lines = [f"{self.relation}"]
        width = max([len(d["symbol"]) for d in self.per_symbol] + [6])
        for d in self.per_symbol:
            lines.append(f"  {d['symbol']:<{width}}  {d['value']:.15g}  ±{d['tail']:.2e}  N={d['cutoff']}")
        lines.append(f"  lhs = {self.lhs:.15g}")
        lines.append(f"  rhs = {self.rhs:.15g}")
        lines.append(
            f"  |lhs - rhs| = {self.residual:.3e} vs tol {self.tolerance:.1e} + tails {self.tail_bound:.3e}"
            f" -> {'verified' if self.verified else 'NOT verified'}"
        )
        return "\n".join(lines)


def _side_value(side: LinComb, values: dict) -> tuple[float, float]:
    """Value of a combination of products and a bound on its propagated error."""
    total = math.fsum(
        float(c) * math.prod(values[z][0] for z in key) for key, c in side.items()
    )
    err = 0.0
    for key, c in side.items():
        # |prod v_i - prod w_i| <= prod(|v_i| + t_i) - prod |v_i|
        hi = math.prod(abs(values[z][0]) + values[z][1] for z in key)
        lo = math.prod(abs(values[z][0]) for z in key)
        err += abs(float(c)) * (hi - lo)
    # rounding of the float combination itself
    err += 4 * len(side) * _nested.EPS * math.fsum(
        abs(float(c)) * math.prod(abs(values[z][0]) for z in key) for key, c in side.items()
    )
    return total, err


def evaluate_symbols(symbols, evaluator, tol: float) -> dict:
    values = {}
    for z in symbols:
        r = evaluator(z, tol)
        values[z] = (r.value, r.tail_bound, r.cutoff)
    return values


def verify(rel: Relation, tol: float = DEFAULT_TOL, symbol_tol: float | None = None, max_cutoff: int = MAX_CUTOFF) -> Report:
    """Evaluate both sides numerically and compare within ``tol`` plus certified tails."""
    bad = rel.divergent_symbols()
    if bad:
        raise DivergenceError("divergent symbols: " + ", ".join(map(str, bad)))
    symbol_tol = symbol_tol if symbol_tol is not None else tol / 10

    def evaluator(z, t):
        return zeta_lwc(z, t, max_cutoff)

    values = evaluate_symbols(rel.symbols(), evaluator, symbol_tol)
    return _report(rel, values, tol, str)


def _report(rel: Relation, values: dict, tol: float, label) -> Report:
    lv, le = _side_value(rel.lhs, values)
    rv, re_ = _side_value(rel.rhs, values)
    residual = abs(lv - rv)
    tails = le + re_
    per = [
        {"symbol": label(z), "value": v, "tail": t, "cutoff": n} for z, (v, t, n) in values.items()
    ]
    return Report(f"{rel.name}: {rel.format()}", lv, rv, residual, tails, tol, residual <= tol + tails, per)
