"""Rota's standard Rota-Baxter algebra on one generator, truncated to length L.

A sequence has ``L`` entries, each an exact polynomial in ``x_1..x_L``
stored as ``{monomial: Fraction}`` with monomials as sorted ``(var, exp)``
tuples.  The operator ``p_r`` replaces each entry by the sum of the entries
before it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import PreconditionError
from .series import Monomial, mono_mul

Poly = dict  # Monomial -> Fraction

WARING_DEG_CAP = 12


def poly_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = mono_mul(m1, m2)
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def poly_scale(a: Poly, c) -> Poly:
    c = Fraction(c)
    return {m: v * c for m, v in a.items()} if c else {}


def poly_const(c) -> Poly:
    return {(): Fraction(c)} if c else {}


def poly_var(i: int, exp: int = 1) -> Poly:
    return {((i, exp),): Fraction(1)}


def format_poly(a: Poly) -> str:
    if not a:
        return "0"
    parts = []
    for m, c in sorted(a.items(), key=lambda kv: (sum(e for _, e in kv[0]), kv[0])):
        mono = "".join(f"x{v}" + (f"^{e}" if e > 1 else "") for v, e in m)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class PolySeq:
    entries: tuple[Poly, ...]

    @property
    def L(self) -> int:
        return len(self.entries)

    @classmethod
    def zeros(cls, L: int) -> "PolySeq":
        return cls(tuple({} for _ in range(L)))

    @classmethod
    def constant(cls, c, L: int) -> "PolySeq":
        return cls(tuple(poly_const(c) for _ in range(L)))

    @classmethod
    def generator(cls, L: int, exp: int = 1) -> "PolySeq":
        """``(x_1^exp, x_2^exp, ..., x_L^exp)``."""
        return cls(tuple(poly_var(i, exp) for i in range(1, L + 1)))

    def _check(self, other: "PolySeq") -> None:
        if self.L != other.L:
            raise PreconditionError(f"lengths differ: {self.L} and {other.L}")

    def __add__(self, other: "PolySeq") -> "PolySeq":
        self._check(other)
        return PolySeq(tuple(poly_add(a, b) for a, b in zip(self.entries, other.entries)))

    def __mul__(self, other: "PolySeq") -> "PolySeq":
        self._check(other)
        return PolySeq(tuple(poly_mul(a, b) for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "PolySeq":
        return PolySeq(tuple(poly_scale(a, -1) for a in self.entries))

    def __sub__(self, other: "PolySeq") -> "PolySeq":
        return self + (-other)

    def __getitem__(self, m: int) -> Poly:
        """Entry ``m``, counting from 1."""
        return self.entries[m - 1]

    def is_zero(self) -> bool:
        return not any(self.entries)


def p_r(a: PolySeq) -> PolySeq:
    """``(a_1, a_2, ...) -> (0, a_1, a_1 + a_2, ...)``, kept at length L."""
    out = []
    acc: Poly = {}
    for entry in a.entries:
        out.append(acc)
        acc = poly_add(acc, entry)
    return PolySeq(tuple(out))


def iterate_Pn(n: int, L: int) -> PolySeq:
    """``P(x)`` iterated as ``P(x P(x)^{[n-1]})``; entry m is ``e_n(x_1..x_{m-1})``."""
    if n < 1 or L < 1:
        raise PreconditionError("n and L must be positive")
    x = PolySeq.generator(L)
    cur = p_r(x)
    for _ in range(n - 1):
        cur = p_r(x * cur)
    return cur


def power_sum_seq(k: int, L: int) -> PolySeq:
    """``P(x^k)``; entry m is ``p_k(x_1..x_{m-1})``."""
    if k < 1 or L < 1:
        raise PreconditionError("k and L must be positive")
    return p_r(PolySeq.generator(L, k))


def rb_residual_seq(a: PolySeq, b: PolySeq) -> PolySeq:
    """``P(a)P(b) - P(aP(b)) - P(P(a)b) - P(ab)``."""
    pa, pb = p_r(a), p_r(b)
    return pa * pb - p_r(a * pb) - p_r(pa * b) - p_r(a * b)


@dataclass(frozen=True)
class WaringResult:
    m: int
    deg: int
    exponential: tuple[Poly, ...]
    elementary: tuple[Poly, ...]

    @property
    def equal(self) -> bool:
        return self.exponential == self.elementary

    def format(self) -> str:
        lines = [f"Waring check with {self.m} variables to order t^{self.deg}"]
        for n, (a, b) in enumerate(zip(self.exponential, self.elementary)):
            lines.append(f"  t^{n}: exp side {format_poly(a)} | e_{n} {format_poly(b)}")
        lines.append("  pass" if self.equal else "  FAIL")
        return "\n".join(lines)

    def to_json_obj(self) -> dict:
        return {
            "vars": self.m,
            "deg": self.deg,
            "exponential": [format_poly(a) for a in self.exponential],
            "elementary": [format_poly(b) for b in self.elementary],
            "pass": self.equal,
        }


def _series_mul(a: Sequence[Poly], b: Sequence[Poly], deg: int) -> list[Poly]:
    out: list[Poly] = [{} for _ in range(deg + 1)]
    for i, pa in enumerate(a):
        if not pa:
            continue
        for j in range(deg + 1 - i):
            if b[j]:
                out[i + j] = poly_add(out[i + j], poly_mul(pa, b[j]))
    return out


def waring_check(m: int, deg: int) -> WaringResult:
    """Compare ``exp(-sum_k (-1)^k t^k p_k / k)`` with ``sum_n e_n t^n`` up to ``t^deg``.

    Power sums and elementary functions in ``x_1..x_m`` are read off entry
    ``m + 1`` of ``power_sum_seq`` and ``iterate_Pn``.
    """
    if m < 1 or deg < 1:
        raise PreconditionError("m and deg must be positive")
    if deg > WARING_DEG_CAP:
        raise PreconditionError(f"deg above cap {WARING_DEG_CAP}")
    L = m + 1
    # S(t) = -sum (-1)^k p_k t^k / k
    S: list[Poly] = [{}] + [
        poly_scale(power_sum_seq(k, L)[L], Fraction(-((-1) ** k), k)) for k in range(1, deg + 1)
    ]
    # exp(S) = sum_j S^j / j!, exact to order deg since S has no constant term
    expo: list[Poly] = [poly_const(1)] + [{} for _ in range(deg)]
    power: list[Poly] = [poly_const(1)] + [{} for _ in range(deg)]
    for j in range(1, deg + 1):
        power = _series_mul(power, S, deg)
        for n in range(deg + 1):
            expo[n] = poly_add(expo[n], poly_scale(power[n], Fraction(1, factorial(j))))
    elem = [poly_const(1)] + [iterate_Pn(n, L)[L] for n in range(1, deg + 1)]
    return WaringResult(m, deg, tuple(expo), tuple(elem))
