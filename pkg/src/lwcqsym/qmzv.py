"""q-analog MZVs and the q-shuffle algebra on words over {ρ, y}.

Words are strings over ``"r"`` (ρ) and ``"y"``; ``""`` is the empty word.
The word ``ρ^{s_1} y ρ^{s_2} y ... ρ^{s_k} y`` (``s_1 >= 1``, later
``s_p >= 0``) evaluates to ``ζ_q(s_k, ..., s_1)``.  The value of ``ζ_q(α)``
for an LWC ``α`` is the nested sum of ``prod_p x_{n_p}^{α_p}`` with
``x_n = q^n / [n]_q``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import zip_longest
from math import comb
from numbers import Rational
from typing import Sequence

from . import _nested
from .compositions import as_lwc, from_blocks
from .errors import ParseError, PreconditionError
from .lincomb import LinComb
from .mzv import DEFAULT_TOL, Relation, Report, _check_pair, _product_key, _report, evaluate_symbols
from .quasi_shuffle import closed_0a_0b

MAX_CUTOFF = 2**24


def _exact(x):
    """Integers stay ``int`` (fast); everything else becomes a ``Fraction``."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _trim(c: list) -> tuple:
    while c and not c[-1]:
        c.pop()
    return tuple(x if type(x) is int or x.denominator != 1 else x.numerator for x in c)


class QPoly:
    """Univariate polynomial in q with exact rational coefficients.

    Integral coefficients are stored as ``int``; the rest as ``Fraction``.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence = ()):
        self.c = _trim([_exact(x) for x in coeffs])

    @classmethod
    def _raw(cls, c: list) -> "QPoly":
        # c already holds exact ints/Fractions
        p = cls.__new__(cls)
        p.c = _trim(c)
        return p

    @classmethod
    def const(cls, x) -> "QPoly":
        return cls((x,))

    @staticmethod
    def _lift(other) -> "QPoly":
        if type(other) is QPoly:
            return other
        if isinstance(other, (int, Rational)):
            return QPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QPoly._raw([a + b for a, b in zip_longest(self.c, o.c, fillvalue=0)])

    __radd__ = __add__

    def __neg__(self):
        return QPoly._raw([-a for a in self.c])

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not self.c or not o.c:
            return QPoly()
        if o.c == (1,):
            return self
        if self.c == (1,):
            return o
        out = [0] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            for j, b in enumerate(o.c):
                out[i + j] += a * b
        return QPoly._raw(out)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.c)

    def constant_value(self) -> Fraction | None:
        """The value if the polynomial is constant, else ``None``."""
        if len(self.c) > 1:
            return None
        return Fraction(self.c[0]) if self.c else Fraction(0)

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def __call__(self, q):
        """Horner evaluation; exact for rational ``q``."""
        acc = 0
        for a in reversed(self.c):
            acc = acc * q + a
        return acc

    def __repr__(self) -> str:
        return f"QPoly({self})"

    def __str__(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for k, a in enumerate(self.c):
            if not a:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if mono and abs(a) == 1:
                body = mono
            else:
                body = f"{abs(a)}{mono}"
            parts.append(("-" if a < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


ONE_MINUS_Q = QPoly((1, -1))


# ------------------------------------------------------------------ words


def check_word(w: str) -> str:
    if any(ch not in "ry" for ch in w):
        raise ParseError(f"words use only 'r' and 'y', got {w!r}")
    return w


def is_admissible(w: str) -> bool:
    return w.startswith("r")


@lru_cache(maxsize=None)
def _qsh(u: str, v: str) -> tuple:
    if not u:
        return ((v, QPoly.const(1)),)
    if not v:
        return ((u, QPoly.const(1)),)
    out: dict = {}

    def put(prefix: str, items, factor=None):
        for w, c in items:
            key = prefix + w
            c = c * factor if factor is not None else c
            out[key] = out[key] + c if key in out else c

    if u[0] == "y":
        put("y", _qsh(u[1:], v))
    elif v[0] == "y":
        put("y", _qsh(u, v[1:]))
    else:
        put("r", _qsh(u[1:], v))
        put("r", _qsh(u, v[1:]))
        put("r", _qsh(u[1:], v[1:]), ONE_MINUS_Q)
    return tuple((w, c) for w, c in out.items() if c)


def qshuffle(u: str, v: str) -> LinComb:
    """q-shuffle product; coefficients are ``QPoly`` in q."""
    return LinComb(_qsh(check_word(u), check_word(v)), tag="word")


def qshuffle_combination(x: LinComb, y: LinComb) -> LinComb:
    return x.bilinear(y, lambda a, b: dict(_qsh(a, b)), tag="word")


def at_q(x: LinComb, q) -> LinComb:
    """Specialize every ``QPoly`` coefficient at ``q`` (exact for rational q)."""
    return LinComb(((w, c(q) if isinstance(c, QPoly) else c) for w, c in x.items()), tag=x.tag)


def q1_word_formula(a: int, b: int, m: int, n: int) -> LinComb:
    """Closed form of ``ρ^a y^m ⧢ ρ^b y^n`` at ``q = 1``."""
    if min(a, b, m, n) < 1:
        raise PreconditionError("a, b, m, n must be positive")
    out = LinComb(tag="word")
    for i in range(b):
        out._iadd("r" * (a + i) + "y" * m + "r" * (b - i) + "y" * n, comb(a + i - 1, i))
    for j in range(a):
        out._iadd("r" * (b + j) + "y" * n + "r" * (a - j) + "y" * m, comb(b + j - 1, j))
    return out


def word_to_index(w: str) -> tuple[int, ...]:
    """``ρ^{s_1}y...ρ^{s_k}y -> (s_k, ..., s_1)``; ``""`` maps to ``()``."""
    check_word(w)
    if not w:
        return ()
    if not is_admissible(w):
        raise PreconditionError(f"word {w!r} is not admissible (must start with r)")
    if not w.endswith("y"):
        raise PreconditionError(f"word {w!r} ends in r and has no zeta value")
    s = []
    run = 0
    for ch in w:
        if ch == "r":
            run += 1
        else:
            s.append(run)
            run = 0
    return tuple(reversed(s))


def index_to_word(alpha: Sequence[int]) -> str:
    alpha = as_lwc(alpha)
    return "".join("r" * s + "y" for s in reversed(alpha))


# ----------------------------------------------------------------- values


def _check_q(q: float) -> float:
    q = float(q)
    if not 0.0 < q < 1.0:
        raise PreconditionError(f"q must lie in (0, 1), got {q}")
    return q


@lru_cache(maxsize=4096)
def _zeta_q_cached(alpha: tuple, q: float, tol: float, max_cutoff: int, strict: bool):
    engine = _nested.Engine(alpha, _nested.q_weight(q), _nested.q_tail(q))
    return engine.run(tol, max_cutoff, strict)


def zeta_q(alpha: Sequence[int], q: float, tol: float = DEFAULT_TOL, max_cutoff: int = MAX_CUTOFF, strict: bool = True) -> _nested.NestedSum:
    """``ζ_q(α)`` with a certified error bound."""
    q = _check_q(q)
    if not tol > 0:
        raise PreconditionError("tol must be positive")
    alpha = tuple(int(a) for a in alpha)
    if any(a < 0 for a in alpha):
        raise PreconditionError(f"negative index in {alpha}")
    suffix = 0
    for a in reversed(alpha):
        suffix += a
        if suffix <= 0:
            raise PreconditionError(f"suffix sums of {alpha} must be positive")
    return _zeta_q_cached(alpha, q, float(tol), int(max_cutoff), bool(strict))


def zeta_q_word(w: str, q: float, tol: float = DEFAULT_TOL) -> _nested.NestedSum:
    return zeta_q(word_to_index(w), q, tol)


def zeta_q_symbol(s: Sequence[int], I: Sequence[int]) -> tuple[int, ...]:
    """LWC of ``ζ_q(s_1..s_k; i_1..i_k) = ζ_q(0^{i_1}, s_1, ...)``."""
    return from_blocks(zip(I, s))


def _fmt_index(alpha) -> str:
    return "ζ_q(" + ",".join(map(str, alpha)) + ")"


@dataclass(frozen=True, order=True)
class QIndex:
    """An LWC used as a q-MZV inside relations."""

    alpha: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(self.alpha)

    @property
    def depth(self) -> int:
        return len(self.alpha)

    def __str__(self) -> str:
        return _fmt_index(self.alpha)


# ----------------------------------------------------------------- checks


@dataclass
class QReport:
    name: str
    q: float
    lhs: float
    rhs: float
    residual: float
    tail_bound: float
    tolerance: float
    verified: bool
    details: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {
            "relation": self.name,
            "q": self.q,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "residual": self.residual,
            "tail_bound": self.tail_bound,
            "tolerance": self.tolerance,
            "verified": self.verified,
            **self.details,
        }

    def format(self) -> str:
        lines = [f"{self.name} at q={self.q}"]
        lines.append(f"  lhs = {self.lhs:.15g}")
        lines.append(f"  rhs = {self.rhs:.15g}")
        for k, v in self.details.items():
            if isinstance(v, float):
                lines.append(f"  {k} = {v:.6e}")
        lines.append(
            f"  |lhs - rhs| = {self.residual:.3e} vs tol {self.tolerance:.1e} + tails {self.tail_bound:.3e}"
            f" -> {'verified' if self.verified else 'NOT verified'}"
        )
        return "\n".join(lines)


def duality_check(s: Sequence[int], t: Sequence[int], q: float, tol: float = DEFAULT_TOL) -> QReport:
    """Compare ``ζ_q(t; s-1)`` with ``ζ_q(s reversed; t reversed - 1)``.

    The two sums agree after the scaling ``(1-q)^{Σ(s_p-1)}`` on the left and
    ``(1-q)^{Σ(t_p-1)}`` on the right, i.e. once each ``[n]_q`` is replaced
    by ``1 - q^n``.  ``verified`` refers to the scaled comparison; the raw
    residual is reported alongside.
    """
    s, t = tuple(s), tuple(t)
    if len(s) != len(t) or not s:
        raise PreconditionError("s and t must be nonempty and of equal length")
    if min(s + t) < 1:
        raise PreconditionError("s and t must be positive")
    q = _check_q(q)
    left = zeta_q_symbol(t, [x - 1 for x in s])
    right = zeta_q_symbol(s[::-1], [x - 1 for x in t[::-1]])
    sub_tol = tol / 10
    lv, rv = zeta_q(left, q, sub_tol), zeta_q(right, q, sub_tol)
    wl = (1 - q) ** sum(x - 1 for x in s)
    wr = (1 - q) ** sum(x - 1 for x in t)
    a, b = wl * lv.value, wr * rv.value
    tails = wl * lv.tail_bound + wr * rv.tail_bound + 8 * _nested.EPS * (abs(a) + abs(b))
    residual = abs(a - b)
    raw = abs(lv.value - rv.value)
    return QReport(
        f"duality s={s} t={t}: {_fmt_index(left)} vs {_fmt_index(right)}",
        q,
        a,
        b,
        residual,
        tails,
        tol,
        residual <= tol + tails,
        {
            "raw_lhs": lv.value,
            "raw_rhs": rv.value,
            "raw_residual": raw,
            "raw_verified": raw <= tol + lv.tail_bound + rv.tail_bound,
        },
    )


def homomorphism_check(u: str, v: str, q: float, tol: float = DEFAULT_TOL) -> QReport:
    """``ζ_q(u) ζ_q(v)`` against the evaluated q-shuffle expansion."""
    q = _check_q(q)
    for w in (u, v):
        check_word(w)
        if w and not is_admissible(w):
            raise PreconditionError(f"word {w!r} is not admissible")
    expansion = at_q(qshuffle(u, v), Fraction(q))
    sub_tol = tol / (10 * (len(expansion) + 2))
    cache: dict = {}

    def value(w):
        if w not in cache:
            r = zeta_q_word(w, q, sub_tol) if w else None
            cache[w] = (1.0, 0.0) if r is None else (r.value, r.tail_bound)
        return cache[w]

    (uv, ut), (vv, vt) = value(u), value(v)
    lhs = uv * vv
    lhs_err = abs(uv) * vt + abs(vv) * ut + ut * vt
    terms = [(float(c), *value(w)) for w, c in expansion.items()]
    rhs = math.fsum(c * x for c, x, _ in terms)
    rhs_err = math.fsum(abs(c) * e for c, _, e in terms)
    scale = abs(lhs) + math.fsum(abs(c * x) for c, x, _ in terms)
    tails = lhs_err + rhs_err + 4 * (len(terms) + 2) * _nested.EPS * scale
    residual = abs(lhs - rhs)
    return QReport(
        f"homomorphism {u or '1'} ⧢ {v or '1'}",
        q,
        lhs,
        rhs,
        residual,
        tails,
        tol,
        residual <= tol + tails,
        {"expansion": {w: str(c) for w, c in qshuffle(u, v).sorted_items(lambda kv: (len(kv[0]), kv[0]))}},
    )


def stuffle_q_relation(a: int, b: int, m: int, n: int, hypotheses: bool = True) -> Relation:
    """``ζ_q(a;m) ζ_q(b;n)`` expanded with the quasi-shuffle closed form.

    Keys are tuples of ``QIndex``; evaluate with ``verify_q``.  With
    ``hypotheses=False`` the conditions ``a >= m + 2``, ``b >= n + 2`` are
    not enforced; the relation is then labelled as lying outside them, so a
    report on it is an observed residual, not a proved identity.
    """
    if hypotheses:
        _check_pair(a, b, m, n)
    elif min(a, b) < 1 or min(m, n) < 0:
        raise PreconditionError("a, b must be positive and m, n nonnegative")
    lhs = LinComb.monomial(_product_key(QIndex((0,) * m + (a,)), QIndex((0,) * n + (b,))), tag="zeta")
    rhs = closed_0a_0b(a, b, m, n).map_keys(lambda g: (QIndex(g),), tag="zeta")
    name = f"q-stuffle(a={a},m={m},b={b},n={n})"
    if not hypotheses and (a < m + 2 or b < n + 2):
        name += " [outside a >= m+2, b >= n+2]"
    return Relation(name, lhs, rhs)


def verify_q(rel: Relation, q: float, tol: float = DEFAULT_TOL) -> Report:
    """Numeric check of a relation whose keys are tuples of ``QIndex``."""
    q = _check_q(q)

    def evaluator(z, t):
        return zeta_q(z.alpha, q, t)

    values = evaluate_symbols(rel.symbols(), evaluator, tol / 10)
    return _report(rel, values, tol, str)
