"""Shuffle, quasi-shuffle and augmented mixable shuffle products.

The quasi-shuffle is computed by its three-term recursion on leading parts,
memoized on suffix pairs.  The mixable shuffle is a separate enumeration of
shuffles with merged adjacent pairs; the two agree on integer letters, and
that agreement is tested rather than assumed.

Mbar keys are nonempty LWCs ``(a0, a1, ..., ak)``: ``a0`` is the exponent of
``x_0`` (the head) and the rest is the tail LWC.
"""

from __future__ import annotations

import itertools
import operator
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Sequence

from ._arith import binomial, quasi_shuffle_count
from .compositions import compositions
from .errors import BudgetExceeded, PreconditionError
from .lincomb import LinComb

TERM_BUDGET = 10**7


def _check_budget(count: int, budget: int | None) -> None:
    budget = TERM_BUDGET if budget is None else budget
    if count > budget:
        raise BudgetExceeded(f"expansion needs {count} terms, budget is {budget}")


# ---------------------------------------------------------------- words


@lru_cache(maxsize=None)
def _shuffle(u: tuple, v: tuple) -> tuple:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: dict = {}
    for w, c in _shuffle(u[1:], v):
        key = (u[0],) + w
        out[key] = out.get(key, 0) + c
    for w, c in _shuffle(u, v[1:]):
        key = (v[0],) + w
        out[key] = out.get(key, 0) + c
    return tuple(out.items())


def shuffle(u: Sequence, v: Sequence) -> LinComb:
    """Classical shuffle product of two words."""
    return LinComb(_shuffle(tuple(u), tuple(v)), tag="word")


def mixable_shuffle(u: Sequence, v: Sequence, mult: Callable = operator.add, budget: int | None = None) -> LinComb:
    """Sum of all mixable shuffles of ``u`` and ``v``.

    Enumerates every shuffle, then every set of adjacent pairs ``a_i b_j``
    (a letter of ``u`` immediately followed by one of ``v``) to merge into
    ``mult(a_i, b_j)``.
    """
    u, v = tuple(u), tuple(v)
    p, q = len(u), len(v)
    _check_budget(quasi_shuffle_count(p, q), budget)
    out = LinComb(tag="word")
    for upos in itertools.combinations(range(p + q), p):
        uset = set(upos)
        src = []
        iu = iv = 0
        for t in range(p + q):
            if t in uset:
                src.append((0, u[iu]))
                iu += 1
            else:
                src.append((1, v[iv]))
                iv += 1
        mergeable = [t for t in range(p + q - 1) if src[t][0] == 0 and src[t + 1][0] == 1]
        for r in range(len(mergeable) + 1):
            for chosen in itertools.combinations(mergeable, r):
                starts = set(chosen)
                word = []
                t = 0
                while t < p + q:
                    if t in starts:
                        word.append(mult(src[t][1], src[t + 1][1]))
                        t += 2
                    else:
                        word.append(src[t][1])
                        t += 1
                out._iadd(tuple(word), 1)
    return out


# ---------------------------------------------------------- quasi-shuffle


@lru_cache(maxsize=None)
def _qsh(a: tuple, b: tuple) -> tuple:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    out: dict = {}
    for head, ra, rb in ((a[0], a[1:], b), (b[0], a, b[1:]), (a[0] + b[0], a[1:], b[1:])):
        for w, c in _qsh(ra, rb):
            key = (head,) + w
            out[key] = out.get(key, 0) + c
    return tuple(out.items())


def quasi_shuffle(alpha: Sequence[int], beta: Sequence[int], budget: int | None = None) -> LinComb:
    """Quasi-shuffle (stuffle) of two weak compositions, as an M-tagged LinComb."""
    a, b = tuple(alpha), tuple(beta)
    if any(x < 0 for x in a + b):
        raise PreconditionError("parts must be nonnegative")
    _check_budget(quasi_shuffle_count(len(a), len(b)), budget)
    return LinComb(_qsh(a, b), tag="M")


def product(x: LinComb, y: LinComb, budget: int | None = None) -> LinComb:
    """Bilinear quasi-shuffle product of two M-tagged combinations."""
    need = sum(quasi_shuffle_count(len(k1), len(k2)) for k1 in x for k2 in y)
    _check_budget(need, budget)
    return x.bilinear(y, lambda k1, k2: dict(_qsh(k1, k2)), tag="M")


# ----------------------------------------------------------------- Mbar


def diamond(a: Sequence[int], b: Sequence[int], budget: int | None = None) -> LinComb:
    """Augmented mixable shuffle of two Mbar keys: heads add, tails quasi-shuffle."""
    a, b = tuple(a), tuple(b)
    if not a or not b:
        raise PreconditionError("Mbar keys need a head entry")
    head = a[0] + b[0]
    ta, tb = a[1:], b[1:]
    if not ta:
        return LinComb.monomial((head,) + tb, tag="Mbar")
    if not tb:
        return LinComb.monomial((head,) + ta, tag="Mbar")
    return quasi_shuffle(ta, tb, budget).map_keys(lambda w: (head,) + w, tag="Mbar")


def mbar_product(x: LinComb, y: LinComb, budget: int | None = None) -> LinComb:
    need = sum(quasi_shuffle_count(len(k1) - 1, len(k2) - 1) for k1 in x for k2 in y)
    _check_budget(need, budget)
    return x.bilinear(y, lambda k1, k2: diamond(k1, k2), tag="Mbar")


def p_q(x: LinComb) -> LinComb:
    """Rota-Baxter operator on the Mbar component: prepend a zero head."""
    return x.map_keys(lambda k: (0,) + tuple(k), tag="Mbar")


def rb_residual(x: LinComb, y: LinComb) -> LinComb:
    """``P(x)P(y) - P(xP(y)) - P(P(x)y) - P(xy)``; identically zero for weight 1."""
    px, py = p_q(x), p_q(y)
    return (
        mbar_product(px, py)
        - p_q(mbar_product(x, py))
        - p_q(mbar_product(px, y))
        - p_q(mbar_product(x, y))
    )


# --------------------------------------------------------- closed forms


def closed_zero_zero_b(m: int, n: int, b: int) -> LinComb:
    """Closed form for ``0^m * (0^n, b)``."""
    out = LinComb(tag="M")
    for i in range(m + 1):
        for k in range(n, m + n - i + 1):
            c = binomial(k, n) * binomial(n + 1, i + k - m + 1)
            out._iadd((0,) * k + (b,) + (0,) * i, c)
    return out


def closed_zero_zero(m: int, n: int) -> LinComb:
    """Closed form for ``0^m * 0^n``."""
    out = LinComb(tag="M")
    for k in range(n, m + n + 1):
        out._iadd((0,) * k, binomial(k, n) * binomial(n, k - m))
    return out


def closed_0a_0b(a: int, b: int, m: int, n: int) -> LinComb:
    """Closed form for ``(0^m, a) * (0^n, b)``."""
    out = LinComb(tag="M")
    for i in range(m + 1):
        for k in range(n, m + n - i + 1):
            out._iadd((0,) * k + (b,) + (0,) * i + (a,), binomial(k, n) * binomial(n + 1, i + k - m + 1))
    for i in range(n + 1):
        for k in range(m, m + n - i + 1):
            out._iadd((0,) * k + (a,) + (0,) * i + (b,), binomial(k, m) * binomial(m + 1, i + k - n + 1))
    for k in range(n, m + n + 1):
        out._iadd((0,) * k + (a + b,), binomial(k, n) * binomial(n, k - m))
    return out


# ---------------------------------------------------------------- Spitzer


def spitzer_check(k: int, n: int, budget: int | None = None) -> tuple[LinComb, LinComb]:
    """Both sides of the power-sum expansion of ``M_(k,...,k)`` (n copies).

    The right side is the signed sum over compositions ``c`` of ``n`` of
    ``M_(k c_1) ... M_(k c_l) / (l! c_1 ... c_l)`` expanded in the M basis.
    """
    if k < 1 or n < 1:
        raise PreconditionError("k and n must be positive")
    left = LinComb.monomial((k,) * n)
    right = LinComb(tag="M")
    cache: dict = {}
    for comp in compositions(n):
        ell = len(comp)
        denom = factorial(ell)
        for c in comp:
            denom *= c
        coeff = Fraction((-1) ** (n + ell), denom)
        # products only depend on the multiset of parts
        ms = tuple(sorted(comp))
        if ms not in cache:
            acc = LinComb.monomial(())
            for c in ms:
                acc = product(acc, LinComb.monomial((k * c,)), budget)
            cache[ms] = acc
        right = right + cache[ms] * coeff
    return left, right
