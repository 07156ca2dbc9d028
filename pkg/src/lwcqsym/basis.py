"""Change of basis between the monomial and fundamental LWC bases."""

from __future__ import annotations

import json
from math import comb, prod

from .compositions import (
    as_lwc,
    block_alignment,
    blocks,
    format_lwc,
    lwcs,
    refinements_below,
    zero_count,
)
from .errors import BudgetExceeded
from .lincomb import LinComb

MATRIX_BUDGET = 2000


def coeff_c(alpha, beta) -> int:
    """Coefficient of ``M_beta`` in ``F_alpha``: a product of binomials, or 0."""
    alpha, beta = as_lwc(alpha), as_lwc(beta)
    js = block_alignment(alpha, beta)
    if js is None:
        return 0
    return prod(comb(i, j) for (i, _), j in zip(blocks(alpha), js))


def f_to_m(alpha) -> LinComb:
    """Expand ``F_alpha`` in the monomial basis."""
    alpha = as_lwc(alpha)
    return LinComb(((b, coeff_c(alpha, b)) for b in refinements_below(alpha)), tag="M")


def m_to_f(alpha) -> LinComb:
    """Expand ``M_alpha`` in the fundamental basis."""
    alpha = as_lwc(alpha)
    return LinComb(
        ((b, (-1 if (len(b) - len(alpha)) % 2 else 1) * coeff_c(alpha, b)) for b in refinements_below(alpha)),
        tag="F",
    )


def f_combination_to_m(x: LinComb) -> LinComb:
    out = LinComb(tag="M")
    for k, c in x.items():
        out = out + f_to_m(k) * c
    return out


def m_combination_to_f(x: LinComb) -> LinComb:
    out = LinComb(tag="F")
    for k, c in x.items():
        out = out + m_to_f(k) * c
    return out


def slice_keys(n: int, zero_budget: int) -> list[tuple[int, ...]]:
    """LWCs of size ``n`` with at most ``zero_budget`` zeros, in a linear extension of refinement.

    Refinements come first: fewer zeros, then more positive parts.
    """
    keys = list(lwcs(n, zero_budget))
    keys.sort(key=lambda a: (zero_count(a), zero_count(a) - len(a), a))
    return keys


def transition_matrix(n: int, zero_budget: int, direction: str = "FtoM", budget: int | None = None):
    """Integer matrix of the transform on a finite slice.

    Column ``j`` holds the expansion of the ``j``-th basis element, so the
    matrix is upper unitriangular.  Returns ``(keys, rows)``.
    """
    keys = slice_keys(n, zero_budget)
    if len(keys) > (MATRIX_BUDGET if budget is None else budget):
        raise BudgetExceeded(f"slice has {len(keys)} elements")
    expand = {"FtoM": f_to_m, "MtoF": m_to_f}[direction]
    index = {k: t for t, k in enumerate(keys)}
    rows = [[0] * len(keys) for _ in keys]
    for j, k in enumerate(keys):
        for b, c in expand(k).items():
            # refining never adds zeros, so b stays inside the slice
            rows[index[b]][j] = int(c)
    return keys, rows


def matrix_to_json(keys, rows) -> str:
    return json.dumps({"keys": [format_lwc(k) for k in keys], "entries": rows})
