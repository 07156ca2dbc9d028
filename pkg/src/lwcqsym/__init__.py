"""Quasi-symmetric functions indexed by left weak compositions.

Exact quasi-shuffle and Rota-Baxter algebra on the monomial and fundamental
bases, a truncated power-series oracle, and numeric multiple zeta values
(classical and q-analog) with certified error bounds.
"""

from .compositions import format_lwc, parse_lwc, refines
from .errors import (
    BudgetExceeded,
    DivergenceError,
    LwcError,
    ParseError,
    PreconditionError,
    ToleranceNotReached,
)
from .lincomb import LinComb

__all__ = [
    "BudgetExceeded",
    "DivergenceError",
    "LinComb",
    "LwcError",
    "ParseError",
    "PreconditionError",
    "ToleranceNotReached",
    "format_lwc",
    "parse_lwc",
    "refines",
]

__version__ = "0.1.0"
