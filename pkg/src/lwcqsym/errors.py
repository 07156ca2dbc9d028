"""Exception hierarchy shared by the whole package."""


class LwcError(Exception):
    """Base class for all package errors."""


class ParseError(LwcError, ValueError):
    """Malformed text for a composition, symbol or word."""


class PreconditionError(LwcError, ValueError):
    """An operation was called outside its stated domain."""


class DivergenceError(PreconditionError):
    """A zeta symbol whose nested sum does not converge."""


class BudgetExceeded(LwcError, RuntimeError):
    """Expansion would generate more terms than the configured budget."""


class ToleranceNotReached(LwcError, RuntimeError):
    """Numeric evaluation hit its cutoff cap before reaching the tolerance."""
