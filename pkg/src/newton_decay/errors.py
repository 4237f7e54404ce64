"""Exception types shared across the package."""

from __future__ import annotations


class NewtonDecayError(Exception):
    """Base class for all package-specific errors."""


class ExpressionError(NewtonDecayError):
    """Malformed term-sum expression; carries the offending position."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ConstantTermError(NewtonDecayError):
    """A term sum contains a constant term, so it cannot vanish at the origin."""


class EmptySumError(NewtonDecayError):
    """A term sum has no terms left after merging."""


class DegenerateQuadrantError(NewtonDecayError, ValueError):
    """A term sum vanishes identically on an open quadrant.

    Such inputs (possible only with mixed abs/plain terms) fall outside the
    analytic setup: the zero set is not a union of curves.
    """


class DivergentError(NewtonDecayError):
    """A symbolic or numeric integral is infinite for the requested exponent."""


class ContractViolationError(NewtonDecayError):
    """An internal invariant that the theory guarantees failed to hold.

    Raised instead of silently proceeding when e.g. a dominant coefficient
    comes out nonpositive or a log power exceeds 1.
    """


class ToleranceNotMetError(NewtonDecayError):
    """Quadrature refinement hit its depth/budget cap before reaching tol."""


class DivergenceSuspectedError(NewtonDecayError):
    """Quadrature estimates keep growing under refinement."""


class BudgetExceededError(NewtonDecayError):
    """A numeric request exceeds the configured desk-scale budget."""


class PreconditionError(NewtonDecayError):
    """An oracle check was invoked on an input violating its hypothesis."""
