"""Exception types shared across the package."""

from __future__ import annotations


class InvalidParameterError(ValueError):
    """A parameter violates its documented constraint.

    Carries the offending field name so callers (and the CLI) can point
    at the exact flag or config key that was rejected.
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class NumericalFailure(ArithmeticError):
    """A solve produced something numerically unusable."""


class SingularSystemError(NumericalFailure):
    """Elimination hit a zero or near-zero pivot."""

    def __init__(self, row: int, pivot: float):
        self.row = row
        self.pivot = pivot
        super().__init__(
            f"near-zero pivot {pivot:.3e} at row {row}; system is singular "
            "or requires pivoting"
        )


class ResidualBoundError(NumericalFailure):
    """A finite element solve exceeded its residual tolerance."""

    def __init__(self, residual: float, bound: float):
        self.residual = residual
        self.bound = bound
        super().__init__(f"solve residual {residual:.3e} exceeds bound {bound:.3e}")
