"""
Error types - every failure carries a human-readable detail and the process exit code
"""

from typing import Optional


class LPTError(Exception):
    """Base error, modelled on HTTPException: a detail string plus a status (exit) code"""

    exit_code: int = 2

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class ConfigError(LPTError):
    exit_code = 1


class ComputationError(LPTError):
    exit_code = 2


class LeadingOrderError(ComputationError):
    pass


class InsufficientCoefficientsError(ComputationError):
    def __init__(self, required: int, available: int):
        super().__init__(
            f"insufficient potential coefficients: {required} required, {available} available"
        )
        self.required = required
        self.available = available


class CoefficientCapError(ComputationError):
    pass


class ResidueConditionError(ComputationError):
    pass


class DimensionMismatchError(ComputationError):
    pass


class SingularPadeError(ComputationError):
    pass


class PadeOrderError(ComputationError):
    pass


class SeriesTooShortError(ComputationError):
    pass


class ClosedFormUnavailableError(ComputationError):
    pass


class OracleError(ComputationError):
    pass


class NoBoundStateError(OracleError):
    pass


class GridTooCoarseError(OracleError):
    pass


class StateDissolvedError(OracleError):
    pass


class ToleranceExceededError(LPTError):
    exit_code = 3
