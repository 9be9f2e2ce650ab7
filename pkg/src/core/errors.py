"""
Exception hierarchy for RindlerBox

Every failure raised by the numerical library derives from RindlerBoxError so
the command line can map them onto exit codes in one place.
"""
from typing import Optional


class RindlerBoxError(Exception):
    """Base class for all library errors"""


class DomainError(RindlerBoxError, ValueError):
    """A physical or numerical parameter is outside its allowed domain"""

    def __init__(self, message: str, field: Optional[str] = None, value=None):
        super().__init__(message)
        self.field = field
        self.value = value


class TruncationError(RindlerBoxError):
    """The Fock cutoff needed for the requested tail mass exceeds the hard cap"""

    def __init__(self, required_epsilon: float, hard_cap: int, achievable_tail: float):
        super().__init__(
            f"tail mass {achievable_tail:.3e} at hard cap {hard_cap} "
            f"exceeds epsilon {required_epsilon:.3e}"
        )
        self.required_epsilon = required_epsilon
        self.hard_cap = hard_cap
        self.achievable_tail = achievable_tail


class LayoutError(RindlerBoxError, ValueError):
    """Unknown factor label, label collision or dimension mismatch"""


class OperatorValidationError(RindlerBoxError):
    """Base for operator checks; carries the measured deviation"""

    def __init__(self, message: str, deviation: float):
        super().__init__(f"{message} (deviation {deviation:.3e})")
        self.deviation = deviation


class NonHermitianError(OperatorValidationError):
    pass


class PSDViolationError(OperatorValidationError):
    pass


class TraceError(OperatorValidationError):
    pass


class DimensionCapError(RindlerBoxError):
    """Dense expansion would exceed the configured dimension cap"""

    def __init__(self, dim: int, cap: int):
        super().__init__(f"dense dimension {dim} exceeds cap {cap}")
        self.dim = dim
        self.cap = cap


class NotXStateError(RindlerBoxError, ValueError):
    """Closed-form discord requested for an operator that is not an X-state"""


class BlockShapeError(RindlerBoxError, ValueError):
    """Blocks of a BlockedDensity do not share one helicity shape"""
