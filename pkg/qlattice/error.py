"""Package errors. Everything raised on purpose derives from
:class:`QLatticeError`.
"""
from typing import Any, Optional


class QLatticeError(Exception):

    """qlattice base error."""


class NotAPrimePower(QLatticeError, ValueError):

    """Field order is not a prime power."""


class TooLarge(QLatticeError, ValueError):

    """Field order exceeds the supported maximum."""


class DivisionByZero(QLatticeError, ZeroDivisionError):

    """Division by the zero element of a finite field."""


class DimensionMismatch(QLatticeError, ValueError):

    """Matrix column count differs from the ambient dimension."""


class AmbientMismatch(QLatticeError, ValueError):

    """Lattice elements (or families) live in different ambients."""


class RangeError(QLatticeError, ValueError):

    """Parameter out of range."""


class MissingParameter(QLatticeError, KeyError):

    """Bound parameters are incomplete."""


class ParameterMismatch(QLatticeError, ValueError):

    """Property parameters are inconsistent."""


class NotUniform(QLatticeError, ValueError):

    """Family is not uniform (all members of one size / dimension)."""


class CenterTooBig(QLatticeError, ValueError):

    """Star center is bigger than the star level."""


class NotOptimal(QLatticeError, ValueError):

    """Search result is not a proven optimum at the theorem bound."""


class HypothesisUnverified(QLatticeError):

    """Weighted covering hypothesis could neither be verified nor trusted."""


class PreconditionFailed(QLatticeError):

    """Family does not satisfy the precondition of an inequality."""


class UsageError(QLatticeError, ValueError):

    """Bad command line usage."""


class CapExceeded(QLatticeError):

    """Requested enumeration exceeds a configured cap."""

    def __init__(self, what: str, count: int, cap: int):
        """
        Args:
            what: Description of what was refused.
            count: Exact count that was refused.
            cap: Active cap.
        """
        super().__init__(f'{what}: {count} exceeds cap {cap}')
        self.what = what
        self.count = count
        self.cap = cap


class ResourceExhausted(QLatticeError):

    """Search ran out of nodes. Carries the best partial result."""

    def __init__(self, message: str, partial: Optional[Any] = None):
        super().__init__(message)
        self.partial = partial


class ParseError(QLatticeError, ValueError):

    """Malformed family file or property string."""

    def __init__(self, message: str, lineno: Optional[int] = None):
        if lineno is not None:
            message = f'line {lineno}: {message}'

        super().__init__(message)
        self.lineno = lineno


class SideConditionViolated(UserWarning):

    """Theorem side condition does not hold. The bound is still evaluated."""
