from typing import Any, Optional


class HopfError(Exception):
    """Base error for the engine"""

    def __init__(self, detail: str, witness: Optional[Any] = None):
        super().__init__(detail)
        self.detail = detail
        self.witness = witness

    def __str__(self) -> str:
        if self.witness is None:
            return self.detail
        return f"{self.detail} (witness: {self.witness})"


class FieldMismatchError(HopfError):
    """Operands live in different fields"""


class DivisionByZeroError(HopfError, ZeroDivisionError):
    """Inverse of zero requested"""


class DimensionMismatchError(HopfError):
    """Shapes or ambient dimensions do not agree"""


class AlgebraMismatchError(HopfError):
    """Elements or maps belong to different algebras"""


class NotInvertibleError(HopfError):
    """An element, tensor or map has no inverse"""


class ParseError(HopfError):
    """Malformed input, with the location of the offending entry"""

    def __init__(self, detail: str, location: str = "", witness: Optional[Any] = None):
        super().__init__(f"{location}: {detail}" if location else detail, witness)
        self.location = location


class CertificationError(HopfError):
    """A structural condition required by a construction does not hold"""

    def __init__(self, condition: str, detail: str, witness: Optional[Any] = None):
        super().__init__(f"{condition}: {detail}", witness)
        self.condition = condition


class ConsistencyError(HopfError):
    """Two independent computations of the same object disagree"""


class TheoremViolationError(HopfError):
    """A proven equivalence came out false; the input or the engine is corrupt"""
