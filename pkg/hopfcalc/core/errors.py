"""
Exception hierarchy shared by the library, the services and the command router.
"""
from typing import Any, Optional


class HopfCalcError(Exception):
    """Base class for every error raised by hopfcalc."""


class FreeModuleError(HopfCalcError):
    """Arity mismatch, slot out of range or an invalid value in a linear combination."""


class UndefinedBasisError(FreeModuleError):
    """A basis-level map was asked for a key it does not cover."""

    def __init__(self, key: Any, message: Optional[str] = None):
        self.key = key
        super().__init__(message or f"map is undefined on basis element {key!r}")


class DegreeError(HopfCalcError):
    """Degree requested for the zero element."""


class NonzeroCounitError(HopfCalcError):
    """The reduced coproduct was requested outside ker ε."""


class NotConilpotentError(HopfCalcError):
    """A search bound guaranteed by conilpotency was exceeded."""


class InvalidInstanceError(HopfCalcError):
    """A structure violates a precondition the algorithms rely on."""


class ExpressionError(HopfCalcError):
    """Base class for expression parsing failures."""


class ExpressionSyntaxError(ExpressionError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


class UnknownGeneratorError(ExpressionError):
    def __init__(self, literal: str, position: int):
        self.literal = literal
        self.position = position
        super().__init__(f"unknown generator {literal!r} at position {position}")


class ProductNotAllowedError(ExpressionError):
    """Instance product used where only the coalgebra structure is available."""


class UnknownInstanceError(HopfCalcError):
    pass


class ConfigError(HopfCalcError):
    pass
