"""
Exception hierarchy for the hermitian lattice toolkit.

Every library operation raises a subclass of LatticeError; only the command line
front end turns them into exit codes and JSON error objects.
"""

from typing import Any, Dict, Optional


class LatticeError(ValueError):
    """Base class for all toolkit errors."""

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.field = field

    def to_dict(self) -> Dict[str, Any]:
        return {
            'error': type(self).__name__,
            'message': self.message,
            'field': self.field,
        }


# ring
class UnsupportedDiscriminant(LatticeError):
    pass


class MixedRings(LatticeError):
    pass


class DivisionByZero(LatticeError, ZeroDivisionError):
    pass


class NotRamified(LatticeError):
    pass


# linalg
class NonIntegralEntries(LatticeError):
    pass


class SingularMatrix(LatticeError):
    pass


class NotHermitian(LatticeError):
    pass


# lattice
class SingularGram(LatticeError):
    pass


class NotASublattice(LatticeError):
    pass


class NonIntegralLattice(LatticeError):
    pass


class ActionIncompatible(LatticeError):
    pass


class WrongDiscriminant(LatticeError):
    pass


class ZeroScalar(LatticeError):
    pass


class NotRamifiedElement(LatticeError):
    pass


# cycles
class NotDefinite(LatticeError):
    pass


class IsotropicVector(LatticeError):
    pass


class NotInLattice(LatticeError):
    pass


class WrongSignature(LatticeError):
    pass


# catalog
class UnknownCase(LatticeError):
    pass


class BadD(LatticeError):
    pass


# input / settings
class InputFormatError(LatticeError):
    """Raised when JSON or element text cannot be parsed."""


class ConfigError(LatticeError):
    pass
