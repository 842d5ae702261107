"""Exception types raised across the package."""


class DennistonError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(DennistonError, ValueError):
    pass


class EvenPrimeUnsupported(DennistonError, ValueError):
    pass


class RangeError(DennistonError, ValueError):
    pass


class SizeGuardExceeded(DennistonError, ValueError):
    pass


class TowerMismatch(DennistonError, TypeError):
    pass


class NotInSubfield(DennistonError, ValueError):
    pass


class SingularBasis(DennistonError, ArithmeticError):
    pass


class ZeroHasNoLog(DennistonError, ValueError):
    pass


class ZeroHasNoClass(DennistonError, ValueError):
    pass


class OrderDoesNotDivide(DennistonError, ValueError):
    pass


class IndexOutOfRange(DennistonError, IndexError):
    pass


class ParamInconsistency(DennistonError, ValueError):
    pass


class NotVerified(DennistonError):
    pass


class NonIntegralCharacterSum(DennistonError, ArithmeticError):
    pass


class SizeMismatch(DennistonError, ValueError):
    pass


class ContainsIdentity(DennistonError, ValueError):
    pass


class NotSymmetricSet(DennistonError, ValueError):
    pass


class ParseError(DennistonError, ValueError):
    pass


class ModulusMismatch(DennistonError, ValueError):
    pass
