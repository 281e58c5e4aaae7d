"""Exception hierarchy shared by every module of the package."""


class KummerFlagsError(Exception):
    """Base class for all errors raised by kummerflags."""


# finite fields
class CharacteristicNotPrime(KummerFlagsError):
    pass


class ReducibleModulus(KummerFlagsError):
    pass


class NonPrimitiveGenerator(KummerFlagsError):
    pass


class SpecMismatch(KummerFlagsError):
    pass


class DivisionByZero(KummerFlagsError, ZeroDivisionError):
    pass


class OddCharacteristic(KummerFlagsError):
    pass


# curves and functions
class NonSeparable(KummerFlagsError):
    pass


class GcdViolation(KummerFlagsError):
    pass


class ExplicitOrderingIncomplete(KummerFlagsError):
    pass


class UnsupportedPlace(KummerFlagsError):
    pass


class PoleAtPlace(KummerFlagsError):
    pass


class NonZeroDegree(KummerFlagsError):
    pass


# codes and flags
class InternalRankFailure(KummerFlagsError):
    """An invariant of the flag construction was violated (a bug)."""


class HStarNotReached(KummerFlagsError):
    pass


class ZeroComponentInX(KummerFlagsError):
    pass


class DimensionMismatch(KummerFlagsError):
    pass


class WrongDivisorShape(KummerFlagsError):
    pass


class SingularSystem(KummerFlagsError):
    """Interpolation system was singular (a bug: it is always solvable)."""


class NotIsometryDual(KummerFlagsError):
    pass


class ConstructionFailed(KummerFlagsError):
    pass


class PeriodNotFoundWithinBound(KummerFlagsError):
    pass


class PreconditionViolated(KummerFlagsError):
    pass


class ConfigError(KummerFlagsError):
    """Malformed or inconsistent curve configuration."""
