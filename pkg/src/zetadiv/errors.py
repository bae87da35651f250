"""Exception types.

Input problems (bad parameters, points off the curve, missing roots of unity)
derive from :class:`InputError`; a failed internal identity raises
:class:`InternalInvariantViolation`.  The CLI maps the two families to exit
codes 1 and 2.
"""


class ZetadivError(Exception):
    pass


class InputError(ZetadivError, ValueError):
    pass


class InternalInvariantViolation(ZetadivError, RuntimeError):
    pass


# ff
class DivisionByZero(InputError, ZeroDivisionError):
    pass


class FieldMismatch(InputError):
    pass


class NoRootOfUnity(InputError):
    pass


class NotAnNthPower(InputError):
    pass


class ZeroPolynomial(InputError):
    pass


class NoEmbeddingRecorded(InputError):
    pass


class NotIrreducible(InputError):
    pass


# ring
class CurveMismatch(InputError):
    pass


class ZeroElement(InputError):
    pass


class NonUnitConstantTerm(InputError):
    pass


class PrecisionExhausted(InternalInvariantViolation):
    pass


# curve
class NotCoprime(InputError):
    pass


class DuplicateAlpha(InputError):
    pass


class CharacteristicDividesN(InputError):
    pass


class PointNotOnCurve(InputError):
    pass


class InfinityNotShiftable(InputError):
    pass


# divide
class InfinityPoint(InputError):
    pass


class InvalidRootChoice(InputError):
    pass


class ZeroEntry(InternalInvariantViolation):
    pass


# jac
class NonzeroDegree(InputError):
    pass


class UnsupportedSupport(InputError):
    pass


class SearchSpaceTooLarge(InputError):
    pass


# gaps
class InvalidResidue(InputError):
    pass


class ConfigError(InputError):
    pass
