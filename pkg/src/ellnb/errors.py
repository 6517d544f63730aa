"""Exception hierarchy shared by all modules."""


class EnbError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(EnbError):
    pass


class CompositeCharacteristic(InvalidInput):
    pass


class ReducibleModulus(InvalidInput):
    pass


class DivisionByZero(EnbError, ZeroDivisionError):
    pass


class ScaleExceeded(EnbError):
    pass


class SingularCurve(InvalidInput):
    pass


class PoleEvaluation(EnbError):
    pass


class VerticalSlope(EnbError):
    pass


class NoSafeEvaluationPoint(EnbError):
    pass


class KernelOrderMismatch(InvalidInput):
    pass


class DegreeCollapse(EnbError):
    pass


class NoGeneratorFound(EnbError):
    pass


class NoTorsionPoint(EnbError):
    pass


class NoScalarSolution(EnbError):
    pass


class FrobeniusConditionFailed(EnbError):
    pass


class NotABasis(EnbError):
    pass


class NoAuxiliaryPoint(EnbError):
    pass


class ParameterSearchExhausted(EnbError):
    pass


class LengthMismatch(InvalidInput):
    pass


class NotInvertible(EnbError):
    def __init__(self, message, gcd=None):
        super().__init__(message)
        self.gcd = gcd


class ConsistencyError(EnbError):
    """The tensor formula disagreed with direct field multiplication."""
