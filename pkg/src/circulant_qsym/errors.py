"""
Exception hierarchy. Every error knows the exit status the CLI reports for it.
"""


class QsymError(Exception):
    exit_code = 1

    def to_dict(self):
        return {
            "error": type(self).__name__,
            "message": str(self),
            "exit_code": self.exit_code,
        }


class UsageError(QsymError):
    """Malformed command line or configuration value."""
    exit_code = 1


class MathInputError(QsymError):
    """The request is well formed but mathematically invalid."""
    exit_code = 2


class InvalidConnectionSet(MathInputError):
    pass


class InvalidParameter(MathInputError):
    pass


class InvalidPermutation(MathInputError):
    pass


class NotPrime(MathInputError):
    pass


class NotDivisor(MathInputError):
    pass


class NotASubgroup(MathInputError):
    pass


class NotEvenSubgroup(MathInputError):
    pass


class NotASolution(MathInputError):
    pass


class OrderMismatch(MathInputError):
    pass


class RangeExceeded(MathInputError):
    pass


class ToleranceAmbiguity(MathInputError):
    pass


class WitnessShapeError(MathInputError):
    pass


class InvariantBreach(QsymError):
    """A computed result contradicts a proven statement. Always a bug or a discovery."""
    exit_code = 3


class LemmaViolation(InvariantBreach):
    pass
