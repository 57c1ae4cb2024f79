"""Exception hierarchy shared by every module of the package."""


class LinsysError(Exception):
    """Base class for all errors raised by linsys."""


# -- validation -------------------------------------------------------------

class ValidationError(LinsysError, ValueError):
    """Raw input does not describe a linear system."""


class DuplicatePoint(ValidationError):
    pass


class DuplicateLine(ValidationError):
    pass


class UnknownPointInLine(ValidationError):
    pass


class EmptyLine(ValidationError):
    pass


class PairwiseIntersectionViolation(ValidationError):
    """Two distinct lines share two or more points."""

    def __init__(self, first: int, second: int, shared):
        self.pair = (first, second)
        self.shared = tuple(shared)
        super().__init__(
            f"lines {first} and {second} share {len(self.shared)} points: "
            + ", ".join(self.shared)
        )


# -- structural operations --------------------------------------------------

class UnknownPoint(LinsysError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class IndexOutOfRange(LinsysError, IndexError):
    pass


class DuplicateInducedLine(LinsysError, ValueError):
    pass


class SizeLimitExceeded(LinsysError):
    pass


# -- groups -----------------------------------------------------------------

class GroupError(LinsysError, ValueError):
    pass


class NonPositiveOrder(GroupError):
    pass


class GroupNotNeutralSum(GroupError):
    pass


class GroupHasInvolution(GroupError):
    pass


class EvenOrder(GroupError):
    pass


class BadGroupDescriptor(GroupError):
    pass


# -- generators -------------------------------------------------------------

class GeneratorError(LinsysError, ValueError):
    pass


class NotPrime(GeneratorError):
    pass


class NoTriangle(GeneratorError):
    pass


class InvalidTriangle(GeneratorError):
    pass


class NotASubsystem(GeneratorError):
    pass


class EnumerationCapExceeded(GeneratorError):
    pass


class InfeasibleParameters(GeneratorError):
    pass


# -- solvers / levi / verify ------------------------------------------------

class BudgetExhausted(LinsysError):
    """An exact search hit its node budget before proving optimality."""

    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class FewerThanTwoPoints(LinsysError, ValueError):
    pass


class LabelCountMismatch(LinsysError, ValueError):
    pass


class UnknownTheoremId(LinsysError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""
