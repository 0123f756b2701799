"""Exception types shared across the library."""


class SupergeoError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(SupergeoError):
    """Operands live over different spaces, charts or variable counts."""


class ParityError(SupergeoError):
    """A homogeneous object was required, or graded data violates parity."""


class DivisionByZero(SupergeoError, ZeroDivisionError):
    """Division by the zero polynomial or zero rational function."""


class PoleError(SupergeoError, ZeroDivisionError):
    """The denominator of a rational function vanishes at the point."""


class SingularGram(SupergeoError):
    """A Gram block has zero determinant in the function field."""


class OddSymplecticDimension(SupergeoError):
    """A nondegenerate skew block needs an even number of odd directions."""


class TorsionNonZero(SupergeoError):
    """An operation required a torsion-free connection."""


class PairOrderMismatch(SupergeoError):
    """Form arguments have incompatible pair orders or arities."""


class ExpressionError(SupergeoError):
    """Problem while parsing an expression string.

    ``position`` is the 0-based offset of the offending token.
    """

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class UnknownVariable(ExpressionError):
    """Variable index out of range for the chart."""


class NegativeExponent(ExpressionError):
    """Exponents must be nonnegative integers."""


class SceneError(SupergeoError):
    """A scene file violates the schema."""
