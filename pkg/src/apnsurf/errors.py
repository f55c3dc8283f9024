"""Exception types shared across the package."""


class ApnToolError(Exception):
    """Base class for all errors raised by this package."""


class ReduciblePolynomial(ApnToolError):
    """A reduction modulus that is not irreducible over GF(2)."""


class DegreeMismatch(ApnToolError):
    """A polynomial whose degree disagrees with the requested extension degree."""


class FieldMismatch(ApnToolError):
    """Operands that do not belong to the same field."""


class DivisionByZero(ApnToolError):
    """Inversion or division of the zero element."""


class NotDivisible(ApnToolError):
    """Exact division failed; carries the offending remainder."""

    def __init__(self, msg, remainder=None):
        super().__init__(msg)
        self.remainder = remainder


class DegreeTooSmall(ApnToolError):
    """An operation that needs a higher-degree input."""


class DegreeCapExceeded(ApnToolError):
    """A factorization or elimination task above the supported degree cap."""


class NoGoodEvaluationPoint(ApnToolError):
    """No specialization point in the coefficient field met the requirements."""


class BecameZero(ApnToolError):
    """Normalization stripped every term of the input."""


class ZeroScalar(ApnToolError):
    """An affine substitution with a vanishing scale factor."""


class InvalidParameters(ApnToolError):
    """Arguments outside the documented domain of an operation."""


class FieldTooLarge(ApnToolError):
    """A table-driven operation requested over a field above its size gate."""


class QAffineInput(ApnToolError):
    """Surface construction for a map whose quotient numerator vanishes."""


class DegreeOutOfRange(ApnToolError):
    """A map degree outside the range the surface machinery accepts."""


class BudgetExceeded(ApnToolError):
    """Operation cost above the configured budget; may carry a partial result."""

    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


class DiagonalNotConstant(ApnToolError):
    """Diagonal restriction of the surface form is non-constant; carries its zeros."""

    def __init__(self, msg, points=None):
        super().__init__(msg)
        self.points = points if points is not None else []


class CorruptCheckpoint(ApnToolError):
    """A scan checkpoint that fails validation against the current job."""


class ParseError(ApnToolError):
    """Malformed polynomial or family expression."""
