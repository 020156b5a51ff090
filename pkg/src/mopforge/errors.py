class MopForgeError(Exception):
    """Base class for all errors raised by mopforge."""


class NonMonomialDivision(MopForgeError, ValueError):
    pass


class SizeMismatch(MopForgeError, ValueError):
    pass


class NotInverse(MopForgeError, ValueError):
    """A claimed inverse matrix polynomial is not a two-sided inverse."""


class NonPolynomialAdjoint(MopForgeError):
    """The formal W-adjoint keeps exponential factors in its coefficients."""


class NotAnEigenfunction(MopForgeError):
    pass


class DegreeProfileError(MopForgeError, ValueError):
    pass


class ShapeViolation(MopForgeError):
    pass


class NotInPolynomialAlgebra(MopForgeError):
    pass


class NonzeroRemainder(MopForgeError):
    pass


class SingularMatrix(MopForgeError, ZeroDivisionError):
    pass


class InsufficientNodes(MopForgeError, ValueError):
    pass


class InconsistentRecurrence(MopForgeError):
    pass


class SolverVerificationError(MopForgeError):
    """A fitted basis operator failed on the held-out degree range."""


class InconsistencyError(MopForgeError):
    """A computed object contradicts a structural theorem about the weight."""


class SingularGramBlock(MopForgeError, ZeroDivisionError):
    """A Gram block is singular, i.e. the weight is not positive definite."""
