"""Exception hierarchy.

Everything derived from :class:`InputError` is a problem with what the caller
asked for (bad curve, bad degree, malformed expression); the CLI maps those to
exit code 2.  The rest signal failed preconditions or internal inconsistencies.
"""


class G2Error(Exception):
    pass


class InputError(G2Error, ValueError):
    pass


class SmallPrime(InputError):
    pass


class BadDegree(InputError):
    pass


class NonSquarefree(InputError):
    pass


class UnsupportedMultiplicity(InputError):
    pass


class DegreeTooSmall(InputError):
    pass


class BoundViolation(InputError):
    pass


class ExpressionError(InputError):
    pass


class DimensionMismatch(G2Error, ValueError):
    pass


class InsufficientPoints(G2Error):
    pass


class NotAPencil(G2Error):
    pass


class NotInSpan(G2Error):
    pass


class PoleAtPoint(G2Error, ZeroDivisionError):
    pass


class DegenerateFiber(G2Error):
    pass


class UnexpectedRank(G2Error):
    pass


class NoAdmissibleD(G2Error):
    pass


class PreconditionViolated(G2Error):
    pass


class NoRowMatched(G2Error):
    pass
