"""Exception types shared across the package."""


class FloerlabError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(FloerlabError):
    pass


class NotSpd(FloerlabError):
    """Matrix failed the symmetric-positive-definite certificate."""


class NotSymmetric(FloerlabError):
    pass


class NotAntisymmetric(FloerlabError):
    pass


class NoConvergence(FloerlabError):
    pass


class SingularIterate(FloerlabError):
    """An iterate of the square-root recursion became numerically singular."""


class SingularShift(FloerlabError):
    """A - i*alpha is numerically singular: i*alpha sits in the truncated spectrum."""


class Degenerate(FloerlabError):
    """The 2-form is numerically degenerate at the queried point."""


class HeronFailure(FloerlabError):
    pass


class OutOfDomain(FloerlabError):
    pass


class SchemaError(FloerlabError):
    pass


class OddDimension(SchemaError):
    pass


class NondegeneracyProbeFailed(SchemaError):
    pass


class BadCutoff(FloerlabError):
    pass


class SingularHessian(FloerlabError):
    pass


class IntegrationBlowup(FloerlabError):
    pass


class DegenerateEndpoint(FloerlabError):
    pass


class AmbiguousCrossing(FloerlabError):
    pass


class LevelMismatch(FloerlabError):
    """Spectral flow counts at the two Sobolev levels disagree."""


class NonDecayingC(FloerlabError):
    """Multiplication blocks fail to vanish along the ends of the path."""


class SingularSample(FloerlabError):
    pass


class HypothesisFailed(FloerlabError):
    """A precondition check of a verification chain failed on the sampled grid."""
