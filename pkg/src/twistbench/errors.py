# errors.py - Exception hierarchy for twistbench
# Every precondition failure derives from PreconditionError so the CLI can map
# it to EXIT_USAGE. Absence results (no solution, no isomorphism) are None.


class TwistbenchError(Exception):
    """Base class for all twistbench errors."""


class PreconditionError(TwistbenchError):
    """The caller's input violates a precondition of the operation."""


class FieldError(PreconditionError):
    """p is not an odd prime."""


class ConfigError(PreconditionError):
    """Invalid run configuration."""


class DimensionMismatch(PreconditionError):
    """Matrix or vector shapes do not fit together."""


class AlgebraMismatch(PreconditionError):
    """Objects over different algebras were combined."""


class NotFiniteDimensional(PreconditionError):
    """Basis enumeration reached max_degree with a nonzero graded piece."""


class InhomogeneousRelation(PreconditionError):
    """A relation mixes paths of different degrees."""


class NotSpherical(PreconditionError):
    """End(P_i) is not isomorphic to k[x]/(x^2)."""


class NotAnConfiguration(PreconditionError):
    """The chosen vertices do not form an A_n-configuration."""


class CornerNotQuadratic(PreconditionError):
    """eΛe is not generated in degree one or is not quadratic."""


class GradingError(PreconditionError):
    """A bimodule or automorphism does not respect the grading."""


class MalformedTwistData(PreconditionError):
    """TwistData components do not fit together."""


class FrobeniusMissing(TwistbenchError):
    """No nondegenerate form was found where one is required."""


class SingularMatrix(TwistbenchError):
    """Inverse requested for a singular matrix."""
