"""Exception hierarchy shared by all synlab modules."""


class SynlabError(Exception):
    """Base class for all errors raised by synlab."""


# linear algebra kernel

class NonConvergence(SynlabError):
    """Eigensolver failed to reach its residual target within the sweep budget."""


class DimensionMismatch(SynlabError):
    """Operands have incompatible dimensions."""


class DomainError(SynlabError):
    """A scalar function was applied outside its domain (beyond tolerance)."""


# order / Jordan structure

class NotPositive(SynlabError):
    """Square root requested for a matrix that is not positive semidefinite."""


class NotInvertible(SynlabError):
    """No inverse: some eigenvalue sits below the invertibility cutoff."""


# projections, effects, symmetries

class InvariantViolation(SynlabError):
    """A constrained element (projection, effect, symmetry) fails its invariant."""


class NotProjection(InvariantViolation):
    """Eigenvalues are not within tolerance of {0, 1}."""


class SupportViolation(SynlabError):
    """Element is not supported in the partial symmetry's support projection."""


class NotStrictlyPositive(SynlabError):
    """Operation requires a nonzero positive semidefinite input."""


# algebra structure

class AlgebraMismatch(SynlabError):
    """Elements do not belong to one common algebra."""


class ValidationError(SynlabError):
    """A matrix violates the block structure or symmetry of its algebra."""


class UnitMissing(SynlabError):
    """Closure check requires the unit to be a member of the subspace."""


# antilattice machinery

class PreconditionUnmet(SynlabError):
    """A theorem-replay check was invoked outside its hypothesis."""


class NotAWitnessPair(SynlabError):
    """Witness pipeline needs an incomparable pair whose infimum exists."""


class NotFactor(SynlabError):
    """Operation is only defined in a single full matrix factor."""


class NotOrthogonal(SynlabError):
    """Projections are not orthogonal within tolerance."""


class ZeroProjection(SynlabError):
    """A nonzero projection is required."""


class NotExchanging(SynlabError):
    """Symmetry does not exchange the projection with its orthocomplement."""


class TrivialProjection(SynlabError):
    """Construction requires a projection different from 0 and 1."""


class HypothesisViolation(SynlabError):
    """Corner-descent hypotheses (orthogonality, tpt <= q) do not hold."""


# command line

class ParseError(SynlabError):
    """Input document is malformed."""


class UnknownCommand(SynlabError):
    """Dispatch received an unrecognized subcommand."""
