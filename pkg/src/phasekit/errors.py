"""Exception hierarchy shared by all phasekit modules.

Two branches matter for the CLI exit-code contract: ``ValidationError``
(bad inputs or parameter constraints, exit code 1) and ``NumericalError``
(failures detected during or after a computation, exit code 2).
"""


class PhasekitError(Exception):
    """Base class for all phasekit errors."""


class ValidationError(PhasekitError):
    """Input, schema, or parameter-constraint violation (CLI exit 1)."""


class NumericalError(PhasekitError):
    """Failure detected while running numerics (CLI exit 2)."""


# -- core -------------------------------------------------------------------

class GridTooCoarseError(ValidationError):
    """Grid spacing cannot resolve the requested packet."""


class PacketOutOfBoundsError(ValidationError):
    """State support does not decay below tolerance at the grid edges."""


class BasisMismatchError(ValidationError):
    """Observable sampled on the wrong grid / unknown basis label."""


# -- phasespace -------------------------------------------------------------

class LambdaRangeError(ValidationError):
    """Requested shift exceeds the grid extent of the shifted overlap."""


class ChiNotDecayedError(NumericalError):
    """Characteristic function has not decayed at its grid boundary."""


class GridMismatchError(ValidationError):
    """Two grid-based objects do not live on compatible grids."""


class BadWeightsError(ValidationError):
    """Mixture weights are negative or do not sum to one."""


# -- dynamics ---------------------------------------------------------------

class CflViolationError(ValidationError):
    """Time step exceeds the advection stability bound."""


class DegreeTooHighError(ValidationError):
    """Polynomial potential degree above the supported maximum."""


class BoundaryContaminationError(NumericalError):
    """Evolved state reached the grid boundary above tolerance."""


# -- tomography -------------------------------------------------------------

class DegenerateRayError(ValidationError):
    """Projection ray (lambda, mu) is numerically zero."""


class NuRangeError(ValidationError):
    """Quadrature grid does not cover or resolve the projected support."""


class InsufficientAngularCoverageError(ValidationError):
    """Ray family does not cover [0, pi) uniformly with enough angles."""


class NonUnitRayError(ValidationError):
    """Reconstruction requires unit-normalized rays."""


# -- spin / histories -------------------------------------------------------

class NonUnitVectorError(ValidationError):
    """Direction vector is not unit length."""


class InvalidStateError(ValidationError):
    """Density matrix fails hermiticity, trace, or positivity checks."""


class DimensionMismatchError(ValidationError):
    """Operator / vector dimensions do not agree."""


class NonExhaustiveFamilyError(ValidationError):
    """Projector family does not resolve the identity at some time slot."""


# -- decay ------------------------------------------------------------------

class WindowError(ValidationError):
    """Fit window is empty or outside the sampled/reliable time range."""


class NonpositiveProbabilityError(ValidationError):
    """Survival probability non-positive inside the fit window."""


class TimesNotSampledError(ValidationError):
    """Requested times are absent from the survival record."""


class PoleProximityError(ValidationError):
    """Resolvent evaluated too close to the real spectrum."""


class NoConvergenceError(NumericalError):
    """Iterative root search failed to converge."""


class ContinuationStripError(NumericalError):
    """Located pole lies outside the valid continuation strip."""


# -- cli --------------------------------------------------------------------

class SchemaError(ValidationError):
    """JSON document does not match the expected schema."""
