"""Exception types shared across the package."""


class DensityKError(Exception):
    """Base class for all errors raised by this package."""


class EmptyInputError(DensityKError):
    """An operation that requires at least one point received none."""


class InsufficientPointsError(DensityKError):
    """Fewer points than the operation needs (e.g. density estimation needs >= 2)."""


class DegenerateCentroidError(DensityKError):
    """The 3-D vector mean of the input points cancels out (antipodal input)."""


class DocumentParseError(DensityKError):
    """Input bytes are not valid JSON or a required field is missing."""


class DocumentSchemaError(DensityKError):
    """Input parsed but violates a document invariant."""


class CombinationExplosionError(DensityKError):
    """The candidate combination count exceeds the configured cap."""


class NoAnchorsError(DensityKError):
    """No unambiguous mention exists to anchor the referent heuristic."""


class MissingTruthError(DensityKError):
    """Scoring was requested for a document without ground truth."""


class RejectionOverflowError(DensityKError):
    """Rejection sampling could not satisfy the separation constraints."""
