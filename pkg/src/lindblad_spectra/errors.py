"""Exception types shared across the package."""


class LindbladSpectraError(Exception):
    """Base class for all package-specific errors."""


class OffUnitCircle(LindbladSpectraError):
    """Symbol evaluated at a point not on the unit circle."""


class DegenerateGamma(LindbladSpectraError):
    """Quadratic root solve requested with |gamma| below tolerance."""


class OnSymbolCurve(LindbladSpectraError):
    """A root of the symbol polynomial sits on the unit circle."""


class NoSplit(LindbladSpectraError):
    """Both symbol roots lie on the same side of the unit circle."""


class SizeTooSmall(LindbladSpectraError):
    """Finite volume too small for the model's interaction range."""


class SizeTooLarge(LindbladSpectraError):
    """Requested dense problem exceeds the configured size cap."""


class SingularOperator(LindbladSpectraError):
    """Matrix inversion requested for a (numerically) singular operator."""


class UnsupportedModel(LindbladSpectraError):
    """Closed-form requested for a model it is not available for."""


class EmptySetError(LindbladSpectraError):
    """Set operation (e.g. Hausdorff distance) on an empty point set."""


class NoConvergence(LindbladSpectraError):
    """Iterative routine failed to converge within its iteration cap."""
