"""Exception hierarchy shared by all ergochan modules."""


class ErgochanError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(ErgochanError, ValueError):
    """Operands have incompatible or invalid shapes."""


class DomainError(ErgochanError, ValueError):
    """A parameter lies outside its admissible range."""


class NumericError(ErgochanError):
    """An iterative linear-algebra routine failed to converge."""

    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations


class IllConditionedDecompositionError(ErgochanError):
    """The eigenvector matrix is too ill-conditioned to trust the
    spectral projectors.  Signals a near-defective peripheral cluster,
    which for exactly power-bounded maps indicates tolerance
    misconfiguration rather than genuine structure."""

    def __init__(self, message, condition_number):
        super().__init__(message)
        self.condition_number = condition_number


class DecompositionFailureError(ErgochanError):
    """The stable remainder still has spectral radius >= 1, i.e. the
    peripheral eigenvalue set passed in was incomplete."""

    def __init__(self, message, spectral_radius):
        super().__init__(message)
        self.spectral_radius = spectral_radius


class SplittingViolationError(ErgochanError):
    """Ker(I-L) and Rng(I-L) fail to span the whole space at the given
    tolerance."""


class DegenerateInputError(ErgochanError):
    """The requested computation is undefined for this input (e.g. a
    peripheral restriction when the peripheral spectrum is empty)."""


class SpecFormatError(ErgochanError):
    """A channel spec file could not be parsed."""


class SpecValidationError(ErgochanError):
    """A channel spec file parsed but violates the schema invariants."""


class CatalogLookupError(ErgochanError, KeyError):
    """Unknown catalog entry name."""
