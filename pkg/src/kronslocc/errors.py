"""Exception types shared across the package."""


class KronSloccError(Exception):
    """Base class for all errors raised by this package."""


class ZeroPolynomial(KronSloccError, ValueError):
    pass


class DimensionMismatch(KronSloccError, ValueError):
    pass


class DegenerateTriple(KronSloccError, ValueError):
    """Three-point LFT requested with repeated source or target points."""


class IrrationalSpectrum(KronSloccError):
    """An invariant polynomial has a factor with no Gaussian-rational root.

    ``factor`` holds the offending irreducible residual.
    """

    def __init__(self, factor, message: str | None = None):
        self.factor = factor
        super().__init__(message or f"spectrum is not Gaussian-rational: irreducible factor {factor}")
