"""Exception types shared across the toolkit."""


class TwistkitError(Exception):
    """Base class for all toolkit errors."""


class FieldConstructionError(TwistkitError):
    """Bad field descriptor: composite characteristic, reducible modulus, bad degree."""


class MixedFieldError(TwistkitError):
    """Arithmetic attempted between elements of different fields."""


class DimensionError(TwistkitError):
    """Vector/matrix/algebra dimension or field mismatch."""


class SingularMapError(TwistkitError):
    """A map required to be invertible has determinant zero."""


class CapExceeded(TwistkitError):
    """A desk-scale cap (exhaustive search size, elimination size) was exceeded."""


class HypothesisError(TwistkitError):
    """Preconditions of a closed-form identity or a constrained construction fail."""


class KaplanskiError(TwistkitError):
    """Unitalization element is a zero-divisor side: R_a or L_b is singular."""


class SpecError(TwistkitError):
    """Malformed spec file / descriptor (CLI exit code 2)."""
