"""Exception hierarchy.

Everything that signals a departure from the generic / well-posed regime
derives from :class:`PronyError`, so callers (and the CLI) can distinguish
"your input is malformed" (plain ``ValueError``) from "the data are not
generic enough for this operation".
"""


class PronyError(Exception):
    """Base class for numerical / genericity failures."""


class DegenerateProjection(PronyError):
    """Two projected vertices coincide; simple-knot machinery does not apply."""


class ComplexRoots(PronyError):
    """A root failed the realness test."""


class MultipleRoots(PronyError):
    """Two accepted real roots coincide within tolerance."""


class DegreeDrop(PronyError):
    """Leading coefficient numerically vanishes; effective degree is lower."""


class KernelDimensionError(PronyError):
    """Numerical nullity of the Hankel matrix is not one."""

    def __init__(self, nullity, singular_values=None):
        super().__init__(f"kernel dimension {nullity}, expected 1")
        self.nullity = nullity
        self.singular_values = singular_values


class SingularSystem(PronyError):
    """Amplitude system is numerically singular (nearly coincident knots)."""


class NoAnnihilator(PronyError):
    """No annihilating polynomial found up to the requested order."""


class AtomicMeasureError(PronyError):
    """Operation requires a density but the measure is atomic (d = 0)."""


class NotConcave(PronyError):
    """Profile fails the nonnegative-concave test."""


class OriginNotInK(PronyError):
    """Cross-section polytope does not contain the origin."""


class NegativeDensity(PronyError):
    """Density is negative where it must be nonnegative."""


class WindowTooShort(PronyError):
    """Moment order k below 2n - d: the variety membership test is vacuous."""


class DependentDirections(PronyError):
    """Two projection directions are linearly dependent."""


class SizeLimit(PronyError):
    """Matching enumeration refused: too many atoms."""
