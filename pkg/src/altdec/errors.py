"""Exception hierarchy shared by every altdec module."""


class AltdecError(Exception):
    """Base class for all package-specific errors."""


class NotHermitian(AltdecError):
    """Input matrix fails the Hermitian symmetry check."""


class NoConvergence(AltdecError):
    """Eigensolver failed to converge."""


class RankDeficient(AltdecError):
    """Matrix does not have full column rank (or the post-check FA = I failed)."""


class DuplicateFrequencies(AltdecError):
    """Harmonic frame frequency list contains repeats."""


class NonUnitBaseVector(AltdecError):
    """Generator base coefficients do not have unit 2-norm."""


class OrderExceedsLength(AltdecError):
    """Noise-shaping order r exceeds the sample count."""


class InvalidPlan(AltdecError):
    """Decimation plan parameters out of range."""


class DimensionMismatch(AltdecError):
    """Operator/vector shapes are incompatible."""


class HypothesisViolated(AltdecError):
    """A theorem-regime precondition does not hold for the given inputs."""


class IdentityMismatch(AltdecError):
    """A structural identity check failed.

    Carries the measured deviation from the published closed form and, when a
    corrected closed form is known, the deviation from that corrected form.
    """

    def __init__(self, message: str, stated_deviation: float,
                 corrected_deviation: float | None = None):
        super().__init__(message)
        self.stated_deviation = stated_deviation
        self.corrected_deviation = corrected_deviation


class OffLattice(AltdecError):
    """A value supposed to lie on the quantization lattice does not."""


class RangeOverflow(AltdecError):
    """A lattice offset exceeds the width implied by the stream header."""


class MalformedHeader(AltdecError):
    """Byte stream header fails validation."""


class TruncatedPayload(AltdecError):
    """Byte stream ends before the payload implied by its header."""


class InsufficientPoints(AltdecError):
    """Not enough data points for a least-squares slope fit."""
