"""Finite frame construction: harmonic families and unitarily generated ones.

A frame is carried as its analysis operator, an m x k complex matrix whose
l-th row is the conjugated frame vector. Harmonic frames store an explicit
integer frequency per column; unitarily generated frames are represented in
the eigenbasis of their Hermitian generator, where every quantity the error
bounds need reduces to the eigenvalue list and the base-vector coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from altdec import tolerances as tol
from altdec.errors import DuplicateFrequencies, NonUnitBaseVector
from altdec.numerics import as_complex_matrix, as_complex_vector, hermitian_eig

__all__ = [
    "HarmonicFrameSpec",
    "UgfSpec",
    "FrameMatrix",
    "harmonic_frame",
    "appendix_b_frame",
    "ugf_frame",
    "ugf_from_generator",
    "frame_variation",
    "frame_bounds",
    "zero_sum_check",
]


@dataclass(frozen=True)
class HarmonicFrameSpec:
    """Exponential frame description: size m, dimension k, integer frequencies."""

    m: int
    k: int
    freqs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.m < 1 or self.k < 1 or self.k > self.m:
            raise ValueError("need 1 <= k <= m")
        if len(self.freqs) != self.k:
            raise ValueError("need exactly k frequencies")
        if len(set(self.freqs)) != self.k:
            raise DuplicateFrequencies(f"repeated frequency in {self.freqs}")

    def centered(self) -> bool:
        """True when every frequency lies in the symmetric band [-k/2, k/2]."""
        return all(abs(n) <= self.k / 2 for n in self.freqs)


@dataclass(frozen=True)
class UgfSpec:
    """Unitarily generated frame in the eigenbasis of its generator.

    eigenvalues: the k generator eigenvalues (integers in the regime the
    error bounds cover). base_coeffs: coordinates of the base vector in
    the eigenbasis; their squared moduli must sum to 1.
    """

    m: int
    k: int
    eigenvalues: tuple[float, ...]
    base_coeffs: tuple[complex, ...]

    def __post_init__(self) -> None:
        if self.m < 1 or self.k < 1:
            raise ValueError("need positive m, k")
        if len(self.eigenvalues) != self.k or len(self.base_coeffs) != self.k:
            raise ValueError("need exactly k eigenvalues and k coefficients")
        total = sum(abs(c) ** 2 for c in self.base_coeffs)
        if abs(total - 1.0) > 1e-10:
            raise NonUnitBaseVector(f"coefficient power {total!r} != 1")

    def min_coeff_power(self) -> float:
        """Smallest squared modulus among the base coefficients."""
        return min(abs(c) ** 2 for c in self.base_coeffs)

    def max_abs_eigenvalue(self) -> float:
        return max(abs(v) for v in self.eigenvalues)

    def integer_eigenvalues(self) -> bool:
        return all(float(v).is_integer() for v in self.eigenvalues)


@dataclass(frozen=True)
class FrameMatrix:
    """Analysis operator plus the spec it was built from."""

    matrix: np.ndarray
    spec: object = field(default=None)

    @property
    def m(self) -> int:
        return self.matrix.shape[0]

    @property
    def k(self) -> int:
        return self.matrix.shape[1]


def harmonic_frame(spec: HarmonicFrameSpec) -> FrameMatrix:
    """Analysis operator with entries exp(-2 pi i n_j l / m) / sqrt(k).

    Row index l runs 1..m.
    """
    rows = np.arange(1, spec.m + 1).reshape(-1, 1)
    freqs = np.asarray(spec.freqs, dtype=np.float64).reshape(1, -1)
    E = np.exp(-2j * np.pi * freqs * rows / spec.m) / np.sqrt(spec.k)
    return FrameMatrix(matrix=E, spec=spec)


def appendix_b_frame(m: int, k: int) -> FrameMatrix:
    """Experiment frame with entries exp(-2 pi i (l+1)(j+1) / m) / sqrt(k).

    l runs 0..m-1 and j runs 0..k-1, so this coincides entrywise with the
    harmonic frame at frequencies {1..k} (the +1 shifts turn the 0-based
    indices into the 1-based ones of `harmonic_frame`). It also equals the
    harmonic frame at frequencies {2..k+1} after multiplying row l by the
    phase exp(2 pi i (l+1) / m).
    """
    if not 1 <= k <= m:
        raise ValueError("need 1 <= k <= m")
    spec = HarmonicFrameSpec(m=m, k=k, freqs=tuple(range(1, k + 1)))
    return FrameMatrix(matrix=harmonic_frame(spec).matrix, spec=spec)


def ugf_frame(spec: UgfSpec) -> FrameMatrix:
    """Analysis operator of a unitarily generated frame, in the eigenbasis.

    Row l (1-based) has entries conj(c_s) * exp(-2 pi i lambda_s l / m).
    Choosing c_s = 1/sqrt(k) and integer eigenvalues recovers the harmonic
    frame entrywise.
    """
    rows = np.arange(1, spec.m + 1).reshape(-1, 1)
    lam = np.asarray(spec.eigenvalues, dtype=np.float64).reshape(1, -1)
    coeff = np.conj(np.asarray(spec.base_coeffs, dtype=np.complex128)).reshape(1, -1)
    Phi = coeff * np.exp(-2j * np.pi * lam * rows / spec.m)
    return FrameMatrix(matrix=Phi, spec=spec)


def ugf_from_generator(Omega, phi0, m: int) -> UgfSpec:
    """Extract (eigenvalues, base coefficients) from a Hermitian generator.

    The coefficients are the eigenbasis coordinates of the base vector,
    c_s = <v_s, phi0>; their squared moduli sum to 1 whenever phi0 is unit.
    """
    Omega = as_complex_matrix(Omega)
    phi0 = as_complex_vector(phi0)
    if abs(np.linalg.norm(phi0) - 1.0) > 1e-10:
        raise NonUnitBaseVector("base vector must have unit 2-norm")
    eig = hermitian_eig(Omega)
    coeffs = eig.eigenvectors.conj().T @ phi0
    return UgfSpec(
        m=m,
        k=Omega.shape[0],
        eigenvalues=tuple(float(v) for v in eig.eigenvalues),
        base_coeffs=tuple(complex(c) for c in coeffs),
    )


def frame_variation(A) -> float:
    """Sum of 2-norms of consecutive column differences."""
    A = as_complex_matrix(A)
    if A.shape[1] == 1:
        return 0.0
    diffs = A[:, :-1] - A[:, 1:]
    return float(np.linalg.norm(diffs, axis=0).sum())


def frame_bounds(frame: FrameMatrix) -> tuple[float, float]:
    """(lower, upper) frame bounds: extreme eigenvalues of E* E.

    Computed as squared singular values of E; the lower bound is positive
    exactly when the analysis operator has rank k.
    """
    s = np.linalg.svd(frame.matrix, compute_uv=False)
    smallest = s[-1] if frame.matrix.shape[0] >= frame.matrix.shape[1] else 0.0
    return float(smallest) ** 2, float(s[0]) ** 2


def zero_sum_check(frame: FrameMatrix) -> bool:
    """True when the frame rows sum to (numerically) zero."""
    total = frame.matrix.sum(axis=0)
    return bool(np.linalg.norm(total) <= tol.ZERO_SUM * frame.m)
