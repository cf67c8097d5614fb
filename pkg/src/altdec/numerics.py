"""Dense complex linear algebra used by every structural check.

Matrices and vectors are plain ``numpy.ndarray`` values (complex128,
row-major). The helpers here add the validation, error mapping, and fixed
tolerances the rest of the package relies on. Decompositions are delegated
to LAPACK through numpy, which satisfies the determinism and residual
contracts directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from altdec import tolerances as tol
from altdec.errors import NoConvergence, NotHermitian, RankDeficient

__all__ = [
    "HermitianEig",
    "as_complex_matrix",
    "as_complex_vector",
    "hermitian_eig",
    "dagger",
    "spectral_norm",
    "inf_to_two_norm_upper",
]


def as_complex_matrix(a) -> np.ndarray:
    """Validate and return a finite 2-d complex128 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.size == 0:
        raise ValueError("expected a nonempty 2-d array")
    if not np.isfinite(m).all():  # checks both components
        raise ValueError("matrix entries must be finite")
    return m


def as_complex_vector(v) -> np.ndarray:
    """Validate and return a finite 1-d complex128 array."""
    w = np.asarray(v, dtype=np.complex128)
    if w.ndim != 1 or w.size == 0:
        raise ValueError("expected a nonempty 1-d array")
    if not np.isfinite(w).all():
        raise ValueError("vector entries must be finite")
    return w


@dataclass(frozen=True)
class HermitianEig:
    """Spectral data of a Hermitian matrix.

    eigenvalues: real, ascending. eigenvectors: unitary matrix whose columns
    are the corresponding eigenvectors.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eig(H, sym_tol: float = tol.HERMITIAN_SYM) -> HermitianEig:
    """Full eigendecomposition of a Hermitian matrix.

    Raises NotHermitian when the symmetry defect exceeds `sym_tol`, and
    NoConvergence if the underlying iteration fails. The result satisfies
    |V*V - I|_max <= 1e-10 and |HV - V Lambda|_max <= 1e-9 * |H|_2.
    """
    H = as_complex_matrix(H)
    if H.shape[0] != H.shape[1]:
        raise NotHermitian("matrix is not square")
    if np.abs(H - H.conj().T).max() > sym_tol:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    try:
        w, v = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NoConvergence(str(exc)) from exc
    return HermitianEig(eigenvalues=w, eigenvectors=v)


def dagger(A, floor: float = 0.0) -> np.ndarray:
    """Moore-Penrose pseudoinverse of a full-column-rank matrix.

    Computed through the SVD rather than the normal equations, so the
    conditioning of A enters only once. Raises RankDeficient when the
    smallest singular value is at most 1e-12 of the largest or below the
    caller's absolute `floor` (needed when A is a product whose exact value
    could be zero: roundoff then leaves a tiny full-ratio matrix that a
    relative test cannot flag), or when the post-check dagger(A) @ A = I
    fails at 1e-9.
    """
    A = as_complex_matrix(A)
    rows, cols = A.shape
    if rows < cols:
        raise RankDeficient("fewer rows than columns")
    u, s, vh = np.linalg.svd(A, full_matrices=False)
    if s[0] == 0.0 or s[-1] <= max(tol.RANK_RATIO * s[0], floor):
        raise RankDeficient("singular value below rank cutoff")
    pinv = (vh.conj().T * (1.0 / s)) @ u.conj().T
    if np.abs(pinv @ A - np.eye(cols)).max() > tol.DUAL_IDENTITY:
        raise RankDeficient("pseudoinverse post-check failed")
    return pinv


def spectral_norm(A) -> float:
    """Largest singular value."""
    A = as_complex_matrix(A)
    return float(np.linalg.norm(A, 2))


def inf_to_two_norm_upper(A) -> float:
    """Certified upper bound for the sup-to-2 operator norm.

    Returns sqrt(sum over rows of (sum over columns of |A_ij|)^2). For any x
    with |x|_inf = 1 each component of Ax is bounded by the corresponding row
    absolute sum, hence the bound. It is an upper bound only; the exact norm
    maximizes over sign/phase patterns and is combinatorially hard.
    """
    A = as_complex_matrix(A)
    row_sums = np.abs(A).sum(axis=1)
    return float(np.sqrt((row_sums**2).sum()))
