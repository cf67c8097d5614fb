import numpy as np
import pytest

from altdec.errors import NotHermitian, RankDeficient
from altdec.numerics import (
    as_complex_matrix,
    as_complex_vector,
    dagger,
    hermitian_eig,
    inf_to_two_norm_upper,
    spectral_norm,
)
from altdec.rng import SplitMix64, complex_sphere_point


def random_matrix(seed: int, rows: int, cols: int) -> np.ndarray:
    rng = SplitMix64(seed)
    cols_list = [complex_sphere_point(rng, rows, 1.0) for _ in range(cols)]
    return np.array(cols_list).T


@pytest.mark.parametrize("seed,rows,cols", [(1, 8, 3), (2, 20, 7), (3, 32, 32),
                                            (4, 5, 5), (5, 12, 1)])
def test_dagger_left_inverse(seed, rows, cols):
    A = random_matrix(seed, rows, cols)
    F = dagger(A)
    assert F.shape == (cols, rows)
    assert np.abs(F @ A - np.eye(cols)).max() < 1e-9


@pytest.mark.parametrize("seed,rows,cols", [(11, 10, 4), (12, 24, 9)])
def test_dagger_matches_lstsq_oracle(seed, rows, cols):
    # independent route: numpy's SVD pseudoinverse
    A = random_matrix(seed, rows, cols)
    assert np.abs(dagger(A) - np.linalg.pinv(A)).max() < 1e-10


def test_dagger_rejects_rank_deficiency():
    A = random_matrix(21, 9, 3)
    A[:, 2] = 2.0 * A[:, 0]
    with pytest.raises(RankDeficient):
        dagger(A)


def test_dagger_rejects_wide_matrix_with_dependent_columns():
    col = np.arange(1, 5, dtype=float)
    A = np.column_stack([col, col])
    with pytest.raises(RankDeficient):
        dagger(A)


@pytest.mark.parametrize("seed,n", [(31, 4), (32, 12), (33, 33)])
def test_hermitian_eig_matches_numpy(seed, n):
    B = random_matrix(seed, n, n)
    H = B + B.conj().T
    eig = hermitian_eig(H)
    w = eig.eigenvalues
    assert np.allclose(np.sort(w), np.linalg.eigvalsh(H), atol=1e-10)
    V = eig.eigenvectors
    assert np.abs(V.conj().T @ V - np.eye(n)).max() < 1e-9
    assert np.abs(V @ np.diag(w) @ V.conj().T - H).max() < 1e-9


def test_hermitian_eig_rejects_non_hermitian():
    H = np.array([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(NotHermitian):
        hermitian_eig(H)


@pytest.mark.parametrize("seed,rows,cols", [(41, 6, 6), (42, 15, 4), (43, 3, 18)])
def test_spectral_norm_matches_numpy(seed, rows, cols):
    A = random_matrix(seed, rows, cols)
    assert spectral_norm(A) == pytest.approx(np.linalg.norm(A, 2), abs=1e-10)


def test_inf_to_two_upper_hand_value():
    # rows (1, 1) and (1, -1): row absolute sums are both 2, bound sqrt(8)
    A = np.array([[1.0, 1.0], [1.0, -1.0]])
    assert inf_to_two_norm_upper(A) == pytest.approx(np.sqrt(8.0))


@pytest.mark.parametrize("seed,rows,cols", [(51, 7, 3), (52, 4, 9)])
def test_inf_to_two_upper_dominates_witnesses(seed, rows, cols):
    A = random_matrix(seed, rows, cols)
    bound = inf_to_two_norm_upper(A)
    rng = SplitMix64(seed + 1000)
    for _ in range(50):
        phases = np.exp(2j * np.pi * np.array(
            [rng.next_uniform() for _ in range(cols)]))
        assert np.linalg.norm(A @ phases) <= bound + 1e-12


def test_as_complex_helpers_reject_bad_shapes():
    with pytest.raises(Exception):
        as_complex_vector([[1.0, 2.0]])
    with pytest.raises(Exception):
        as_complex_matrix([1.0, 2.0])
