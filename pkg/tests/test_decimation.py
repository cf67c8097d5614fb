import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altdec.decimation import (
    DecimationPlan,
    OperatorKind,
    Variant,
    apply,
    build,
    corrected_non_commutation_defect,
    corrected_second_order_defect,
    corrected_third_order_defect,
    decimate,
    dense_backward_difference,
    dense_boundary_averaging,
    dense_composition,
    dense_cyclic_averaging,
    dense_lagged_difference,
    dense_subsample,
    lattice_row_profile,
    non_commutation_defect,
    second_order_defect,
    third_order_report,
    verify_canonical_second_order_defect,
    verify_decimated_equivalence,
    verify_delta_bar_factorization,
    verify_high_order_commutation,
    verify_multiplicative,
    verify_non_commutation,
    verify_scaling_identity,
    verify_second_order_defect,
    verify_third_order_terms,
)
from altdec.errors import (
    DimensionMismatch,
    HypothesisViolated,
    IdentityMismatch,
    InvalidPlan,
)
from altdec.rng import SplitMix64

EXACT = 1e-14


def _divisor_grid(max_m: int):
    for m in range(1, max_m + 1):
        for rho in range(1, m + 1):
            if m % rho == 0:
                yield m, rho


def _random_vector(seed: int, m: int) -> np.ndarray:
    rng = SplitMix64(seed)
    re = np.array([rng.next_uniform() * 2 - 1 for _ in range(m)])
    im = np.array([rng.next_uniform() * 2 - 1 for _ in range(m)])
    return re + 1j * im


# ---------------------------------------------------------------------------
# hand-frozen dense forms, m=6 rho=2 (worked out on paper, not from the code)

HAND_D = np.array([
    [0, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 1],
], dtype=float)

HAND_S = 0.5 * np.array([
    [0, -1, -1, -1, -1, 0],
    [1, 1, 0, 0, 0, 0],
    [0, 1, 1, 0, 0, 0],
    [0, 0, 1, 1, 0, 0],
    [0, 0, 0, 1, 1, 0],
    [0, 0, 0, 0, 1, 1],
], dtype=float)

HAND_S_CYC = 0.5 * np.array([
    [1, 0, 0, 0, 0, 1],
    [1, 1, 0, 0, 0, 0],
    [0, 1, 1, 0, 0, 0],
    [0, 0, 1, 1, 0, 0],
    [0, 0, 0, 1, 1, 0],
    [0, 0, 0, 0, 1, 1],
], dtype=float)

HAND_LAGGED = np.array([
    [1, 0, 0, 0, -1, 0],
    [0, 1, 0, 0, 0, 0],
    [-1, 0, 1, 0, 0, 0],
    [0, -1, 0, 1, 0, 0],
    [0, 0, -1, 0, 1, 0],
    [0, 0, 0, -1, 0, 1],
], dtype=float)


def test_dense_builders_match_hand_matrices():
    assert np.array_equal(dense_subsample(6, 2), HAND_D)
    assert np.array_equal(dense_boundary_averaging(6, 2), HAND_S)
    assert np.array_equal(dense_cyclic_averaging(6, 2), HAND_S_CYC)
    assert np.array_equal(dense_lagged_difference(6, 2), HAND_LAGGED)
    D4 = dense_backward_difference(4)
    assert np.array_equal(D4, np.eye(4) - np.eye(4, k=-1))


def test_first_rows_differ_between_averagers():
    # m=4, rho=2: cyclic row 1 wraps, boundary row 1 is the negative average
    St = dense_cyclic_averaging(4, 2)
    S = dense_boundary_averaging(4, 2)
    assert np.array_equal(St[0], [0.5, 0, 0, 0.5])
    assert np.array_equal(S[0], [0, -0.5, -0.5, 0])
    assert np.array_equal(St[1:], S[1:])


def test_rho_one_operators_are_identity():
    assert np.array_equal(dense_boundary_averaging(5, 1), np.eye(5))
    assert np.array_equal(dense_cyclic_averaging(5, 1), np.eye(5))
    assert np.array_equal(dense_subsample(5, 1), np.eye(5))


def test_plan_validation():
    with pytest.raises(InvalidPlan):
        DecimationPlan(m=0, rho=1)
    with pytest.raises(InvalidPlan):
        DecimationPlan(m=4, rho=5)
    with pytest.raises(InvalidPlan):
        DecimationPlan(m=4, rho=0)
    with pytest.raises(InvalidPlan):
        DecimationPlan(m=4, rho=2, r=0)
    plan = DecimationPlan(m=4, rho=2, r=1, variant="canonical")
    assert plan.variant is Variant.CANONICAL
    assert plan.eta == 2 and plan.divides()
    assert not DecimationPlan(m=5, rho=2).divides()


def test_build_shapes():
    plan = DecimationPlan(m=6, rho=2, r=2)
    assert build(OperatorKind.SUBSAMPLE, plan).rows == 3
    assert build("composition", plan).rows == 3
    assert build(OperatorKind.CYCLIC_AVERAGING, plan).rows == 6


def test_apply_hand_values():
    plan = DecimationPlan(m=4, rho=2)
    out = apply(build(OperatorKind.CYCLIC_AVERAGING, plan), [1, 2, 3, 4])
    assert np.allclose(out, [2.5, 1.5, 2.5, 3.5], atol=1e-15)
    sub = apply(build(OperatorKind.SUBSAMPLE, plan), [10, 20, 30, 40])
    assert np.array_equal(sub, [20, 40])
    # averaging keeps constants on every row from rho down
    const = apply(build(OperatorKind.BOUNDARY_AVERAGING,
                        DecimationPlan(m=8, rho=4)), np.full(8, 3.0))
    assert np.allclose(const[3:], 3.0, atol=1e-15)


def test_apply_rejects_wrong_length():
    plan = DecimationPlan(m=6, rho=2)
    with pytest.raises(DimensionMismatch):
        apply(build(OperatorKind.SUBSAMPLE, plan), np.ones(5))


@given(data=st.data())
@settings(max_examples=150, deadline=None)
def test_apply_matches_dense_for_every_kind(data):
    m = data.draw(st.integers(min_value=1, max_value=32))
    rho = data.draw(st.integers(min_value=1, max_value=m))
    r = data.draw(st.integers(min_value=1, max_value=3))
    variant = data.draw(st.sampled_from(list(Variant)))
    kind = data.draw(st.sampled_from(list(OperatorKind)))
    seed = data.draw(st.integers(min_value=0, max_value=2**32))
    plan = DecimationPlan(m=m, rho=rho, r=r, variant=variant)
    op = build(kind, plan)
    v = _random_vector(seed, m)
    assert np.abs(apply(op, v) - op.dense() @ v).max() <= 1e-12


def test_dense_composition_matches_matrix_power_route():
    for m, rho in _divisor_grid(18):
        for r in (1, 2, 3):
            for variant, avg in ((Variant.ALTERNATIVE, dense_boundary_averaging),
                                 (Variant.CANONICAL, dense_cyclic_averaging)):
                plan = DecimationPlan(m=m, rho=rho, r=r, variant=variant)
                direct = dense_subsample(m, rho) @ np.linalg.matrix_power(
                    avg(m, rho), r)
                assert np.abs(dense_composition(plan) - direct).max() <= 1e-12


def test_decimate_constant_first_order():
    out = decimate(np.ones(4), DecimationPlan(m=4, rho=2, r=1))
    assert np.allclose(out, [1.0, 1.0], atol=1e-15)


def test_decimate_first_order_variants_agree_bitwise():
    # the two averagers only differ on rows the subsampler discards
    q = _random_vector(99, 12)
    alt = decimate(q, DecimationPlan(m=12, rho=3, r=1, variant="alternative"))
    can = decimate(q, DecimationPlan(m=12, rho=3, r=1, variant="canonical"))
    assert np.array_equal(alt, can)


def test_decimate_second_order_variants_differ_by_closed_form():
    m, rho = 4, 2
    q = _random_vector(7, m)
    alt = decimate(q, DecimationPlan(m=m, rho=rho, r=2, variant="alternative"))
    can = decimate(q, DecimationPlan(m=m, rho=rho, r=2, variant="canonical"))
    gap = np.zeros(m // rho, dtype=complex)
    gap[0] = (rho - 1) / rho**2 * q.sum()
    assert np.abs((can - alt) - gap).max() <= 1e-12
    assert np.abs(can - alt).max() > 1e-3  # generic q really separates them


# ---------------------------------------------------------------------------
# structural identities that hold as published

def test_scaling_identity_examples():
    assert verify_scaling_identity(DecimationPlan(m=12, rho=3)) <= EXACT
    assert verify_scaling_identity(DecimationPlan(m=8, rho=1)) <= EXACT
    with pytest.raises(HypothesisViolated):
        verify_scaling_identity(DecimationPlan(m=9, rho=2))


def test_scaling_identity_full_grid():
    for m, rho in _divisor_grid(64):
        assert verify_scaling_identity(DecimationPlan(m=m, rho=rho)) <= EXACT


def test_subsampled_averagers_agree_exactly_up_to_64():
    for m, rho in _divisor_grid(64):
        assert verify_decimated_equivalence(DecimationPlan(m=m, rho=rho)) == 0.0


def test_delta_bar_factorization():
    assert verify_delta_bar_factorization(DecimationPlan(m=6, rho=2)) <= EXACT
    assert verify_delta_bar_factorization(DecimationPlan(m=7, rho=1)) <= EXACT
    assert verify_delta_bar_factorization(DecimationPlan(m=10, rho=5)) <= EXACT
    # divisibility is not needed for the factorization
    for m in range(2, 20):
        for rho in range(1, m + 1):
            assert verify_delta_bar_factorization(
                DecimationPlan(m=m, rho=rho)) <= EXACT


def test_multiplicative_two_stage():
    assert verify_multiplicative(DecimationPlan(m=8, rho=4), 2, 2) <= EXACT
    assert verify_multiplicative(DecimationPlan(m=6, rho=2), 1, 2) <= EXACT
    assert verify_multiplicative(DecimationPlan(m=24, rho=6), 2, 3) <= EXACT
    assert verify_multiplicative(DecimationPlan(m=24, rho=6), 3, 2) <= EXACT
    with pytest.raises(HypothesisViolated):
        verify_multiplicative(DecimationPlan(m=8, rho=4), 2, 3)


def test_high_order_commutation():
    assert verify_high_order_commutation(
        DecimationPlan(m=12, rho=3, r=2)) <= EXACT
    assert verify_high_order_commutation(
        DecimationPlan(m=16, rho=4, r=3)) <= EXACT
    for m, rho in _divisor_grid(24):
        for r in (1, 2, 3, 4):
            assert verify_high_order_commutation(
                DecimationPlan(m=m, rho=rho, r=r)) <= EXACT


# ---------------------------------------------------------------------------
# the published defect closed forms are incomplete; the checks stay honest
# by failing, and the corrected forms must match exactly

def test_conjugation_defect_published_form_fails():
    for m, rho in ((6, 2), (5, 1), (12, 4)):
        with pytest.raises(IdentityMismatch) as exc:
            verify_non_commutation(DecimationPlan(m=m, rho=rho))
        assert exc.value.stated_deviation >= 0.9
        assert exc.value.corrected_deviation <= EXACT


def test_conjugation_defect_corrected_form_is_exact():
    for m in range(2, 30):
        for rho in range(1, m):
            defect = non_commutation_defect(DecimationPlan(m=m, rho=rho))
            corr = corrected_non_commutation_defect(m, rho)
            assert np.abs(defect - corr).max() <= EXACT


def test_conjugation_defect_rejects_full_subsampling():
    with pytest.raises(HypothesisViolated):
        verify_non_commutation(DecimationPlan(m=4, rho=4))


def test_second_order_defect_published_form_fails():
    for m, rho in ((8, 2), (12, 3)):
        with pytest.raises(IdentityMismatch) as exc:
            verify_second_order_defect(DecimationPlan(m=m, rho=rho, r=2))
        assert exc.value.stated_deviation >= 0.9
        assert exc.value.corrected_deviation <= EXACT


def test_second_order_defect_rho_one_is_zero():
    pos, column = verify_second_order_defect(DecimationPlan(m=8, rho=1, r=2))
    assert pos == 7
    assert np.abs(column).max() == 0.0


def test_second_order_defect_corrected_form_is_exact():
    for m, rho in _divisor_grid(28):
        defect = second_order_defect(DecimationPlan(m=m, rho=rho, r=2))
        corr = corrected_second_order_defect(m, rho)
        assert np.abs(defect - corr).max() <= EXACT


def test_third_order_products_hold_exactly():
    report = third_order_report(DecimationPlan(m=20, rho=4, r=3))
    assert max(report.item_deviations) <= EXACT
    assert report.aggregate_corrected_deviation <= EXACT
    assert report.aggregate_stated_deviation > 0.04


def test_third_order_first_product_entries_by_hand():
    # D . lagged^2 . ones-column has +1 at (1, m-rho), -1 at (2, m-rho)
    m, rho = 20, 4
    D = dense_subsample(m, rho)
    Db = dense_lagged_difference(m, rho)
    E = np.zeros((m, m))
    E[:, m - rho - 1] = 1.0
    lhs = D @ Db @ Db @ E
    expect = np.zeros_like(lhs)
    expect[0, m - rho - 1] = 1.0
    expect[1, m - rho - 1] = -1.0
    assert np.abs(lhs - expect).max() <= EXACT


def test_third_order_published_decomposition_fails():
    with pytest.raises(IdentityMismatch) as exc:
        verify_third_order_terms(DecimationPlan(m=12, rho=2, r=3))
    assert exc.value.stated_deviation > 0.04
    assert exc.value.corrected_deviation <= EXACT


def test_third_order_corrected_defect_grid():
    for m, rho in _divisor_grid(32):
        if rho < 2 or 2 * rho >= m:
            continue
        plan = DecimationPlan(m=m, rho=rho, r=3)
        D, S = dense_subsample(m, rho), dense_boundary_averaging(m, rho)
        Dl = dense_backward_difference(m)
        lhs = rho**3 * (D @ np.linalg.matrix_power(S, 3)
                        @ np.linalg.matrix_power(Dl, 3))
        rhs = np.linalg.matrix_power(
            dense_backward_difference(m // rho), 3) @ D
        assert np.abs((lhs - rhs) - corrected_third_order_defect(m, rho)).max() \
            <= 1e-12


def test_third_order_rejects_wide_subsampling():
    with pytest.raises(HypothesisViolated):
        third_order_report(DecimationPlan(m=8, rho=4, r=3))


def test_canonical_gap_closed_form():
    for m, rho in _divisor_grid(24):
        assert verify_canonical_second_order_defect(
            DecimationPlan(m=m, rho=rho, r=2)) <= EXACT


def test_canonical_gap_entries_by_hand():
    # D . S . leading-row averager . diff^2: +/-(rho-1)/rho^2 at row 1,
    # last two columns
    m, rho = 10, 5
    D = dense_subsample(m, rho)
    S = dense_boundary_averaging(m, rho)
    L = np.zeros((m, m))
    L[: rho - 1] = 1.0 / rho
    Dl = dense_backward_difference(m)
    gap = D @ S @ L @ Dl @ Dl
    expect = np.zeros_like(gap)
    expect[0, m - 1] = (rho - 1) / rho**2
    expect[0, m - 2] = -(rho - 1) / rho**2
    assert np.abs(gap - expect).max() <= EXACT


# ---------------------------------------------------------------------------
# integer lattice profile

def test_lattice_profile_first_order_is_rho():
    for m, rho in _divisor_grid(20):
        for variant in Variant:
            abs_sums, sums = lattice_row_profile(
                DecimationPlan(m=m, rho=rho, r=1, variant=variant))
            assert np.array_equal(abs_sums, np.full(m // rho, rho))
            assert np.array_equal(sums, np.full(m // rho, rho))


def test_lattice_profile_hand_values_second_order():
    abs_sums, sums = lattice_row_profile(DecimationPlan(m=4, rho=2, r=2))
    assert abs_sums.tolist() == [2, 4] and sums.tolist() == [0, 4]
    abs_c, sums_c = lattice_row_profile(
        DecimationPlan(m=4, rho=2, r=2, variant="canonical"))
    assert abs_c.tolist() == [4, 4] and sums_c.tolist() == [4, 4]


def test_lattice_profile_matches_integer_matrix_power():
    for m, rho in _divisor_grid(16):
        for r in (1, 2, 3):
            for variant, avg in ((Variant.ALTERNATIVE, dense_boundary_averaging),
                                 (Variant.CANONICAL, dense_cyclic_averaging)):
                plan = DecimationPlan(m=m, rho=rho, r=r, variant=variant)
                R = np.rint(rho * avg(m, rho)).astype(np.int64)
                Dint = np.rint(dense_subsample(m, rho)).astype(np.int64)
                rows = Dint @ np.linalg.matrix_power(R, r)
                abs_sums, sums = lattice_row_profile(plan)
                assert np.array_equal(abs_sums, np.abs(rows).sum(axis=1))
                assert np.array_equal(sums, rows.sum(axis=1))


def test_decimated_alphabet_values_live_on_half_gap_lattice():
    delta, L = 0.5, 4
    root = SplitMix64(321)
    for t in range(40):
        rng = root.substream(t)
        rho = (2, 2, 3, 4, 5)[t % 5]
        eta = 1 + rng.next_u64() % 6
        m = rho * eta
        r = 1 + t % 3
        variant = Variant.ALTERNATIVE if t % 2 else Variant.CANONICAL
        plan = DecimationPlan(m=m, rho=rho, r=r, variant=variant)
        j_re = np.array([rng.next_u64() % (2 * L) for _ in range(m)]) - L
        j_im = np.array([rng.next_u64() % (2 * L) for _ in range(m)]) - L
        q = (2 * j_re + 1) * (delta / 2) + 1j * (2 * j_im + 1) * (delta / 2)
        v = decimate(q, plan)
        abs_sums, sums = lattice_row_profile(plan)
        for jrow in range(eta):
            for channel in (v[jrow].real, v[jrow].imag):
                n = channel * 2 * rho**r / delta
                k = round(n)
                assert abs(n - k) <= 1e-9 * max(1.0, abs(k))
                assert abs(k) <= (2 * L - 1) * abs_sums[jrow]
                assert (k - sums[jrow]) % 2 == 0
