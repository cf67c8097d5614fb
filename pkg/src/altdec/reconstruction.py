"""Dual operators, reconstruction, and closed-form error bounds.

A dual here is any left inverse of the analysis matrix E built as (VE)^+ V
for some test matrix V. Four kinds are supported:

- plain: V = identity, the canonical dual E^+.
- decimated: V = subsample . averaging^r from a DecimationPlan, so
  reconstruction consumes length-eta decimated samples directly.
- beta: V is k x m block-diagonal, each block [beta^-1, ..., beta^-(m/k)]
  for beta > 1; beta = 1 selects the flat variant with blocks scaled k/m.
- custom_v: caller-supplied V.

error_bound() evaluates the closed-form reconstruction-error guarantees
that hold for decimated duals in their hypothesis regimes (harmonic frames
at first order, integer-eigenvalue unitarily generated frames at first and
second order). Bound selection is conservative: if the hypotheses of a
sharper form fail, the general form is used; if no form applies,
HypothesisViolated is raised rather than silently extrapolating.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from altdec import tolerances as tol
from altdec.decimation import (
    DecimationPlan,
    OperatorKind,
    Variant,
    build,
    dense_boundary_averaging,
)
from altdec.errors import (
    DimensionMismatch,
    HypothesisViolated,
    InvalidPlan,
    RankDeficient,
)
from altdec.frames import FrameMatrix, HarmonicFrameSpec, UgfSpec, frame_variation
from altdec.numerics import as_complex_matrix, as_complex_vector, dagger
from altdec.sigma_delta import Alphabet

__all__ = [
    "DualKind",
    "DualSpec",
    "Dual",
    "ScalingMatrix",
    "BoundReport",
    "scaling_matrix",
    "averaging_gain",
    "verify_commutation",
    "build_dual",
    "reconstruct",
    "error_bound",
    "bit_budget",
]


class DualKind(str, enum.Enum):
    PLAIN = "plain"
    DECIMATED = "decimated"
    BETA = "beta"
    CUSTOM_V = "custom_v"


@dataclass(frozen=True, eq=False)
class DualSpec:
    """Which left inverse to build. decimated needs plan; beta needs
    beta >= 1 (and k | m, checked against the frame); custom_v needs V."""

    kind: DualKind
    plan: DecimationPlan | None = None
    beta: float | None = None
    V: np.ndarray | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", DualKind(self.kind))
        if self.kind is DualKind.DECIMATED and self.plan is None:
            raise InvalidPlan("decimated dual needs a DecimationPlan")
        if self.kind is DualKind.BETA:
            if self.beta is None or not self.beta >= 1.0:
                raise InvalidPlan("beta dual needs beta >= 1")
        if self.kind is DualKind.CUSTOM_V and self.V is None:
            raise InvalidPlan("custom_v dual needs the test matrix V")


@dataclass(frozen=True, eq=False)
class Dual:
    """factor acts on the samples reconstruct() receives (length
    input_length); composed is the equivalent k x m map on raw samples."""

    spec: DualSpec
    factor: np.ndarray
    composed: np.ndarray
    input_length: int


@dataclass(frozen=True, eq=False)
class ScalingMatrix:
    """Diagonal factor picked up by frame columns under averaging."""

    diag: np.ndarray

    def dense(self) -> np.ndarray:
        return np.diag(self.diag)

    def min_modulus(self) -> float:
        return float(np.abs(self.diag).min())

    def inverse_two_norm(self) -> float:
        low = self.min_modulus()
        if low <= 1e-15:
            raise RankDeficient("scaling matrix is singular")
        return 1.0 / low


def averaging_gain(theta: float, rho: int) -> float:
    """Modulus profile sin(rho t)/(rho sin t) of the scaling entries."""
    if theta == 0.0:
        return 1.0
    return math.sin(rho * theta) / (rho * math.sin(theta))


def _scaling_entry(freq: float, m: int, rho: int) -> complex:
    # Frequencies congruent to 0 mod m give constant frame columns, for
    # which the averager acts as the identity off the leading rows.
    rem = freq % m
    if min(rem, m - rem) < 1e-12:
        return 1.0 + 0.0j
    phase = cmath.exp(1j * math.pi * (rho - 1) * freq / m)
    return phase * math.sin(rho * freq * math.pi / m) / (rho * math.sin(freq * math.pi / m))


def _frequencies(frame_spec) -> tuple[float, ...]:
    if isinstance(frame_spec, HarmonicFrameSpec):
        return tuple(float(n) for n in frame_spec.freqs)
    if isinstance(frame_spec, UgfSpec):
        return tuple(float(v) for v in frame_spec.eigenvalues)
    raise InvalidPlan("scaling entries need a harmonic or unitary-generated spec")


def scaling_matrix(frame_spec, plan: DecimationPlan) -> ScalingMatrix:
    """Diagonal commutation factor: averaging a frame column multiplies it
    by sin(rho f pi/m)/(rho sin(f pi/m)) times a half-turn phase, with the
    convention value 1 at frequencies congruent to 0 mod m."""
    freqs = _frequencies(frame_spec)
    diag = np.array([_scaling_entry(f, plan.m, plan.rho) for f in freqs],
                    dtype=np.complex128)
    return ScalingMatrix(diag=diag)


def verify_commutation(frame: FrameMatrix, plan: DecimationPlan) -> float:
    """Max deviation of averaging . E from E . scaling (dense comparison).

    Harmonic frames with some frequency congruent to 0 mod m pick up a
    known rank-one correction supported on the first rho-1 rows (which the
    subsampler annihilates); it is included here. Unitarily generated
    frames must have no such frequency.
    """
    E = frame.matrix
    if frame.m != plan.m:
        raise DimensionMismatch("frame length does not match plan")
    spec = frame.spec
    freqs = _frequencies(spec)
    C = scaling_matrix(spec, plan)
    rhs = E * C.diag[np.newaxis, :]
    zero_cols = [j for j, f in enumerate(freqs)
                 if min(f % plan.m, plan.m - f % plan.m) < 1e-12]
    if zero_cols:
        if isinstance(spec, UgfSpec):
            raise HypothesisViolated(
                "commutation for unitarily generated frames needs every "
                "eigenvalue nonzero mod m")
        K = np.zeros_like(E)
        for j in zero_cols:
            K[: plan.rho - 1, j] = plan.m / (plan.rho * math.sqrt(frame.k))
        rhs = rhs - K
    lhs = dense_boundary_averaging(plan.m, plan.rho) @ E
    return float(np.abs(lhs - rhs).max())


def _product_rank_floor(left: np.ndarray, right: np.ndarray) -> float:
    # A test-matrix/frame product can be exactly zero in exact arithmetic
    # (every scaled frequency annihilated); roundoff then leaves a tiny
    # matrix whose singular-value *ratio* looks fine. Floor the singular
    # values at a fraction of the factors' own scale instead.
    return tol.RANK_FLOOR_REL * float(np.linalg.norm(left) * np.linalg.norm(right))


def build_dual(E: FrameMatrix, spec: DualSpec) -> Dual:
    """Left inverse (VE)^+ V for the requested kind; RankDeficient when VE
    loses rank (e.g. frequency collisions after subsampling)."""
    mat = E.matrix
    m, k = mat.shape
    if spec.kind is DualKind.PLAIN:
        F = dagger(mat)
        return Dual(spec=spec, factor=F, composed=F, input_length=m)
    if spec.kind is DualKind.DECIMATED:
        plan = spec.plan
        if plan.m != m:
            raise DimensionMismatch("plan length does not match frame")
        A = build(OperatorKind.COMPOSITION, plan).dense()
        factor = dagger(A @ mat, floor=_product_rank_floor(A, mat))
        return Dual(spec=spec, factor=factor, composed=factor @ A,
                    input_length=plan.eta)
    if spec.kind is DualKind.BETA:
        if m % k != 0:
            raise InvalidPlan("beta dual needs k | m")
        p = m // k
        if spec.beta == 1.0:
            block = np.full(p, k / m)
        else:
            block = spec.beta ** -np.arange(1, p + 1, dtype=float)
        V = np.kron(np.eye(k), block)
    else:
        V = as_complex_matrix(spec.V)
        if V.shape[1] != m:
            raise DimensionMismatch("V must have one column per frame row")
    F = dagger(V @ mat, floor=_product_rank_floor(V, mat)) @ V
    return Dual(spec=spec, factor=F, composed=F, input_length=m)


def reconstruct(dual: Dual, samples) -> np.ndarray:
    samples = as_complex_vector(samples)
    if samples.shape[0] != dual.input_length:
        raise DimensionMismatch(
            f"dual expects length {dual.input_length}, got {samples.shape[0]}")
    return dual.factor @ samples


@dataclass(frozen=True)
class BoundReport:
    """Closed-form error bound plus the named quantities it was built from.

    The regime tag states which form applies; recomputing the form from
    ingredients alone reproduces bound_value to 1e-12.
    """

    regime: str
    bound_value: float
    ingredients: dict[str, float]


def _harmonic_bound(frame_spec: HarmonicFrameSpec, plan: DecimationPlan,
                    u_inf: float) -> BoundReport:
    if plan.r != 1:
        raise HypothesisViolated(
            "harmonic closed forms cover first-order decimation only")
    if frame_spec.m != plan.m:
        raise DimensionMismatch("frame and plan lengths differ")
    if not frame_spec.centered():
        raise HypothesisViolated("harmonic bound needs |n_j| <= k/2")
    k, m = frame_spec.k, plan.m
    ingredients = {"u_inf": u_inf, "k": float(k), "m": float(m),
                   "eta": float(plan.eta), "rho": float(plan.rho)}
    scal = scaling_matrix(frame_spec, plan)
    if scal.min_modulus() > 1e-15:
        ingredients["scaling_inverse_norm"] = scal.inverse_two_norm()
    if plan.divides():
        even_case = (m % 2 == 0 and k % 2 == 0
                     and all(n != 0 for n in frame_spec.freqs))
        if even_case:
            value = math.pi**2 * (k + 1) / math.sqrt(3) * u_inf * k / m
            return BoundReport("harmonic_even", value, ingredients)
        value = (math.pi / 2) * (2 * math.pi * (k + 1) / math.sqrt(3) + 1) \
            * u_inf * k / m
        return BoundReport("harmonic_divisible", value, ingredients)
    # rho does not divide m: no closed constant; use the variation of the
    # materialized dual of the subsampled frame.
    from altdec.frames import harmonic_frame
    E = harmonic_frame(frame_spec).matrix
    sub = E[plan.rho - 1:: plan.rho, :]
    Fbar = dagger(sub)
    sigma = frame_variation(Fbar)
    tail = float(np.linalg.norm(Fbar[:, -1]))
    ingredients["sigma_dual"] = sigma
    ingredients["tail_norm"] = tail
    value = (math.pi / 2) * (sigma + tail) * u_inf / plan.rho
    return BoundReport("harmonic_subsampled_dual", value, ingredients)


def _unitary_bound(frame_spec: UgfSpec, plan: DecimationPlan,
                   u_inf: float) -> BoundReport:
    if frame_spec.m != plan.m:
        raise DimensionMismatch("frame and plan lengths differ")
    if not plan.divides():
        raise HypothesisViolated("unitary-frame bounds need rho | m")
    if plan.r not in (1, 2):
        raise HypothesisViolated("unitary-frame bounds cover r in {1, 2}")
    eta = plan.eta
    lams = frame_spec.eigenvalues
    if not frame_spec.integer_eigenvalues():
        raise HypothesisViolated("need integer eigenvalues")
    if len(set(lams)) != len(lams):
        raise HypothesisViolated("need distinct eigenvalues")
    if max(abs(v) for v in lams) > eta / 2:
        raise HypothesisViolated("need |eigenvalue| <= eta/2")
    c_phi0 = frame_spec.min_coeff_power()
    if c_phi0 <= 0.0:
        raise HypothesisViolated("base vector must overlap every eigenvector")
    max_lam = frame_spec.max_abs_eigenvalue()
    ingredients = {"u_inf": u_inf, "eta": float(eta), "rho": float(plan.rho),
                   "c_phi0": c_phi0, "max_abs_eigenvalue": max_lam}
    scal = scaling_matrix(frame_spec, plan)
    if scal.min_modulus() > 1e-15:
        ingredients["scaling_inverse_norm"] = scal.inverse_two_norm()
    if plan.r == 1:
        value = math.pi / (2 * eta * c_phi0) \
            * (2 * math.pi * max_lam + 1) * u_inf / plan.rho
        return BoundReport("unitary_first_order", value, ingredients)
    if any(v == 0 for v in lams):
        raise HypothesisViolated("second-order bound needs nonzero eigenvalues")
    value = math.pi**2 / (4 * eta * c_phi0) \
        * (9 + eta * (2 * math.pi * max_lam / eta) ** 2) * u_inf / plan.rho**2
    return BoundReport("unitary_second_order", value, ingredients)


def error_bound(frame_spec, plan: DecimationPlan, u_inf: float) -> BoundReport:
    """Evaluate the applicable closed-form reconstruction-error bound for a
    decimated dual, with all ingredients reported."""
    if u_inf < 0:
        raise ValueError("u_inf must be nonnegative")
    if plan.variant is not Variant.ALTERNATIVE:
        raise HypothesisViolated("bounds hold for the alternative variant only")
    if isinstance(frame_spec, HarmonicFrameSpec):
        return _harmonic_bound(frame_spec, plan, u_inf)
    if isinstance(frame_spec, UgfSpec):
        return _unitary_bound(frame_spec, plan, u_inf)
    raise InvalidPlan("no bound regime for this frame spec")


def bit_budget(plan: DecimationPlan, a: Alphabet, complex_mode: bool = True) -> int:
    """Guaranteed-sufficient bits for the decimated quantized samples:
    eta * c * ceil(r * log2(2 L range)), range = rho at first order and m
    beyond (channel count c is 2 for complex data). The codec may use
    fewer via exact range analysis; never more."""
    channels = 2 if complex_mode else 1
    range_base = plan.rho if plan.r == 1 else plan.m
    per_entry = math.ceil(plan.r * math.log2(2 * a.L * range_base))
    return plan.eta * channels * per_entry
