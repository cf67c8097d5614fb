"""Mid-rise quantization and the greedy r-th order noise-shaping recursion.

The alphabet is the symmetric mid-rise grid {(2j+1) d/2 : -L <= j <= L-1}
with gap d, complexified componentwise. The order-r recursion keeps an
auxiliary sequence u with r steps of history,

    s_n = sum_{l=1..r} (-1)^(l+1) C(r,l) u_{n-l}
    q_n = round_off(s_n + y_n)
    u_n = s_n + y_n - q_n,

with zero initial history, which makes the residual y - q equal the r-th
backward difference of u identically (a telescoping identity, independent of
how q_n is chosen). Overload means some pre-quantization component left the
covered range (-Ld, Ld]; the value is clamped to the extreme level and the
run is flagged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from altdec import tolerances as tol
from altdec.errors import HypothesisViolated, OrderExceedsLength
from altdec.frames import FrameMatrix, zero_sum_check
from altdec.numerics import as_complex_vector

__all__ = [
    "Alphabet",
    "QuantizationRun",
    "round_off",
    "sigma_delta",
    "residual_check",
    "parity_endpoint",
]


@dataclass(frozen=True)
class Alphabet:
    """Mid-rise uniform quantizer parameters."""

    L: int
    delta: float
    complex_mode: bool = True

    def __post_init__(self) -> None:
        if self.L < 1:
            raise ValueError("L must be a positive integer")
        if not self.delta > 0:
            raise ValueError("delta must be positive")

    def levels(self) -> np.ndarray:
        """The 2L real levels, ascending."""
        j = np.arange(-self.L, self.L)
        return (2 * j + 1) * (self.delta / 2.0)

    def component_limit(self) -> float:
        """Largest magnitude covered without overload: L * delta."""
        return self.L * self.delta


def _round_component(t: float, a: Alphabet) -> float:
    # Bin index floor(t/delta) sends exact midpoints to the larger level.
    j = math.floor(t / a.delta)
    j = max(-a.L, min(a.L - 1, j))
    return (2 * j + 1) * (a.delta / 2.0)


def round_off(v: complex, a: Alphabet) -> complex:
    """Nearest alphabet point, componentwise; saturates silently."""
    re = _round_component(float(np.real(v)), a)
    if not a.complex_mode:
        return complex(re, 0.0)
    return complex(re, _round_component(float(np.imag(v)), a))


@dataclass(frozen=True)
class QuantizationRun:
    """Output bundle of one noise-shaping pass."""

    samples: np.ndarray
    quantized: np.ndarray
    auxiliary: np.ndarray
    order: int
    alphabet: Alphabet
    u_inf: float
    overloaded: bool


def sigma_delta(y, r: int, a: Alphabet) -> QuantizationRun:
    """Run the greedy order-r recursion over the samples.

    The residual identity y - q = (backward difference)^r u holds exactly at
    double precision regardless of saturation.
    """
    y = as_complex_vector(y)
    m = y.shape[0]
    if r < 1:
        raise ValueError("order must be >= 1")
    if m < r:
        raise OrderExceedsLength(f"need at least r={r} samples, got {m}")

    # s_n only ever looks back r steps; keep the full history for clarity.
    signs = [(-1.0) ** (l + 1) * math.comb(r, l) for l in range(1, r + 1)]
    u = np.zeros(m, dtype=np.complex128)
    q = np.zeros(m, dtype=np.complex128)
    limit = a.component_limit()
    overloaded = False
    for n in range(m):
        s = 0.0 + 0.0j
        for l, c in enumerate(signs, start=1):
            if n - l >= 0:
                s += c * u[n - l]
        t = s + y[n]
        if abs(t.real) > limit or (a.complex_mode and abs(t.imag) > limit):
            overloaded = True
        q[n] = round_off(t, a)
        u[n] = t - q[n]

    u_inf = float(np.abs(u).max())
    return QuantizationRun(
        samples=y, quantized=q, auxiliary=u, order=r, alphabet=a,
        u_inf=u_inf, overloaded=overloaded,
    )


def _iterated_difference(v: np.ndarray, r: int) -> np.ndarray:
    # Backward difference with zero boundary, applied r times.
    out = v
    for _ in range(r):
        shifted = np.concatenate(([0.0 + 0.0j], out[:-1]))
        out = out - shifted
    return out


def residual_check(run: QuantizationRun) -> float:
    """Sup-norm of (y - q) minus the r-th difference of u.

    Must not exceed 1e-10 * m * max(1, |y|_inf) for any genuine run.
    """
    lhs = run.samples - run.quantized
    rhs = _iterated_difference(run.auxiliary, run.order)
    return float(np.abs(lhs - rhs).max())


def residual_tolerance(run: QuantizationRun) -> float:
    """The acceptance threshold paired with residual_check."""
    m = run.samples.shape[0]
    y_inf = float(np.abs(run.samples).max())
    return tol.RESIDUAL_REL * m * max(1.0, y_inf)


def parity_endpoint(run: QuantizationRun, frame: FrameMatrix) -> float:
    """Terminal auxiliary magnitude under the zero-sum condition, order 1.

    When the frame rows sum to zero, the samples of any signal sum to zero,
    so the final auxiliary value telescopes to minus the sum of the
    quantized outputs. Each real channel of that sum is an odd multiple of
    delta/2 per sample; with m samples and a stable run the endpoint channel
    magnitude is therefore exactly 0 for even m and delta/2 for odd m.

    Returns the larger of the two channel magnitudes |Re u_m|, |Im u_m|
    (the statement is per real channel; the complex modulus would conflate
    the two). Raises HypothesisViolated when the run is not first order,
    the frame is not zero-sum, or the run overloaded.
    """
    if run.order != 1:
        raise HypothesisViolated("endpoint parity requires a first-order run")
    if not zero_sum_check(frame):
        raise HypothesisViolated("frame rows do not sum to zero")
    if run.overloaded:
        raise HypothesisViolated("overloaded run: auxiliary bound unavailable")
    tail = run.auxiliary[-1]
    return max(abs(float(tail.real)), abs(float(tail.imag)))
