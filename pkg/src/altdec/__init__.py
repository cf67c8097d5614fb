"""Sigma-delta quantization on finite frames with decimated reconstruction.

The package is organized as one module per concern:

- ``numerics``: dense complex linear algebra (eigendecomposition,
  pseudoinverse, norms) with fixed tolerances.
- ``frames``: harmonic and unitarily generated analysis operators, frame
  bounds, frame variation, zero-sum checks.
- ``sigma_delta``: mid-rise alphabet and the greedy r-th order noise-shaping
  recursion with its exact residual identity.
- ``decimation``: sub-sampling and averaging operators, matrix-free
  application, and machine verification of their structural identities.
- ``reconstruction``: decimated/plain/beta duals, the diagonal scaling
  matrix, closed-form error bounds, and bit budgets.
- ``bitcodec``: bit-exact fixed-width codec for decimated quantized samples.
- ``bench_cli``: the ``altdec`` command line harness (experiments, identity
  verification, slope fits, codec passthrough).
"""

from altdec.errors import (
    DimensionMismatch,
    DuplicateFrequencies,
    HypothesisViolated,
    IdentityMismatch,
    InsufficientPoints,
    InvalidPlan,
    MalformedHeader,
    NoConvergence,
    NonUnitBaseVector,
    NotHermitian,
    OffLattice,
    OrderExceedsLength,
    RangeOverflow,
    RankDeficient,
    TruncatedPayload,
)

__version__ = "0.1.0"

__all__ = [
    "DimensionMismatch",
    "DuplicateFrequencies",
    "HypothesisViolated",
    "IdentityMismatch",
    "InsufficientPoints",
    "InvalidPlan",
    "MalformedHeader",
    "NoConvergence",
    "NonUnitBaseVector",
    "NotHermitian",
    "OffLattice",
    "OrderExceedsLength",
    "RangeOverflow",
    "RankDeficient",
    "TruncatedPayload",
    "__version__",
]
