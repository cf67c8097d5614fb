"""Every numeric tolerance used by the package, in one place.

The identity checks are algebraic (operator entries are small integer
multiples of 1/rho^r), so they get an exact-arithmetic threshold; the
trigonometric and least-squares checks get floating thresholds scaled to
their conditioning.
"""

# Structural operator identities: entries are exact rationals, only the
# rounding of 1/rho contributes.
IDENTITY_EXACT = 1e-14

# Trigonometric commutation identities (frame entries are sines/cosines).
COMMUTATION = 1e-10

# Closed-form scaling matrix entries.
SCALING_ENTRY = 1e-12

# Pseudoinverse post-check FA = I and dual sanity checks.
DUAL_IDENTITY = 1e-9

# Rank cutoff: smallest singular value relative to the largest.
RANK_RATIO = 1e-12

# Absolute rank floor for operator-frame products, as a fraction of the
# product of the factors' Frobenius norms. A mathematically zero product
# carries only roundoff (measured <= 4e-15 of that scale on the full
# verification grid) while genuinely full-rank products stay above 2e-2,
# so 1e-8 splits the two with six orders of margin on both sides.
RANK_FLOOR_REL = 1e-8

# Hermitian symmetry check default.
HERMITIAN_SYM = 1e-10

# Eigendecomposition residual, relative to the spectral norm.
EIG_RESIDUAL = 1e-9

# Matrix-free apply vs dense multiplication, relative to the input sup norm.
APPLY_MATCH = 1e-12

# Sigma-delta residual identity, relative to m * max(1, |y|_inf).
RESIDUAL_REL = 1e-10

# Lattice snap tolerance (relative) in the codec.
LATTICE_SNAP = 1e-9

# Zero-sum frame check, relative to the frame size m.
ZERO_SUM = 1e-9

# Parity endpoint check.
PARITY = 1e-9

# Frame bound eigenvalue comparisons.
FRAME_BOUNDS = 1e-8
