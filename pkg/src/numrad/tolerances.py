"""Central numeric tolerances and search parameters.

Every comparison threshold and iterative-search constant used across the
package lives here, so the CLI can override them in one place and tests can
reference the same numbers the implementation uses.
"""

# Inequality comparison: a bound holds iff lhs <= rhs + TOL_CMP * max(1, |rhs|).
TOL_CMP = 1e-8

# Support-function sweep over [0, 2pi): grid resolution and golden-section
# bracket width for the angle refinement.
GRID_ANGLES = 1024
ANGLE_REFINE_TOL = 1e-12

# Golden-section bracket width for the weight search on [0, 1].
ALPHA_SEARCH_TOL = 1e-10

# Frobenius Hermiticity residual accepted by the eigensolver, relative to
# 1 + ||H||_F.
HERM_RESID_TOL = 1e-10

# Eigenvalues of a nominally PSD matrix below -PSD_CLAMP_REL * ||P|| are an
# error; anything in (-PSD_CLAMP_REL * ||P||, 0) is clamped to zero.
PSD_CLAMP_REL = 1e-10

# Applicability residual for the intertwining hypothesis |A|B = B*|A|,
# relative to 1 + ||A|| ||B||.
INTERTWINE_TOL = 1e-10

# Equality tolerance for hypothesis/conclusion implication checks.
IMPLICATION_TOL = 1e-6

# Spectral radius by repeated squaring: relative stopping change and the cap
# on the number of squarings (2^60-th power).
GELFAND_REL_TOL = 1e-10
GELFAND_MAX_STEPS = 60
