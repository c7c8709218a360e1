"""Numerical tolerances and capacity limits, pinned in one place.

Relative tolerances are scaled by a norm at the point of use; absolute
ones are compared directly.
"""

from __future__ import annotations

# eigendecomposition residual and eigenvalue agreement (relative)
TOL_EIG = 1e-12

# allowed Hermiticity deviation, relative to the Frobenius norm
TOL_HERM = 1e-10

# eigenvector orthonormality deviation (absolute)
TOL_ORTH = 1e-10

# allowed |trace - 1| for density operators (absolute)
TOL_TRACE = 1e-10

# allowed negative eigenvalue magnitude for PSD checks (absolute)
TOL_PSD = 1e-10

# verdict thresholds (absolute): witnessed negativity, null operator,
# commutator vanishing
TOL_WITNESS = 1e-10
TOL_NULL = 1e-10
TOL_COMM = 1e-10

# top-gap degeneracy flag: gap <= TOL_DEGEN * lambda_max
TOL_DEGEN = 1e-8

# overlap boundary guard: |f| <= TOL_F or |f| >= 1 - TOL_F routes to the
# dedicated orthogonal / parallel case analyses
TOL_F = 1e-6

# hard cap on the amplification-plan iteration scan
PLAN_CAP = 10**6

# dimension cap for dense eigendecompositions
EIGEN_DIM_CAP = 256

# total-dimension cap for tensor products and shift circuits
# (a control qubit over four 4-level registers)
TOTAL_DIM_CAP = 2 * 4**4
