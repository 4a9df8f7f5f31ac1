"""Centralized numerical tolerances.

Single knob for reproducibility: every module pulls its tolerance from
here instead of hard-coding literals at call sites.
"""

# eigenvalue assertions (containment, ladders, symmetry matching)
SPECTRAL_TOL = 1e-9

# quadratic-form identities and embedding norm identities
FORM_TOL = 1e-10

# symmetrized operator must satisfy max|S - S^T| below this
SYMMETRY_TOL = 1e-10

# orthonormality / eigen-residual slack of a decomposition
BASIS_TOL = 1e-8

# eigenvalues closer than this fraction of the spectral span merge into
# one atom of a step measure
ATOM_GROUP_REL_TOL = 1e-8

# absolute slack when a CDF query lands exactly on an atom location
ATOM_QUERY_TOL = 2e-9

# counting identity (sum of vertex measures vs. integer eigenvalue count)
COUNTING_TOL = 1e-7

# masses this slightly negative are round-off and clamp to zero
MASS_CLAMP = -1e-12

# relative tolerance used by BoundCheck: holds iff the relation is
# satisfied within SPECTRAL_TOL * max(1, |rhs|)
BOUND_REL_TOL = SPECTRAL_TOL

# uniform mixing time threshold on the worst relative deviation
MIXING_THRESHOLD = 0.25
