"""Exact verification of divisor matchings for six spherical matrix models.

For each implemented case the package derives the locus where orbit classes
double from explicit matrix models (A side), computes the dual-side
determinant/Pfaffian polynomial through Kronecker sums (B side), and
certifies their equality up to an explicit rational unit, alongside
regularity, orbit-counting, symmetric-function, and kernel-algebra checks.
Everything is exact rational arithmetic; there are no tolerances.
"""

__version__ = "0.1.0"

from .liealg import Case  # noqa: F401
