"""solvlat: exact-arithmetic toolkit for lattices in solvable Lie groups.

The package decides, with machine-checkable certificates, whether certain
completely solvable Lie groups admit lattices: two non-existence pipelines
(driven by Groebner elimination and by automorphism eigenvalue matching) and
one constructive pipeline that builds and verifies a lattice from an integer
cubic.  Supporting machinery: exact linear algebra over Q, multivariate
polynomials with Buchberger's algorithm, Lie algebras by structure constants,
and Lie-algebra cohomology with cup products and the Hard Lefschetz test.
"""

from .exact import (
    MatrixQ,
    Q,
    RootIsolation,
    UniPoly,
    charpoly,
    isolate_roots,
    mat_kernel,
    mat_rank,
    rational_roots,
    smith_normal_form,
    sturm_count,
)

__all__ = [
    "MatrixQ",
    "Q",
    "RootIsolation",
    "UniPoly",
    "charpoly",
    "isolate_roots",
    "mat_kernel",
    "mat_rank",
    "rational_roots",
    "smith_normal_form",
    "sturm_count",
]

__version__ = "0.1.0"
