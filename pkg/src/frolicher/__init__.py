"""Exact finite-model engine for Bott-Chern, Aeppli and symplectic cohomologies.

Models are finite exterior algebras with a derivation d (and optionally a
bidegree splitting or a symplectic form); everything is computed over Q or
Q(i) without floating point.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .cohomology import (
    CohomologyReport,
    adjoint_matrix,
    bc_aeppli_duality_check,
    cohomology_dims,
    decomposition_check,
    laplacian,
    symplectic_cohomology_dims,
)
from .complexes import (
    CochainComplex,
    DoubleComplex,
    SpectralPage,
    degeneration_page,
    doub_construction,
    double_complex_from_model,
    spectral_page,
    total_complex,
)
from .errors import (
    FrolicherError,
    AmbientMismatch,
    NotContained,
    ParseError,
    UnknownGenerator,
    DuplicateGenerator,
    UnknownModel,
    NotComplexModel,
    GcdViolation,
    MissingSecondDifferential,
    Unbounded,
    NoSymplecticForm,
    DegenerateForm,
    NotOrientable,
    InvalidModel,
)
from .linalg import Matrix, Subspace, image, intersect, kernel_basis, quotient_dim, rank
from .model import ModelSpec, builtin, load_model, monomial_basis, operator_matrix, parse_model, validate
from .symplectic import (
    LefschetzVerdict,
    SymplecticOperators,
    build_operators,
    de_rham_complex,
    hard_lefschetz,
    lefschetz_equivalence_report,
    phi_intertwine_check,
)
from .verdicts import (
    InequalityReport,
    LemmaVerdict,
    froelicher_bigraded,
    froelicher_symplectic,
    lemma_check,
    zgraded_equality_and_degeneration,
    zgraded_lemma,
)
