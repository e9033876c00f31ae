"""Exact-arithmetic toolkit for Lie superalgebra structures.

Core layers, bottom to top: ``exact_linalg`` (rational rank/kernel engine),
``graded`` (Koszul signs, wedge bases, shuffles), ``superalgebra`` (structure
constants, axiom checkers, derivations), ``cochains`` (the graded Lie algebra
of super-antisymmetric maps), ``triple`` and ``crossed`` (Maurer-Cartan
characterizations and cohomology), ``deformation`` (order-by-order formal
deformation checks), ``cli`` (file-driven checks and reports).
"""

from .errors import (
    ArityMismatch,
    CompositionNonzero,
    DimensionMismatch,
    InternalInvariantError,
    InvalidAction,
    ParseError,
    ShapeMismatch,
    SpaceMismatch,
    SupercochainError,
    UsageError,
    ValidationError,
)
from .exact_linalg import Matrix, cohomology_dims, format_scalar, kernel_basis, parse_scalar, rank
from .graded import (
    GradedSpace,
    direct_sum,
    koszul_K,
    koszul_sign,
    normalize_tuple,
    shuffles,
    wedge_basis,
)
from .cochains import BlockCochain, Cochain, circ, f_membership, hat_extend, nr_bracket, project_block
from .superalgebra import (
    CheckReport,
    LinearMap,
    SuperAlgebra,
    abelian,
    check_jacobi,
    check_super_skew,
    derivation_space,
    gl,
    is_homomorphism,
    semidirect,
)
from .triple import (
    ActionMap,
    LieSupActTriple,
    check_action,
    mc_element,
    mc_residual,
    triple_coboundary_matrix,
    triple_cohomology,
)
from .crossed import (
    CHMorphism,
    CrossedHom,
    ch_bracket,
    ch_bracket_closed,
    ch_cohomology,
    ch_mc_residual,
    check_crossed,
    check_morphism,
    compose_morphisms,
    d_D_matrix,
    del_pi_rho,
    graph_check,
    identity_morphism,
    verify,
)
from .deformation import (
    CrossedHomDeformation,
    TripleDeformation,
    ch_deformation_residual,
    ch_infinitesimal,
    linear_ch_check,
    linear_triple_check,
    triple_deformation_residual,
    triple_infinitesimal,
)

__version__ = "0.1.0"
