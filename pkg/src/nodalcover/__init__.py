"""Exact combinatorics and linear algebra for coverings of nodal curves.

The package computes with the free-product fundamental groups of nodal
curves, the coverings attached to their finite-dimensional representations
over F_p(t), constant-coefficient descent twists and their integral models,
Frobenius-divided data, and function Hopf algebras of finite groups.
"""

__version__ = "0.1.0"

from .field import (
    FunctionField,
    RationalFunction,
    MatrixK,
    LatticeK,
    solve_linear,
    lattice_hermite,
    valuation_t,
    frobenius,
    rf_arith,
    rf_from_string,
    rf_to_string,
    INFINITY,
)
from .groups import (
    FiniteGroup,
    FPSignature,
    FPWord,
    DirectTuple,
    fp_normalize,
    fp_mul,
    alpha,
    enumerate_words,
)
from .curves import NodalCurve, Pi1Presentation, dual_graph, betti_rank, pi1_presentation
from .reps import (
    ContinuousRep,
    FiniteQuotientRep,
    eval_word,
    rep_tensor,
    inflate,
    intertwiners,
)
from .covering import (
    ComponentIndex,
    FiniteCover,
    InvariantOpen,
    FundamentalDomain,
    canonical_component,
    component_action,
    certify_free_action,
    find_separating_open,
    fundamental_domain,
    cover_witness,
    build_finite_cover,
)
from .descent import (
    MeromorphicCocycle,
    LatticeAssignment,
    FiniteCocycle,
    datum_from_rep,
    check_cocycle,
    hom_cocycle,
    integralize,
    det_valuation_conserved,
    conj_equivariance_check,
    descend_inflation,
)
from .stratified import (
    FDividedDatum,
    fdiv_from_rep,
    frobenius_transport,
    hom_fdiv,
    tensor_fdiv,
)
from .specialize import (
    SpecializationResult,
    sp_pipeline,
    F_pipeline,
    commuting_square_check,
)
from .hopf import HopfAlgebra, QuotientTower, function_hopf, rep_comodule_roundtrip, tower_hull
