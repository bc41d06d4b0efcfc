"""Exact-arithmetic toolkit for optimal embeddings of commutative orders
into matrix orders over truncated local rings, and for selectivity of
maximal-order genera in prime-degree algebras via a finite class-group
model."""

from .abelian_groups import (
    FiniteAbelianGroup,
    Quotient,
    Subgroup,
    exponent,
    full_subgroup,
    join,
    power_subgroup,
    quotient,
    subgroup,
    trivial_subgroup,
)
from .errors import SelectisError
from .local_arith import (
    LocalMatrix,
    LocalRing,
    LocalScalar,
    ResidueMatrix,
    conjugate,
    reduced_norm_preimage,
    residue,
    residue_dependence,
    residue_rank,
)
from .optimal_embed import (
    AlgebraKind,
    CandidateEmbedding,
    LocalEmbedding,
    LocalEmbeddingNumber,
    OrbitCount,
    basis_action_det_expansion,
    basis_action_matrix,
    count_orbits,
    embedding_from_generator,
    enumerate_precision_embeddings,
    enumerate_residue_embeddings,
    is_optimal_independence,
    is_optimal_minor,
    is_optimal_oracle,
    local_embedding_number,
    quadratic_criterion,
    regular_representation,
    selection_matrix,
)
from .orders import (
    AlgebraClass,
    OrderPresentation,
    ResidueAlgebraClass,
    classify_residue_algebra,
    from_monic_poly,
    from_structure_constants,
)
from .selectivity import (
    ADMITS_ALL,
    ExtensionData,
    Frobenius,
    GlobalInstance,
    RamifiedPrime,
    SelectivityReport,
    can_embed_globally,
    decide_selectivity,
    global_embedding_count,
    sandwich_report,
    type_group,
)

__version__ = "0.1.0"
