"""Exact Thurston-norm toolkit for good graph manifolds.

Computes reduced plumbing matrices, kernel norms, polyhedral unit balls,
fiberedness and Betti data from simplified decomposition graphs, and
synthesizes a graph-manifold description realizing a prescribed rational
sum-of-absolute-values norm.
"""

from .exactla import (
    DependentInput,
    kernel_basis,
    prescribed_kernel_matrix,
    rat_from_str,
    rat_to_str,
)
from .polytope import (
    FaceFan,
    RatPolytope,
    cone_refines,
    convex_hull,
    face_fan,
    is_complete,
    section,
)
from .normball import (
    NotANorm,
    SumAbsNorm,
    completion,
    evaluate,
    is_norm,
    make_norm,
    pullback,
    unit_ball_deflate,
    unit_ball_oracle,
    weight_solve,
)
from .manifold import (
    InvariantReport,
    InvalidGraph,
    NotRealizable,
    RealizationResult,
    SimplifiedGraph,
    SurgeryPair,
    Unachievable,
    VertexLabel,
    derived_chi,
    invariants,
    nonvanishing_norm,
    realize,
    reduced_plumbing_matrix,
    seifert_rank,
    thurston_value,
    validate,
    witness_surgeries,
)

__version__ = "0.1.0"
