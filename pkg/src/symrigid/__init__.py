"""Rigidity of symmetric plane frameworks from quotient gain graphs."""

from .group import (
    GroupElement,
    GroupMismatchError,
    GroupSpec,
    Subgroup,
    subgroup_generated,
)
from .gain_graph import (
    BALANCED,
    OTHER,
    UNBALANCED_CYCLIC,
    BalanceClass,
    Edge,
    GainGraph,
    InvalidGainGraphError,
)
from .covering import (
    CoverVertex,
    CoveringGraph,
    FixedEdgeReport,
    QuotientResult,
    expand,
    quotient_of,
    strip_fixed,
)
from .connectivity import (
    KBlock,
    MixedCut,
    SymmetricSeparation,
    edge_connectivity,
    edge_trace,
    find_k_block,
    is_n_gain_mixed_connected,
    is_n_mixed_connected,
    iter_k_blocks,
    lift_component,
    max_gain_mixed_connectivity,
    max_mixed_connectivity,
    symmetric_separation,
    vertex_trace,
)
from .matroid import (
    CharacterizationUnknownError,
    CountFamily,
    InstanceTooLargeError,
    RankResult,
    count,
    forced_rigidity_threshold,
    iota_rigidity_threshold,
    is_forced_rigid_combinatorial,
    is_independent,
    is_iota_rigid_combinatorial,
    is_rigid_combinatorial,
    mu,
    nu,
    rank,
    rho,
)
from .numeric import (
    IndeterminateRankError,
    MotionSpaceReport,
    Placement,
    RigidityMatrix,
    build_rigidity_matrix,
    character_rank_of_edges,
    full_rank_report,
    is_rigid_numeric,
    motion_space,
    symmetric_generic_placement,
    symmetry_adapted_basis,
    trivial_motion_dim,
)
from .symcover import (
    CoverBoundReport,
    CoverSet,
    SymmetricCover,
    check_cover_lower_bound,
    cover_from_partition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
