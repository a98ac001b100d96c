"""cdspart: CDS partitions for structured graph classes and conversion of
disjoint dominating trees into connected prescribed-size partitions."""

from .builders import (
    BuilderError,
    CdsFamily,
    InsufficientConnectivity,
    biconvex_backbones,
    cds_biconvex,
    cds_convex,
    cds_interval,
    convex_backbones,
    extend_to_partition,
    validate_family,
)
from .engine import (
    CdsInput,
    Complete,
    Emission,
    EngineError,
    GLInstance,
    GlPartition,
    PartitionState,
    SolveOutcome,
    categorize_trees,
    solve,
    solve_single_tree,
    validate_cds_input,
)
from .flows import (
    PathFamily,
    local_connectivity,
    make_induced,
    vertex_disjoint_paths,
)
from .graphs import (
    DominatingTree,
    Graph,
    GraphError,
    dominates,
    induced_subgraph,
    is_connected_subset,
    is_k_connected,
    open_neighborhood,
    spanning_tree,
    vertex_connectivity,
)
from .models import (
    BiconvexModel,
    ConvexModel,
    IntervalModel,
    PathDecomposition,
    interval_connectivity,
    interval_path_decomposition,
)
from .verify import (
    VerificationReport,
    brute_cds,
    brute_gl,
    brute_min_vertex_cut,
    brute_vertex_connectivity,
    counterexample_chordal,
    counterexample_convex,
    counterexample_convex_model,
    verify_cds_family,
    verify_cds_partition,
    verify_gl,
)

__version__ = "0.1.0"
