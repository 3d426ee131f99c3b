"""pathlab: labelled trees, path packings, sparse random graphs, and
adaptive query experiments."""

from .census import (
    CensusResult,
    bound_sums,
    census_row_from_text,
    census_row_to_text,
    enumerate_M,
    enumerate_M_range,
    estimate_M,
)
from .gnp import (
    CovEstimate,
    EmbeddedTree,
    GnpDecomposition,
    GnpGraph,
    MuSolution,
    cov_gnp_estimate,
    decompose,
    gnp_from_text,
    gnp_to_text,
    gw_surrogate_cover,
    sample_gnp,
    solve_mu,
)
from .oracle import (
    AdaptiveStrategy,
    DFSStrategy,
    HiddenGraph,
    QueryLedger,
    RunOutcome,
    dfs_find_path,
    query,
    revalidate,
    run_strategy,
    transcript_from_text,
    transcript_to_text,
)
from .packing import (
    CentredEdgeReport,
    PathSystem,
    centred_edges,
    cov_exact,
    greedy_pack,
    split_path,
    validate_path_system,
)
from .streams import spawn_seed, stream_from
from .treekit import (
    GWConfig,
    Oversize,
    PruferCode,
    RejectionBudgetError,
    RootedTree,
    Tree,
    prufer_decode,
    prufer_encode,
    sample_gw_conditioned,
    sample_gw_poisson,
    sample_uniform_rooted_tree,
    sample_uniform_tree,
    tree_from_text,
    tree_stats,
    tree_to_text,
    validate_tree,
)

__version__ = "0.1.0"

__all__ = [
    "AdaptiveStrategy", "CensusResult", "CentredEdgeReport", "CovEstimate",
    "DFSStrategy", "EmbeddedTree", "GWConfig", "GnpDecomposition",
    "GnpGraph", "HiddenGraph", "MuSolution", "Oversize", "PathSystem",
    "PruferCode", "QueryLedger", "RejectionBudgetError", "RootedTree",
    "RunOutcome", "Tree", "bound_sums", "census_row_from_text",
    "census_row_to_text", "centred_edges", "cov_exact", "cov_gnp_estimate",
    "decompose", "dfs_find_path", "enumerate_M", "enumerate_M_range",
    "estimate_M", "gnp_from_text", "gnp_to_text", "greedy_pack",
    "gw_surrogate_cover", "prufer_decode", "prufer_encode", "query",
    "revalidate", "run_strategy", "sample_gnp", "sample_gw_conditioned",
    "sample_gw_poisson", "sample_uniform_rooted_tree",
    "sample_uniform_tree", "solve_mu", "spawn_seed", "split_path",
    "stream_from", "transcript_from_text", "transcript_to_text",
    "tree_from_text", "tree_stats", "tree_to_text", "validate_path_system",
    "validate_tree",
]
