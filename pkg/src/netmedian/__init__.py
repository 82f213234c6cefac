"""k-median approximation heuristics, exact solvers, and benchmarks on networks."""

__version__ = "0.1.0"

from .centrality import (
    DETERMINISTIC_METHODS,
    METHOD_ORDER,
    MethodId,
    RankedList,
    ScoreVector,
    VoteState,
    core_numbers,
    coreness_scores,
    degree_scores,
    extended_coreness_scores,
    extended_degree_scores,
    h_index_scores,
    pagerank_scores,
    random_candidate,
    rank_by_method,
    scores_for,
    top_k,
    voterank,
    voterank_with_state,
)
from .errors import (
    BudgetExceededError,
    ConvergenceError,
    DisconnectedGraphError,
    EdgeListParseError,
    EmptyGraphError,
    NetmedianError,
)
from .evaluation import (
    CandidateSet,
    DistanceField,
    EvaluationResult,
    Evaluator,
    ShellProfile,
    avg_distance,
    evaluate,
    farness,
    farness_from_shells,
    multi_source_bfs,
    shell_profile,
)
from .exact import (
    DistributionHistogram,
    ExactResult,
    ExpectedValue,
    brute_force_kmedian,
    distance_matrix,
    distribution_histogram,
    exact_expected_value,
    sampled_expected_value,
)
from .graph import (
    DegreeStats,
    Graph,
    RawEdgeList,
    VertexMapping,
    build_simple_graph,
    compose_mappings,
    degree_stats,
    export_edge_list,
    is_connected,
    largest_connected_component,
    load_graph,
    parse_edge_list,
)
from .harness import (
    ComparisonTable,
    ExperimentRecord,
    ExperimentSpec,
    MethodTiming,
    SuperChoice,
    emit_tables,
    error_to_best,
    error_to_optimal,
    parse_spec_file,
    parse_spec_text,
    read_records_csv,
    run_bench,
    run_experiment,
    run_experiment_detailed,
    run_network,
    super_algorithm,
    within_percent_shares,
    write_records_csv,
)
from .registry import RegistryEntry, check_against_registry, load_registry
from .rng import SplitMix64, derive_seed

__all__ = [name for name in dir() if not name.startswith("_")]
