"""Shortest simple paths in nearly conservative digraphs.

A weight function is *nearly conservative* when every negative directed
cycle consists of exactly two arcs (an opposite pair with negative sum).
This package decides that property and, when it holds, computes exact
all-pairs shortest simple-path distances with explicit path reconstruction,
by a fixed-parameter pipeline: subset dynamic programming over negative
trees, inside weak blocks, inside strongly connected components.
"""

from .apsp_core import (
    INF,
    NOT_NEARLY_CONSERVATIVE,
    SOLVED,
    ApspOutcome,
    DistanceMatrix,
    FeasibilityWitness,
    LimitExceeded,
    NegativeCycleWitness,
    SpanningArcWitness,
    check_spanning_tree_case,
    feasibility_test,
    floyd_warshall,
    single_tree_apsp,
    subset_dp,
)
from .decomposition import (
    build_condensed_dag,
    compose_blocks,
    dag_apsp,
    solve,
    solve_block,
    strongly_connected_components,
    weak_blocks,
)
from .graph_core import (
    Arc,
    ForestCycle,
    InternalError,
    MalformedInput,
    NegativeForest,
    NegativeTree,
    WeightedDigraph,
    build_negative_forest,
    classify_and_augment,
    induced_subgraph,
    normalize,
)
from .path_recon import (
    NoPath,
    PathResult,
    PredecessorMatrix,
    extract_path,
    predecessors_condensed,
    predecessors_dp,
    predecessors_tree,
)
from .tree_metrics import TreeDistanceTable, tree_distances

__version__ = "0.1.0"


def prepare(arc_triples, n: int, origin: str = "directed-input") -> WeightedDigraph:
    """Normalize raw (tail, head, weight) triples and classify the arcs."""
    return classify_and_augment(normalize(arc_triples, n, origin))


def solve_arcs(arc_triples, n: int, *, max_trees: int = 24, want_paths: bool = True):
    """One-call pipeline from raw arc triples to an ApspOutcome."""
    return solve(prepare(arc_triples, n), max_trees=max_trees, want_paths=want_paths)
