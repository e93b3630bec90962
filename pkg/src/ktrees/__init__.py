"""Minimum-weight unions of k edge-disjoint spanning trees on random graphs.

The package covers the union of k graphic matroids (forest families with an
augmenting insertion oracle), k-deeply connected components, the greedy
solver, Poisson fixed-point predictions and a Monte-Carlo harness.
"""

from .deep import DeepPartition, Layers, components, is_k_deeply_connected, normal_representation
from .errors import (
    BelowThreshold,
    DegenerateInput,
    InstanceTooLarge,
    InvalidArgument,
    KTreesError,
    NotDeeplyConnected,
)
from .graph import (
    CoreResult,
    Graph,
    WeightDistribution,
    WeightedGraph,
    gen_gnm,
    gen_gnp,
    gen_weighted_complete,
    kcore,
)
from .matroid import ForestFamily, InsertOutcome, Status, brute_force_rank, extract_forests, rank_of
from .solver import ProcessTrace, Solution, brute_force_min_union, min_weight_union, run_process
from .streams import stream

__version__ = "0.1.0"

__all__ = [
    "BelowThreshold",
    "CoreResult",
    "DeepPartition",
    "DegenerateInput",
    "ForestFamily",
    "Graph",
    "InsertOutcome",
    "InstanceTooLarge",
    "InvalidArgument",
    "KTreesError",
    "Layers",
    "NotDeeplyConnected",
    "ProcessTrace",
    "Solution",
    "Status",
    "WeightDistribution",
    "WeightedGraph",
    "brute_force_min_union",
    "brute_force_rank",
    "components",
    "extract_forests",
    "gen_gnm",
    "gen_gnp",
    "gen_weighted_complete",
    "is_k_deeply_connected",
    "kcore",
    "min_weight_union",
    "normal_representation",
    "rank_of",
    "run_process",
    "stream",
]
