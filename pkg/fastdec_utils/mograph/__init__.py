from .graph import ConflictGraph, conflict_graph, mutually_orthogonal, random_graph
from .partition import (
    BoundCheck,
    ComplexityReport,
    GroupPartition,
    PartitionSearch,
    brute_force_partition,
    g_group,
    greedy_partition,
    load_partition,
    optimal_partition,
    save_partition,
)
from .theorems import analyze_code, normalize_to_anticommuting, verify_theorem_bounds
