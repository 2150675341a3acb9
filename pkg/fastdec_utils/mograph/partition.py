"""
Group partitions and the search for the partition of least
decoding complexity.

For a removed set W (the conditioned symbols, group g+1) the groups
are the connected components of the conflict graph minus W: merging
components never lowers the largest group, so components-as-groups is
optimal for a fixed W. The exponent to minimize is
|W| + (largest component of G - W), over the W leaving at least two
components; a connected graph with no such W is not fast decodable.
"""
from __future__ import annotations

import itertools
import json
import logging
import typing as tp
from dataclasses import dataclass, field

import pandas as pd

from fastdec_utils.exceptions import CodeFormatError, PartitionError
from fastdec_utils.mograph.graph import ConflictGraph
from fastdec_utils.utils import any_duplicated, get_env_params
from fastdec_utils.utils.functional import bitmask_members, bitmask_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupPartition:
    """
    Disjoint groups Gamma_1..Gamma_g and the remainder Gamma_{g+1},
    covering the 0-based positions 0..v-1. Groups keep their order;
    members are sorted.
    """

    groups: tp.Tuple[tp.Tuple[int, ...], ...]
    remainder: tp.Tuple[int, ...] = ()

    def __post_init__(self):
        groups = tuple(tuple(sorted(int(u) for u in group)) for group in self.groups)
        remainder = tuple(sorted(int(u) for u in self.remainder))
        if not groups:
            raise PartitionError("A partition needs at least one group")
        if any(not group for group in groups):
            raise PartitionError("Groups must be nonempty")
        members = [u for group in groups for u in group] + list(remainder)
        if any_duplicated(members):
            raise PartitionError("Groups and remainder must be disjoint")
        if any(u < 0 for u in members):
            raise PartitionError("Positions must be nonnegative")
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "remainder", remainder)

    @property
    def g(self) -> int:
        return len(self.groups)

    @property
    def sizes(self) -> tp.Tuple[int, ...]:
        """n_1..n_g"""
        return tuple(len(group) for group in self.groups)

    @property
    def remainder_size(self) -> int:
        return len(self.remainder)

    @property
    def v(self) -> int:
        return sum(self.sizes) + self.remainder_size

    @property
    def exponent(self) -> int:
        """n_{g+1} + max n_i"""
        return self.remainder_size + max(self.sizes)

    @property
    def k(self) -> int:
        """min n_i"""
        return min(self.sizes)

    @property
    def permutation(self) -> tp.Tuple[int, ...]:
        """
        pi: the column order Gamma_1, ..., Gamma_g, Gamma_{g+1}.
        """
        return tuple(u for group in self.groups for u in group) + self.remainder

    def covers(self, v: int) -> bool:
        return sorted(self.permutation) == list(range(v))

    def cross_conflicts(self, graph: ConflictGraph) -> tp.List[tp.Tuple[int, int]]:
        """
        Conflict edges joining two distinct groups.
        """
        conflicts = []
        for (i, first), (j, second) in itertools.combinations(enumerate(self.groups), 2):
            for u in first:
                for w in second:
                    if graph.has_edge(u, w):
                        conflicts.append((min(u, w), max(u, w)))
        return sorted(conflicts)

    def validate_against(self, graph: ConflictGraph):
        """
        Raises
        ------
        `PartitionError`
            If the partition doesn't cover the graph's vertices or two
            groups share a conflict edge.
        """
        if not self.covers(graph.v):
            raise PartitionError(
                f"Partition covers {self.v} positions, expected exactly 1..{graph.v}"
            )
        conflicts = self.cross_conflicts(graph)
        if conflicts:
            u, w = conflicts[0]
            raise PartitionError(
                f"Positions {u + 1} and {w + 1} are in distinct groups but "
                f"not mutually orthogonal ({len(conflicts)} cross-group conflicts)"
            )

    def fast_evaluations(self, q: int) -> int:
        """
        Metric evaluations of the conditioned decoder for |S| = q:
        q^{n_{g+1}} * sum q^{n_i} + q^{n_{g+1}}.

        Each of the q^{n_{g+1}} remainder assignments costs one evaluation
        per group candidate plus one for the remainder rows. That last term
        stays when the remainder is empty (a single, empty assignment), so
        four singleton groups at q = 4 take 4 * 4 + 1 = 17 evaluations,
        not 16.
        """
        conditioned = q ** self.remainder_size
        return conditioned * sum(q ** size for size in self.sizes) + conditioned

    def to_dict(self) -> tp.Dict[str, tp.Any]:
        """1-based JSON form."""
        return {
            "groups": [[u + 1 for u in group] for group in self.groups],
            "remainder": [u + 1 for u in self.remainder],
        }

    @classmethod
    def from_dict(cls, doc: tp.Any) -> GroupPartition:
        if not isinstance(doc, dict):
            raise CodeFormatError("A partition must be a JSON object")
        try:
            groups = [[int(u) - 1 for u in group] for group in doc["groups"]]
            remainder = [int(u) - 1 for u in doc.get("remainder", [])]
        except (KeyError, TypeError, ValueError) as e:
            raise CodeFormatError("Partition needs 'groups' as lists of 1-based positions", e) from e
        try:
            return cls(tuple(map(tuple, groups)), tuple(remainder))
        except PartitionError as e:
            raise CodeFormatError("Invalid partition", e) from e

    @classmethod
    def trivial(cls, v: int) -> GroupPartition:
        """A single group holding every position."""
        return cls((tuple(range(v)),), ())


def save_partition(partition: GroupPartition, path: str):
    with open(path, "w") as f:
        json.dump(partition.to_dict(), f, indent=2)


def load_partition(path: str) -> GroupPartition:
    try:
        with open(path) as f:
            doc = json.load(f)
    except json.JSONDecodeError as e:
        raise CodeFormatError(f"File '{path}' is not valid JSON", e) from e
    return GroupPartition.from_dict(doc)


@dataclass(frozen=True)
class BoundCheck:
    """
    One evaluated inequality lhs <= rhs (or the relation in `relation`).
    """

    name: str
    lhs: int
    rhs: int
    relation: str = "<="
    passed: bool = True

    def to_dict(self) -> tp.Dict[str, tp.Any]:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "relation": self.relation,
            "rhs": self.rhs,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class ComplexityReport:
    """
    Result of the partition search: the exponent e of the decoding
    complexity |S|^e, the partition reaching it and the evaluated
    bound checks.
    """

    v: int
    exponent: int
    partition: tp.Optional[GroupPartition] = None
    g_group: tp.Optional[int] = None
    heuristic: bool = False
    bound_checks: tp.Tuple[BoundCheck, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not 1 <= self.exponent <= self.v:
            raise ValueError(f"Exponent {self.exponent} outside [1, {self.v}]")

    @property
    def fast_decodable(self) -> bool:
        return self.partition is not None and self.partition.g >= 2

    @property
    def g(self) -> tp.Optional[int]:
        return self.partition.g if self.fast_decodable else None

    @property
    def k(self) -> tp.Optional[int]:
        return self.partition.k if self.fast_decodable else None

    @property
    def all_checks_pass(self) -> bool:
        return all(check.passed for check in self.bound_checks)

    def with_checks(self, checks: tp.Iterable[BoundCheck]) -> ComplexityReport:
        return ComplexityReport(
            v=self.v,
            exponent=self.exponent,
            partition=self.partition,
            g_group=self.g_group,
            heuristic=self.heuristic,
            bound_checks=tuple(checks),
        )

    @property
    def checks_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [check.to_dict() for check in self.bound_checks],
            columns=["name", "lhs", "relation", "rhs", "pass"],
        )

    def to_dict(self) -> tp.Dict[str, tp.Any]:
        return {
            "exponent": self.exponent,
            "fast_decodable": self.fast_decodable,
            "g": self.g,
            "k": self.k,
            "g_group": self.g_group,
            "heuristic": self.heuristic,
            "partition": self.partition.to_dict() if self.fast_decodable else None,
            "bound_checks": [check.to_dict() for check in self.bound_checks],
        }


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _components(neighbors: tp.List[int], mask: int) -> tp.List[int]:
    """
    Components of the subgraph induced by `mask` as bitmasks,
    ordered by smallest vertex.
    """
    unseen = mask
    components = []
    while unseen:
        start = unseen & -unseen
        component = start
        frontier = start
        while frontier:
            low = frontier & -frontier
            frontier &= frontier - 1
            vertex = low.bit_length() - 1
            fresh = neighbors[vertex] & unseen & ~component
            component |= fresh
            frontier |= fresh
        unseen &= ~component
        components.append(component)
    return components


def _connected_subset(
    component: int, size: int, neighbors: tp.List[int], start: int = None
) -> tp.List[int]:
    """
    The first `size` vertices of a BFS of `component`, from `start`
    or else from its smallest vertex.
    """
    if start is None:
        start = (component & -component).bit_length() - 1
    order = [start]
    visited = 1 << start
    position = 0
    while len(order) < size:
        vertex = order[position]
        position += 1
        for w in bitmask_members(neighbors[vertex] & component & ~visited):
            visited |= 1 << w
            order.append(w)
    return order[:size]


class PartitionSearch:
    """
    Exact search over candidate exponents.

    `extend` looks for a removed set W containing `removed` and disjoint
    from `kept`, with at most `left` more vertices, whose complement has at
    least two components of at most `max_size` vertices. Any connected set
    of max_size + 1 vertices of an oversized component must lose a vertex,
    and a lone component must lose one to be split, so the search branches
    over such a set: the j-th branch removes its j-th vertex and keeps the
    ones before it. A state is cut when a connected block of kept vertices
    is oversized or when the components need more removals than `left`
    allows (see `needed`). Failed states are remembered with the largest
    budget they failed for.

    `run` raises the budget for each exponent in turn; the first feasible
    exponent is the optimum and W is then completed position by position
    to the lexicographically smallest sorted set reaching it.
    """

    # Failures of shallower subtrees are cheaper to recompute than to store.
    MEMO_MIN_LEFT = 2

    def __init__(self, graph: ConflictGraph):
        self.graph = graph
        self.v = graph.v
        self.full = (1 << graph.v) - 1
        self.neighbors = graph.neighbor_masks
        self.nodes_visited = 0
        self._failed: tp.Dict[tp.Tuple[int, int, int], int] = {}
        self._connectivity: tp.Dict[int, int] = {}
        self._packing: tp.Dict[tp.Tuple[int, int], int] = {}

    def get_logger(self) -> logging.Logger:
        return logging.getLogger(f"fastdec_utils.{self.__class__.__name__}")

    def is_clique(self, component: int) -> bool:
        return all(
            (self.neighbors[u] | (1 << u)) & component == component
            for u in bitmask_members(component)
        )

    def connectivity(self, component: int) -> int:
        if component not in self._connectivity:
            self._connectivity[component] = self.graph.vertex_connectivity(
                bitmask_members(component)
            )
        return self._connectivity[component]

    def packing(self, component: int, max_size: int) -> int:
        """
        Number of disjoint connected sets of max_size + 1 vertices found
        greedily inside `component`; each needs its own removed vertex.
        """
        key = (component, max_size)
        if key not in self._packing:
            count = 0
            rest = component
            while True:
                oversized = [c for c in _components(self.neighbors, rest) if _popcount(c) > max_size]
                if not oversized:
                    break
                for c in oversized:
                    rest &= ~bitmask_of(_connected_subset(c, max_size + 1, self.neighbors))
                    count += 1
            self._packing[key] = count
        return self._packing[key]

    def needed(self, components: tp.List[int], max_size: int) -> tp.Optional[int]:
        """
        Lower bound on the vertices still to remove, or None when no
        removal can succeed.

        A lone component must be disconnected, which takes at least its
        vertex connectivity; cliques and components of fewer than three
        vertices can't be split into two nonempty parts. An oversized
        component among several either shrinks to `max_size` while staying
        connected or gets disconnected.
        """
        if not components:
            return None
        if len(components) == 1:
            component = components[0]
            size = _popcount(component)
            if size < 3 or self.is_clique(component):
                return None
            bound = self.connectivity(component)
            if size > max_size:
                bound = max(bound, self.packing(component, max_size))
            return bound
        total = 0
        for component in components:
            size = _popcount(component)
            if size > max_size:
                total += max(
                    min(self.connectivity(component), size - max_size),
                    self.packing(component, max_size),
                )
        return total

    def extend(self, removed: int, kept: int, left: int, max_size: int) -> tp.Optional[int]:
        key = (removed, kept, max_size)
        if self._failed.get(key, -1) >= left:
            return None
        self.nodes_visited += 1
        found = self._extend(removed, kept, left, max_size)
        if found is None and left >= self.MEMO_MIN_LEFT:
            self._failed[key] = max(self._failed.get(key, -1), left)
        return found

    def _extend(self, removed: int, kept: int, left: int, max_size: int) -> tp.Optional[int]:
        components = _components(self.neighbors, self.full & ~removed)
        oversized = next((c for c in components if _popcount(c) > max_size), None)
        if oversized is None and len(components) >= 2:
            return removed
        if any(_popcount(c) > max_size for c in _components(self.neighbors, kept)):
            return None
        bound = self.needed(components, max_size)
        if bound is None or left <= 0 or bound > left:
            return None
        if oversized is not None:
            anchored = oversized & kept
            start = (anchored & -anchored).bit_length() - 1 if anchored else None
            branch = _connected_subset(oversized, max_size + 1, self.neighbors, start)
        else:
            branch = bitmask_members(components[0])
        free = [u for u in branch if not (kept >> u) & 1]
        for position, vertex in enumerate(free):
            found = self.extend(
                removed | (1 << vertex),
                kept | bitmask_of(free[:position]),
                left - 1,
                max_size,
            )
            if found is not None:
                return found
        return None

    def feasible(
        self, budget: int, max_size: int, forced: int = 0, forbidden: int = 0
    ) -> tp.Optional[int]:
        """
        A removed set W (bitmask) containing `forced`, disjoint from
        `forbidden`, with |W| <= budget, whose complement has at least two
        components, each of at most `max_size` vertices; None if there is none.
        """
        if forced & forbidden or _popcount(forced) > budget:
            return None
        return self.extend(forced, forbidden, budget - _popcount(forced), max_size)

    def reaches(self, removed: int, exponent: int) -> bool:
        """True if W = `removed` leaves two or more components and |W| + max n_i <= exponent."""
        components = _components(self.neighbors, self.full & ~removed)
        return len(components) >= 2 and (
            _popcount(removed) + max(_popcount(c) for c in components) <= exponent
        )

    def witness(self, exponent: int, forced: int, forbidden: int) -> tp.Optional[int]:
        """
        Some W containing `forced` and disjoint from `forbidden` that
        reaches `exponent`, or None.
        """
        for budget in range(_popcount(forced), exponent):
            found = self.feasible(budget, exponent - budget, forced, forbidden)
            if found is not None:
                return found
        return None

    def smallest_removed_set(self, exponent: int, known: int) -> int:
        """
        The lexicographically smallest sorted W reaching `exponent`,
        starting from the set `known`, which reaches it.

        `best` always extends the chosen prefix, so only positions
        below its next member need a search.
        """
        best = bitmask_members(known)
        chosen = []
        while not self.reaches(bitmask_of(chosen), exponent):
            start = chosen[-1] + 1 if chosen else 0
            for candidate in range(start, best[len(chosen)]):
                forced = bitmask_of(chosen + [candidate])
                skipped = bitmask_of(u for u in range(candidate) if u not in chosen)
                found = self.witness(exponent, forced, skipped)
                if found is not None:
                    best = bitmask_members(found)
                    break
            chosen.append(best[len(chosen)])
        return bitmask_of(chosen)

    def run(self) -> tp.Optional[tp.Tuple[int, int]]:
        """
        (exponent, removed bitmask) of the optimum, or None when
        the graph is not fast decodable.
        """
        if self.v < 2 or len(self.graph.edges) == self.v * (self.v - 1) // 2:
            return None
        for exponent in range(1, self.v):
            for budget in range(0, exponent):
                found = self.feasible(budget, exponent - budget)
                if found is not None:
                    removed = self.smallest_removed_set(exponent, found)
                    self.get_logger().debug(
                        "Exponent %d reached with W=%s after %d nodes",
                        exponent, bitmask_members(removed), self.nodes_visited,
                    )
                    return exponent, removed
        return None


def _partition_from_removed(graph: ConflictGraph, removed: tp.Iterable[int]) -> GroupPartition:
    removed = sorted(removed)
    groups = graph.components(removed)
    return GroupPartition(tuple(tuple(c) for c in groups), tuple(removed))


def _report(graph: ConflictGraph, removed, heuristic: bool) -> ComplexityReport:
    g_grp = g_group(graph)
    if removed is None:
        return ComplexityReport(v=graph.v, exponent=graph.v, g_group=g_grp, heuristic=heuristic)
    partition = _partition_from_removed(graph, removed)
    partition.validate_against(graph)
    return ComplexityReport(
        v=graph.v,
        exponent=partition.exponent,
        partition=partition,
        g_group=g_grp,
        heuristic=heuristic,
    )


def greedy_partition(graph: ConflictGraph) -> tp.Optional[tp.List[int]]:
    """
    Upper bound: repeatedly removes the highest-degree vertex of the
    largest component (smallest index on ties) and keeps the best valid
    removed set seen. None when no removal leaves two components.
    """
    v = graph.v
    removed = []
    best = None
    while True:
        components = graph.components(removed)
        kept = v - len(removed)
        if len(components) >= 2 and kept >= 2:
            exponent = len(removed) + max(len(c) for c in components)
            if best is None or exponent < best[0]:
                best = (exponent, list(removed))
        largest = max(components, key=len) if components else []
        if len(largest) <= 1 or kept <= 2:
            break
        inside = set(largest)
        vertex = max(
            largest,
            key=lambda u: (sum(1 for w in inside if graph.has_edge(u, w)), -u),
        )
        removed.append(vertex)
    return sorted(best[1]) if best is not None else None


def brute_force_partition(graph: ConflictGraph) -> ComplexityReport:
    """
    Exhaustive enumeration of every removed set; the reference for
    `optimal_partition` on small graphs.
    """
    best = None
    for size in range(0, graph.v + 1):
        for removed in itertools.combinations(range(graph.v), size):
            components = graph.components(removed)
            if len(components) < 2 or graph.v - size < 2:
                continue
            key = (size + max(len(c) for c in components), removed)
            if best is None or key < best:
                best = key
    return _report(graph, best[1] if best is not None else None, heuristic=False)


def optimal_partition(graph: ConflictGraph, exact_limit: int = None) -> ComplexityReport:
    """
    Partition of least exponent |W| + max n_i, ties broken by the
    lexicographically smallest sorted W (the empty set first).

    Graphs with more than `exact_limit` vertices get the greedy
    upper bound, flagged `heuristic`.
    """
    exact_limit = get_env_params()["exact_search_limit"] if exact_limit is None else exact_limit
    if graph.v > exact_limit:
        logger.info(
            "Graph with %d vertices exceeds the exact search limit %d; using greedy search",
            graph.v, exact_limit,
        )
        return _report(graph, greedy_partition(graph), heuristic=True)
    result = PartitionSearch(graph).run()
    removed = bitmask_members(result[1]) if result is not None else None
    return _report(graph, removed, heuristic=False)


def g_group(graph: ConflictGraph) -> tp.Optional[int]:
    """
    Number of groups of a g-group decodable split (empty remainder):
    the component count when there are at least two, else None.
    """
    count = len(graph.components())
    return count if count >= 2 else None
