"""
Mutual orthogonality and the conflict graph of a code.
"""
from __future__ import annotations

import functools
import itertools
import logging
import typing as tp
from dataclasses import dataclass

import networkx as nx
import numpy as np

from fastdec_utils.codes import CodeBasis
from fastdec_utils.exceptions import MatrixShapeError
from fastdec_utils.matcore import as_cmatrix, dagger, frobenius
from fastdec_utils.utils import default_tolerance
from fastdec_utils.utils.functional import bitmask_of
from fastdec_utils.utils.rng import make_rng

logger = logging.getLogger(__name__)


def mutually_orthogonal(A, B, tol: float = None) -> bool:
    """
    True if ||A B* + B A*||_F <= tol * max(1, ||A||_F ||B||_F).

    Raises
    ------
    `MatrixShapeError`
        If the matrices are not square of the same size.
    """
    tol = default_tolerance() if tol is None else tol
    A = as_cmatrix(A, "first matrix")
    B = as_cmatrix(B, "second matrix")
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise MatrixShapeError(f"Expected square matrices of equal size, got {A.shape} and {B.shape}")
    scale = max(1.0, frobenius(A) * frobenius(B))
    return frobenius(A @ dagger(B) + B @ dagger(A)) <= tol * scale


@dataclass(frozen=True, eq=False)
class ConflictGraph:
    """
    Undirected graph on the 2l basis positions; an edge joins
    every pair that is NOT mutually orthogonal. Vertices are 0-based.
    """

    v: int
    adjacency: np.ndarray

    def __post_init__(self):
        adj = np.array(self.adjacency, dtype=bool)
        if adj.shape != (self.v, self.v):
            raise ValueError(f"Adjacency must be {self.v}x{self.v}, got {adj.shape}")
        if not np.array_equal(adj, adj.T):
            raise ValueError("Adjacency must be symmetric")
        if adj.diagonal().any():
            raise ValueError("Conflict graphs have no self-loops")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_edges(cls, v: int, edges: tp.Iterable[tp.Tuple[int, int]]) -> ConflictGraph:
        adj = np.zeros((v, v), dtype=bool)
        for a, b in edges:
            if a == b:
                raise ValueError(f"Self-loop on vertex {a}")
            adj[a, b] = adj[b, a] = True
        return cls(v, adj)

    @classmethod
    def empty(cls, v: int) -> ConflictGraph:
        return cls(v, np.zeros((v, v), dtype=bool))

    @classmethod
    def complete(cls, v: int) -> ConflictGraph:
        return cls(v, ~np.eye(v, dtype=bool))

    @property
    def edges(self) -> tp.List[tp.Tuple[int, int]]:
        rows, cols = np.nonzero(np.triu(self.adjacency, k=1))
        return list(zip(rows.tolist(), cols.tolist()))

    @property
    def neighbor_masks(self) -> tp.List[int]:
        """
        Neighbors of every vertex as an int bitmask.
        """
        return [bitmask_of(np.nonzero(row)[0].tolist()) for row in self.adjacency]

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adjacency[a, b])

    def degree(self, a: int) -> int:
        return int(self.adjacency[a].sum())

    def with_edge(self, a: int, b: int) -> ConflictGraph:
        adj = self.adjacency.copy()
        adj[a, b] = adj[b, a] = True
        return ConflictGraph(self.v, adj)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.v))
        graph.add_edges_from(self.edges)
        return graph

    @functools.cached_property
    def _nx_graph(self) -> nx.Graph:
        return nx.freeze(self.to_networkx())

    def components(self, removed: tp.Iterable[int] = ()) -> tp.List[tp.List[int]]:
        """
        Connected components of the graph minus `removed`, each sorted,
        ordered by their smallest vertex.
        """
        kept = set(range(self.v)).difference(removed)
        view = self._nx_graph.subgraph(kept)
        return sorted(sorted(c) for c in nx.connected_components(view))

    def vertex_connectivity(self, members: tp.Iterable[int]) -> int:
        """
        Least number of vertices whose removal disconnects the subgraph
        induced by `members` (size - 1 for a clique).
        """
        return nx.node_connectivity(self._nx_graph.subgraph(list(members)))

    def __str__(self):
        return f"ConflictGraph(v={self.v}, edges={len(self.edges)})"


def conflict_graph(basis: CodeBasis, tol: float = None) -> ConflictGraph:
    """
    Conflict graph of a code: edge (i, j) if A_i and A_j are not
    mutually orthogonal.
    """
    v = basis.size
    adj = np.zeros((v, v), dtype=bool)
    for i, j in itertools.combinations(range(v), 2):
        if not mutually_orthogonal(basis[i], basis[j], tol):
            adj[i, j] = adj[j, i] = True
    graph = ConflictGraph(v, adj)
    logger.debug("Conflict graph of %s: %s", basis, graph)
    return graph


def random_graph(v: int, edge_prob: float, seed: int, stream: int = 0) -> ConflictGraph:
    """
    Seeded Erdos-Renyi graph on `v` vertices.
    """
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError(f"Edge probability must be in [0, 1], got {edge_prob}")
    rng = make_rng(seed, stream)
    upper = np.triu(rng.random((v, v)) < edge_prob, k=1)
    return ConflictGraph(v, upper | upper.T)
