"""Exact matching engine used by the welfare solvers.

Three routines: maximum-cardinality matching on bipartite graphs (hand-rolled
augmenting paths, plenty for desk-scale graphs), and maximum-weight matching
on bipartite and general graphs (blossom-based, via networkx, which runs in
exact integer arithmetic when all weights are integers).

Determinism contract: all three routines are pure functions of the input
graph.  The weighted routines additionally break ties between equally heavy
matchings toward the lexicographically smallest sorted edge-index sequence
(missing entries comparing as +infinity, i.e. low-index edges are greedily
preferred).  This is enforced arithmetically: edge i receives a perturbation
bonus of 2**(E-1-i) on top of ``weight * 2**E``, which makes the optimum of
the perturbed problem unique, so the result cannot depend on solver
internals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import networkx as nx

Edge = tuple[int, int, int]


@dataclass(frozen=True)
class Graph:
    """An undirected graph with non-negative integer edge weights.

    ``bipartition``, when present, is a (left, right) partition of all
    vertices that every edge must cross; the bipartite routines require it.
    """

    num_vertices: int
    edges: tuple[Edge, ...]
    bipartition: tuple[frozenset[int], frozenset[int]] | None = None

    def __post_init__(self) -> None:
        if self.num_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        seen: set[frozenset[int]] = set()
        for u, v, w in self.edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"edge ({u}, {v}) out of vertex range")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not isinstance(w, int) or isinstance(w, bool) or w < 0:
                raise ValueError(f"edge weights must be non-negative integers, got {w!r}")
            key = frozenset((u, v))
            if key in seen:
                raise ValueError(f"duplicate edge between {u} and {v}")
            seen.add(key)
        if self.bipartition is not None:
            left, right = self.bipartition
            if left & right or left | right != frozenset(range(self.num_vertices)):
                raise ValueError("bipartition must partition the vertex set")
            for u, v, _ in self.edges:
                if (u in left) == (v in left):
                    raise ValueError(f"edge ({u}, {v}) does not cross the bipartition")


def bipartite_graph(num_left: int, num_right: int, edges: Iterable[tuple[int, int, int]]) -> Graph:
    """Convenience constructor: left vertices 0..num_left-1, right vertex j
    becomes num_left + j, edges given as (left_index, right_index, weight)."""
    shifted = tuple((u, num_left + v, w) for u, v, w in edges)
    return Graph(
        num_vertices=num_left + num_right,
        edges=shifted,
        bipartition=(
            frozenset(range(num_left)),
            frozenset(range(num_left, num_left + num_right)),
        ),
    )


@dataclass(frozen=True)
class Matching:
    """A vertex-disjoint subset of a graph's edges."""

    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        used: set[int] = set()
        for u, v, _ in self.edges:
            if u in used or v in used:
                raise ValueError("matching edges are not vertex-disjoint")
            used.update((u, v))

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def weight(self) -> int:
        return sum(w for _, _, w in self.edges)

    def mate(self) -> dict[int, int]:
        """Vertex -> matched partner, in both directions."""
        out: dict[int, int] = {}
        for u, v, _ in self.edges:
            out[u] = v
            out[v] = u
        return out


def _require_bipartition(graph: Graph) -> tuple[frozenset[int], frozenset[int]]:
    if graph.bipartition is None:
        raise ValueError("graph is not bipartite-annotated")
    return graph.bipartition


def max_cardinality_bipartite(graph: Graph) -> Matching:
    """Maximum-cardinality matching in a bipartite graph via augmenting paths.

    Left vertices are scanned in ascending order and adjacency lists are kept
    in ascending order, so the result is deterministic.
    """
    left, _ = _require_bipartition(graph)
    adj: dict[int, list[int]] = {u: [] for u in sorted(left)}
    for u, v, _ in graph.edges:
        if u in left:
            adj[u].append(v)
        else:
            adj[v].append(u)
    for u in adj:
        adj[u].sort()

    match_right: dict[int, int] = {}

    def try_augment(u: int, visited: set[int]) -> bool:
        for v in adj[u]:
            if v in visited:
                continue
            visited.add(v)
            if v not in match_right or try_augment(match_right[v], visited):
                match_right[v] = u
                return True
        return False

    for u in sorted(left):
        try_augment(u, set())

    chosen = tuple(
        e
        for e in graph.edges
        if match_right.get(e[1] if e[0] in left else e[0]) == (e[0] if e[0] in left else e[1])
    )
    return Matching(chosen)


def _max_weight_perturbed(graph: Graph) -> Matching:
    # Perturbed weights make the optimum unique: the true weight (scaled by
    # 2**E) always dominates, and among ties the bonus 2**(E-1-i) prefers
    # low edge indices.  Integer arithmetic throughout keeps this exact.
    e_count = len(graph.edges)
    if e_count == 0:
        return Matching(())
    scale = 1 << e_count
    g = nx.Graph()
    g.add_nodes_from(range(graph.num_vertices))
    for i, (u, v, w) in enumerate(graph.edges):
        g.add_edge(u, v, weight=w * scale + (1 << (e_count - 1 - i)))
    mate_pairs = {frozenset(p) for p in nx.max_weight_matching(g, maxcardinality=False)}
    chosen = tuple(e for e in graph.edges if frozenset((e[0], e[1])) in mate_pairs)
    return Matching(chosen)


def max_weight_bipartite(graph: Graph) -> Matching:
    """Maximum-weight matching in a bipartite graph (not necessarily perfect).

    Ties between equally heavy matchings go to the lexicographically smallest
    edge-index set; see the module docstring.
    """
    _require_bipartition(graph)
    return _max_weight_perturbed(graph)


def max_weight_general(graph: Graph) -> Matching:
    """Exact maximum-weight matching on a general (possibly non-bipartite)
    graph, with the same deterministic tie-breaking as the bipartite routine.

    Odd cycles are handled exactly (blossom algorithm underneath); this is
    required because some solver constructions mix item-item edges with
    agent-item edges in one graph.
    """
    return _max_weight_perturbed(graph)
