"""Combinatorial edge and vertex connectivity (weights ignored)."""

import numpy as np

from graphsteklov import _kernels
from graphsteklov.graph_core.graph import WeightedGraph


def edge_connectivity(g: WeightedGraph) -> int:
    """Minimum number of edges whose removal disconnects ``g`` (Stoer-Wagner, unit capacities)."""
    if g.n < 2:
        return 0
    return int(round(_kernels.stoer_wagner(g.adjacency.astype(float))))


def _split_network(g: WeightedGraph, s: int, t: int) -> np.ndarray:
    # vertex i -> (2i in, 2i+1 out); internal arc capacity 1, except at s and t
    n = g.n
    big = float(n)
    cap = np.zeros((2 * n, 2 * n))
    idx = np.arange(n)
    cap[2 * idx, 2 * idx + 1] = 1.0
    cap[2 * s, 2 * s + 1] = big
    cap[2 * t, 2 * t + 1] = big
    u, v = g.edges.T
    cap[2 * u + 1, 2 * v] = big
    cap[2 * v + 1, 2 * u] = big
    return cap


def local_vertex_connectivity(g: WeightedGraph, s: int, t: int, limit: float = np.inf) -> int:
    """Fewest vertices separating non-adjacent ``s`` and ``t`` (capped at ``limit``)."""
    if g.adjacency[s, t]:
        raise ValueError("local vertex connectivity needs non-adjacent vertices")
    cap = _split_network(g, s, t)
    return int(round(_kernels.max_flow(cap, 2 * s + 1, 2 * t, float(limit))))


def vertex_connectivity(g: WeightedGraph) -> int:
    """Minimum number of vertices whose removal disconnects ``g``; K_n gives n-1.

    A minimum separator S has |S| <= min degree, so some vertex among any
    min_degree + 1 vertices lies outside S; pairing those with every
    non-adjacent vertex is enough.
    """
    n = g.n
    if n < 2:
        return 0
    adj = g.adjacency
    if adj.sum() == n * (n - 1):
        return n - 1
    delta = min(g.degree(x) for x in range(n))
    best = delta
    for s in range(min(delta + 1, n)):
        for t in range(n):
            if t == s or adj[s, t]:
                continue
            best = min(best, local_vertex_connectivity(g, s, t, limit=best))
            if best == 0:
                return 0
    return best
