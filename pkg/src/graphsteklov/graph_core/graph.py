"""Weighted graphs and graphs with boundary."""

import hashlib
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Tuple, Union

import numpy as np


class GraphError(ValueError):
    pass


class DuplicateEdge(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class NonpositiveValue(GraphError):
    pass


class Disconnected(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


class BoundaryError(GraphError):
    pass


class AdjacentBoundaryPair(BoundaryError):
    pass


class BoundaryWithoutInteriorNeighbor(BoundaryError):
    pass


class EmptyInterior(BoundaryError):
    pass


class EmptyBoundary(BoundaryError):
    pass


Vertex = Union[int, str]


def _frozen(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


class WeightedGraph:
    """Finite simple graph with positive vertex measures and edge weights.

    Vertices are dense indices ``0..n-1``; ``labels`` maps them to strings.
    Each undirected edge is stored once as ``(u, v)`` with ``u < v``.
    Instances are immutable.
    """

    def __init__(self, labels, measures, edges, weights, *, require_connected=True):
        labels = tuple(str(s) for s in labels)
        measures = np.asarray(measures, dtype=float).ravel()
        n = len(labels)
        if measures.size != n:
            raise ValueError("one measure per vertex required")
        if n == 0:
            raise GraphError("graph has no vertices")
        if len(set(labels)) != n:
            raise GraphError("duplicate vertex labels")
        if not np.all(np.isfinite(measures)) or np.any(measures <= 0):
            bad = labels[int(np.argmin(np.where(np.isfinite(measures), measures, -np.inf)))]
            raise NonpositiveValue(f"vertex {bad!r} has nonpositive measure")

        pairs = []
        seen = set()
        for (u, v), w in zip(edges, weights):
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise UnknownVertex(f"edge ({u}, {v}) references a missing vertex")
            if u == v:
                raise SelfLoop(f"self-loop at {labels[u]!r}")
            if not (np.isfinite(w) and w > 0):
                raise NonpositiveValue(f"edge {labels[u]!r}-{labels[v]!r} has nonpositive weight {w}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise DuplicateEdge(f"duplicate edge {labels[key[0]]!r}-{labels[key[1]]!r}")
            seen.add(key)
            pairs.append((key, float(w)))
        pairs.sort()

        self._labels = labels
        self._measures = _frozen(measures)
        self._edges = _frozen(np.array([p for p, _ in pairs], dtype=np.intp).reshape(-1, 2))
        self._weights = _frozen(np.array([w for _, w in pairs], dtype=float))
        nbrs = [[] for _ in range(n)]
        for (u, v), _ in pairs:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self._neighbors = tuple(tuple(sorted(a)) for a in nbrs)
        self._index = {s: i for i, s in enumerate(labels)}
        if require_connected and not self.is_connected():
            raise Disconnected("graph is not connected")

    # -- basic accessors ---------------------------------------------------
    @property
    def n(self) -> int:
        return len(self._labels)

    @property
    def num_edges(self) -> int:
        return len(self._weights)

    @property
    def labels(self) -> Tuple[str, ...]:
        return self._labels

    @property
    def measures(self) -> np.ndarray:
        return self._measures

    @property
    def edges(self) -> np.ndarray:
        return self._edges

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    def neighbors(self, x: int) -> Tuple[int, ...]:
        return self._neighbors[x]

    def index(self, v: Vertex) -> int:
        """Resolve a label or an index to an index."""
        if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            if 0 <= int(v) < self.n:
                return int(v)
            raise UnknownVertex(f"no vertex with index {v}")
        try:
            return self._index[str(v)]
        except KeyError:
            raise UnknownVertex(f"no vertex labelled {v!r}") from None

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, edges={self.num_edges})"

    # -- derived -----------------------------------------------------------
    @cached_property
    def weight_matrix(self) -> np.ndarray:
        w = np.zeros((self.n, self.n))
        if self.num_edges:
            u, v = self._edges.T
            w[u, v] = self._weights
            w[v, u] = self._weights
        w.setflags(write=False)
        return w

    @cached_property
    def adjacency(self) -> np.ndarray:
        a = self.weight_matrix > 0
        a.setflags(write=False)
        return a

    @cached_property
    def distances(self) -> np.ndarray:
        """All-pairs hop distances; -1 marks unreachable pairs."""
        n = self.n
        d = np.full((n, n), -1, dtype=np.int64)
        for s in range(n):
            d[s, s] = 0
            q = deque([s])
            while q:
                u = q.popleft()
                for v in self._neighbors[u]:
                    if d[s, v] < 0:
                        d[s, v] = d[s, u] + 1
                        q.append(v)
        d.setflags(write=False)
        return d

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self._neighbors[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n

    def components(self):
        comp = [-1] * self.n
        out = []
        for s in range(self.n):
            if comp[s] >= 0:
                continue
            comp[s] = len(out)
            members = [s]
            stack = [s]
            while stack:
                u = stack.pop()
                for v in self._neighbors[u]:
                    if comp[v] < 0:
                        comp[v] = comp[s]
                        members.append(v)
                        stack.append(v)
            out.append(sorted(members))
        return out

    def degree(self, x: int) -> int:
        return len(self._neighbors[x])

    def is_unit_weight(self) -> bool:
        return bool(np.all(self._measures == 1.0) and np.all(self._weights == 1.0))

    def digest(self) -> str:
        h = hashlib.sha256()
        for s, m in zip(self._labels, self._measures):
            h.update(f"v {s} {float(m)!r}\n".encode())
        for (u, v), w in zip(self._edges, self._weights):
            h.update(f"e {int(u)} {int(v)} {float(w)!r}\n".encode())
        return h.hexdigest()

    def scaled(self, weight_factor: float = 1.0, measure_factor: float = 1.0) -> "WeightedGraph":
        return WeightedGraph(
            self._labels,
            self._measures * measure_factor,
            self._edges,
            self._weights * weight_factor,
            require_connected=False,
        )

    def subgraph(self, vertices: Sequence[int]) -> "WeightedGraph":
        """Induced subgraph (possibly disconnected) with inherited m and w."""
        vertices = sorted(int(v) for v in vertices)
        pos = {v: i for i, v in enumerate(vertices)}
        edges, weights = [], []
        for (u, v), w in zip(self._edges, self._weights):
            if u in pos and v in pos:
                edges.append((pos[u], pos[v]))
                weights.append(w)
        return WeightedGraph(
            [self._labels[v] for v in vertices],
            self._measures[vertices],
            edges,
            weights,
            require_connected=False,
        )


def new_graph(vertices, edges) -> WeightedGraph:
    """Build a validated connected graph.

    ``vertices`` is a list of ``(label, measure)``; ``edges`` a list of
    ``(u, v, weight)`` where endpoints are labels (str) or indices (int).
    """
    vertices = list(vertices)
    labels = [str(lab) for lab, _ in vertices]
    measures = [float(m) for _, m in vertices]
    index = {lab: i for i, lab in enumerate(labels)}

    def resolve(v):
        if isinstance(v, str):
            if v not in index:
                raise UnknownVertex(f"no vertex labelled {v!r}")
            return index[v]
        return int(v)

    pairs, weights = [], []
    for u, v, w in edges:
        pairs.append((resolve(u), resolve(v)))
        weights.append(float(w))
    return WeightedGraph(labels, measures, pairs, weights)


def unit_graph(n: int, edges: Iterable[Tuple[int, int]], *, require_connected=True) -> WeightedGraph:
    edges = list(edges)
    return WeightedGraph(
        [str(i) for i in range(n)], np.ones(n), edges, np.ones(len(edges)),
        require_connected=require_connected,
    )


def weighted_degree(g: WeightedGraph, x: Vertex) -> float:
    x = g.index(x)
    return float(g.weight_matrix[x].sum() / g.measures[x])


def graph_distance(g: WeightedGraph, x: Vertex, y: Vertex) -> int:
    """Hop distance (edge weights ignored)."""
    return int(g.distances[g.index(x), g.index(y)])


@dataclass(frozen=True)
class Volumes:
    boundary: float
    interior: float
    total: float


class BoundaryGraph:
    """A weighted graph plus an independent boundary set B.

    Every boundary vertex must have an interior neighbour; both B and the
    interior must be nonempty.
    """

    def __init__(self, graph: WeightedGraph, boundary: Iterable[Vertex]):
        idx = sorted({graph.index(v) for v in boundary})
        if not idx:
            raise EmptyBoundary("boundary is empty")
        if len(idx) == graph.n:
            raise EmptyInterior("boundary covers every vertex")
        mask = np.zeros(graph.n, dtype=bool)
        mask[idx] = True
        for x in idx:
            nb = graph.neighbors(x)
            for y in nb:
                if mask[y]:
                    raise AdjacentBoundaryPair(
                        f"boundary vertices {graph.labels[x]!r} and {graph.labels[y]!r} are adjacent"
                    )
            if not nb:
                raise BoundaryWithoutInteriorNeighbor(
                    f"boundary vertex {graph.labels[x]!r} has no interior neighbour"
                )
        mask.setflags(write=False)
        self._graph = graph
        self._mask = mask
        self._boundary = _frozen(np.array(idx, dtype=np.intp))
        self._interior = _frozen(np.nonzero(~mask)[0].astype(np.intp))

    @property
    def graph(self) -> WeightedGraph:
        return self._graph

    @property
    def boundary(self) -> np.ndarray:
        return self._boundary

    @property
    def interior(self) -> np.ndarray:
        return self._interior

    @property
    def boundary_mask(self) -> np.ndarray:
        return self._mask

    @property
    def boundary_labels(self) -> Tuple[str, ...]:
        return tuple(self._graph.labels[i] for i in self._boundary)

    def __repr__(self):
        return f"BoundaryGraph(n={self._graph.n}, |B|={len(self._boundary)})"


def with_boundary(g: WeightedGraph, boundary: Iterable[Vertex]) -> BoundaryGraph:
    return BoundaryGraph(g, boundary)


def volumes(bg: BoundaryGraph) -> Volumes:
    m = bg.graph.measures
    vb = float(m[bg.boundary].sum())
    vo = float(m[bg.interior].sum())
    return Volumes(vb, vo, vb + vo)


def induced_interior(bg: BoundaryGraph) -> WeightedGraph:
    return bg.graph.subgraph(bg.interior)

