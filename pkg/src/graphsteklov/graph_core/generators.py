"""Graph families: paths, cycles, stars, combs, factorised boundary graphs, random graphs."""

import numpy as np

from graphsteklov.graph_core.graph import (
    BoundaryGraph,
    GraphError,
    WeightedGraph,
    unit_graph,
)

BOUNDARY_MODES = ("endpoints", "center", "arms")


class InvalidBoundaryMode(GraphError):
    pass


class AllRhoZero(GraphError):
    pass


def gen_path(n: int) -> WeightedGraph:
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return unit_graph(n, [(i, i + 1) for i in range(n - 1)])


def gen_cycle(n: int) -> WeightedGraph:
    if n < 3:
        raise ValueError("cycle needs at least three vertices")
    return unit_graph(n, [(i, (i + 1) % n) for i in range(n)])


def gen_complete(n: int) -> WeightedGraph:
    if n < 1:
        raise ValueError("complete graph needs at least one vertex")
    return unit_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def gen_star(degree: int, arm_length: int, boundary_mode: str = "endpoints") -> BoundaryGraph:
    """Star with ``degree`` arms of ``arm_length`` edges; vertex 0 is the centre.

    Arm j occupies vertices ``1 + j*k .. (j+1)*k`` ordered outward.
    ``boundary_mode``: ``endpoints`` (arm tips), ``center``, or ``arms``
    (every non-centre vertex; only independent when arm_length == 1).
    """
    if degree < 2 or arm_length < 1:
        raise ValueError("star needs degree >= 2 and arm_length >= 1")
    k = arm_length
    edges = []
    for j in range(degree):
        first = 1 + j * k
        edges.append((0, first))
        edges.extend((first + s, first + s + 1) for s in range(k - 1))
    g = unit_graph(1 + degree * k, edges)
    if boundary_mode == "endpoints":
        boundary = [(j + 1) * k for j in range(degree)]
    elif boundary_mode == "center":
        boundary = [0]
    elif boundary_mode == "arms":
        if k > 1:
            raise InvalidBoundaryMode("arm vertices are adjacent when arm_length > 1")
        boundary = list(range(1, g.n))
    else:
        raise InvalidBoundaryMode(f"unknown boundary mode {boundary_mode!r}; use one of {BOUNDARY_MODES}")
    return BoundaryGraph(g, boundary)


def gen_comb(teeth: int, tooth_length: int) -> WeightedGraph:
    """Base path on ``teeth`` vertices, each carrying a pendant path of ``tooth_length`` extra vertices.

    Base vertex r is ``r * (tooth_length + 1)``; its tooth follows it.
    """
    if teeth < 1 or tooth_length < 0:
        raise ValueError("comb needs teeth >= 1 and tooth_length >= 0")
    span = tooth_length + 1
    edges = [(r * span, (r + 1) * span) for r in range(teeth - 1)]
    for r in range(teeth):
        base = r * span
        edges.extend((base + s, base + s + 1) for s in range(tooth_length))
    return unit_graph(teeth * span, edges)


def gen_factorized(interior: WeightedGraph, rho, boundary_measures) -> BoundaryGraph:
    """Attach boundary vertices so that w_xy = rho_y * m_x * m_y for x in B, y in the interior.

    ``interior`` may be disconnected; the result must still be connected.
    Boundary vertices are appended after the interior ones and labelled
    ``b0, b1, ...``.
    """
    rho = np.asarray(rho, dtype=float).ravel()
    mb = np.asarray(boundary_measures, dtype=float).ravel()
    if rho.size != interior.n:
        raise ValueError("rho needs one value per interior vertex")
    if np.any(rho < 0) or not np.all(np.isfinite(rho)):
        raise ValueError("rho must be finite and nonnegative")
    if not np.any(rho > 0):
        raise AllRhoZero("rho is identically zero")
    if mb.size == 0:
        raise ValueError("need at least one boundary vertex")
    n0 = interior.n
    taken = set(interior.labels)
    labels = list(interior.labels)
    for i in range(mb.size):
        lab = f"b{i}"
        while lab in taken:
            lab = "_" + lab
        taken.add(lab)
        labels.append(lab)
    measures = np.concatenate([interior.measures, mb])
    edges = [tuple(e) for e in interior.edges]
    weights = list(interior.weights)
    for i, mx in enumerate(mb):
        for y in np.nonzero(rho > 0)[0]:
            edges.append((n0 + i, int(y)))
            weights.append(rho[y] * mx * interior.measures[y])
    g = WeightedGraph(labels, measures, edges, weights)
    return BoundaryGraph(g, range(n0, n0 + mb.size))


def random_graph(n: int, p: float, rng, *, unit: bool = False, max_tries: int = 1000) -> WeightedGraph:
    """Erdos-Renyi G(n, p) conditioned on connectivity.

    Measures and weights are log-uniform on [0.5, 2] unless ``unit``.
    """
    rng = np.random.default_rng(rng)
    for _ in range(max_tries):
        iu, ju = np.triu_indices(n, 1)
        keep = rng.random(iu.size) < p
        edges = list(zip(iu[keep].tolist(), ju[keep].tolist()))
        if unit:
            m = np.ones(n)
            w = np.ones(len(edges))
        else:
            m = np.exp(rng.uniform(np.log(0.5), np.log(2.0), n))
            w = np.exp(rng.uniform(np.log(0.5), np.log(2.0), len(edges)))
        g = WeightedGraph([str(i) for i in range(n)], m, edges, w, require_connected=False)
        if g.is_connected():
            return g
    raise RuntimeError(f"no connected G({n}, {p}) sample in {max_tries} tries")


def random_boundary(g: WeightedGraph, rng, min_size: int = 1):
    """Random subset of a random maximal independent set (greedy over a shuffled order)."""
    rng = np.random.default_rng(rng)
    if g.n < 2:
        raise ValueError("need at least two vertices for a boundary")
    chosen = np.zeros(g.n, dtype=bool)
    blocked = np.zeros(g.n, dtype=bool)
    for v in rng.permutation(g.n):
        if not blocked[v]:
            chosen[v] = True
            blocked[v] = True
            blocked[list(g.neighbors(v))] = True
    mis = np.nonzero(chosen)[0]
    lo = min(max(min_size, 1), mis.size)
    size = int(rng.integers(lo, mis.size + 1))
    return sorted(rng.choice(mis, size=size, replace=False).tolist())


def random_boundary_graph(n: int, p: float, rng, *, unit: bool = False, min_boundary: int = 2) -> BoundaryGraph:
    rng = np.random.default_rng(rng)
    g = random_graph(n, p, rng, unit=unit)
    return BoundaryGraph(g, random_boundary(g, rng, min_boundary))
