"""Ollivier curvature through its Lipschitz-function LP characterisation.

kappa(x, y) = inf { grad_xy Laplacian(f) : f 1-Lipschitz, grad_yx f = 1 },
grad_xy f = (f(x) - f(y)) / d(x, y), with d the hop distance of the whole
graph.  Only f on the closed neighbourhoods N[x] u N[y] enters the
objective, and any 1-Lipschitz function there extends to the whole graph,
so the LP is posed on that set.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence

import numpy as np

from graphsteklov.graph_core import WeightedGraph
from graphsteklov.numerics import OPTIMAL, LpProblem, lp_minimize


class LpFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class CurvaturePair:
    x: int
    y: int
    kappa: float
    support: np.ndarray  # vertex indices carrying LP variables
    optimizer: np.ndarray  # f on ``support``


def _support(g: WeightedGraph, x: int, y: int) -> np.ndarray:
    s = {x, y, *g.neighbors(x), *g.neighbors(y)}
    return np.array(sorted(s), dtype=np.intp)


def curvature_lp(g: WeightedGraph, x: int, y: int, support: Optional[Sequence[int]] = None):
    """Assemble the curvature LP on ``support`` (default N[x] u N[y]); returns (problem, support)."""
    x, y = g.index(x), g.index(y)
    if x == y:
        raise ValueError("curvature needs two distinct vertices")
    support = _support(g, x, y) if support is None else np.array(sorted(support), dtype=np.intp)
    pos = {int(v): i for i, v in enumerate(support)}
    if x not in pos or y not in pos:
        raise ValueError("support must contain x and y")
    dist = g.distances
    dxy = float(dist[x, y])
    k = support.size
    w, m = g.weight_matrix, g.measures

    # grad_xy Laplacian f = (Lf(x) - Lf(y)) / d(x, y), Lf(z) = (1/m_z) sum_u w_zu (f(u) - f(z))
    c = np.zeros(k)
    for z, sign in ((x, 1.0), (y, -1.0)):
        for u in g.neighbors(z):
            c[pos[u]] += sign * w[z, u] / m[z]
        c[pos[z]] -= sign * w[z].sum() / m[z]
    c /= dxy

    ii, jj = np.triu_indices(k, 1)
    npairs = ii.size
    a_ub = np.zeros((2 * npairs, k))
    r = np.arange(npairs)
    a_ub[r, ii] = 1.0
    a_ub[r, jj] = -1.0
    a_ub[npairs + r, ii] = -1.0
    a_ub[npairs + r, jj] = 1.0
    d = dist[support[ii], support[jj]].astype(float)
    b_ub = np.concatenate([d, d])
    a_eq = np.zeros((1, k))
    a_eq[0, pos[y]] = 1.0
    a_eq[0, pos[x]] = -1.0
    return LpProblem.build(c, a_ub, b_ub, a_eq, [dxy]), support


def ollivier_kappa(g: WeightedGraph, x, y, support: Optional[Sequence[int]] = None) -> CurvaturePair:
    x, y = g.index(x), g.index(y)
    problem, support = curvature_lp(g, x, y, support)
    sol = lp_minimize(problem)
    if sol.status != OPTIMAL:
        raise LpFailure(f"curvature LP for ({x}, {y}) ended with status {sol.status}")
    return CurvaturePair(x, y, sol.value, support, sol.x)


def ollivier_kappa_full(g: WeightedGraph, x, y) -> CurvaturePair:
    """Same LP with a variable on every vertex (reference for the restricted form)."""
    return ollivier_kappa(g, x, y, support=range(g.n))


def ollivier_min_adjacent(g: WeightedGraph) -> float:
    return min(ollivier_kappa(g, int(u), int(v)).kappa for u, v in g.edges)


def ollivier_adjacent(g: WeightedGraph) -> List[CurvaturePair]:
    return [ollivier_kappa(g, int(u), int(v)) for u, v in g.edges]


def ollivier_all_pairs(g: WeightedGraph) -> List[CurvaturePair]:
    return [ollivier_kappa(g, x, y) for x, y in combinations(range(g.n), 2)]
