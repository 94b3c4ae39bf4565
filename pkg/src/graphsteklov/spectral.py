"""Laplacian, Dirichlet and Steklov spectra of weighted graphs.

Conventions: ``K`` is the stiffness matrix (weighted degree-minus-weight),
``M = diag(m)`` the mass matrix, and ``-Laplacian = M^{-1} K``.  The
generalised problems ``K u = lambda M u`` are solved through the congruence
``M^{-1/2} K M^{-1/2}`` so the Euclidean Jacobi solver can be reused.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from graphsteklov.graph_core import BoundaryGraph, EmptyInterior, WeightedGraph
from graphsteklov.numerics import fix_signs, spd_solve, sym_eigen

LAPLACIAN = "laplacian"
STEKLOV = "steklov"
DIRICHLET = "dirichlet"


class ZeroDenominator(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class Spectrum:
    values: np.ndarray  # ascending
    vectors: np.ndarray  # columns, m-orthonormal over ``support``
    kind: str
    support: np.ndarray  # vertex indices the vectors live on
    residual: float  # of the symmetrised problem

    def __len__(self):
        return self.values.size


def stiffness_matrix(g: WeightedGraph) -> np.ndarray:
    w = np.array(g.weight_matrix)
    return np.diag(w.sum(axis=1)) - w


def _generalized(k: np.ndarray, m: np.ndarray, kind: str, support) -> Spectrum:
    s = 1.0 / np.sqrt(m)
    res = sym_eigen(s[:, None] * k * s[None, :])
    vecs = fix_signs(s[:, None] * res.vectors)
    return Spectrum(res.values, vecs, kind, np.asarray(support, dtype=np.intp), res.residual)


def laplacian_spectrum(g: WeightedGraph) -> Spectrum:
    return _generalized(stiffness_matrix(g), np.asarray(g.measures), LAPLACIAN, np.arange(g.n))


def laplacian_apply(g: WeightedGraph, u) -> np.ndarray:
    """Delta u(x) = (1/m_x) sum_y (u(y) - u(x)) w_xy."""
    u = np.asarray(u, dtype=float)
    return -(stiffness_matrix(g) @ u) / g.measures


def inner(g: WeightedGraph, u, v, subset=None) -> float:
    """<u, v>_S = sum_{x in S} u(x) v(x) m_x (all of V when ``subset`` is None)."""
    u, v, m = np.asarray(u, float), np.asarray(v, float), np.asarray(g.measures)
    if subset is not None:
        u, v, m = u[subset], v[subset], m[subset]
    return float(np.sum(u * v * m))


def energy(g: WeightedGraph, u, v=None) -> float:
    """<du, dv> = sum over edges of (u(y) - u(x))(v(y) - v(x)) w_xy."""
    u = np.asarray(u, float)
    v = u if v is None else np.asarray(v, float)
    a, b = g.edges.T
    return float(np.sum((u[b] - u[a]) * (v[b] - v[a]) * g.weights))


@dataclass(frozen=True)
class HarmonicExtension:
    boundary_data: np.ndarray
    values: np.ndarray  # on all of V


def _blocks(bg: BoundaryGraph):
    k = stiffness_matrix(bg.graph)
    b, o = bg.boundary, bg.interior
    return k[np.ix_(b, b)], k[np.ix_(b, o)], k[np.ix_(o, o)]


def harmonic_extension(bg: BoundaryGraph, f) -> HarmonicExtension:
    f = np.asarray(f, dtype=float).ravel()
    if f.size != bg.boundary.size:
        raise ValueError(f"boundary data has {f.size} entries, expected {bg.boundary.size}")
    _, k_bo, k_oo = _blocks(bg)
    u = np.empty(bg.graph.n)
    u[bg.boundary] = f
    u[bg.interior] = spd_solve(k_oo, -(k_bo.T @ f))
    return HarmonicExtension(f, u)


def normal_derivative(bg: BoundaryGraph, u) -> np.ndarray:
    """(du/dn)(x) = (1/m_x) sum_y (u(x) - u(y)) w_xy for x in B."""
    return -laplacian_apply(bg.graph, u)[bg.boundary]


@dataclass(frozen=True)
class DtnOperator:
    boundary: np.ndarray
    schur: np.ndarray  # S = K_BB - K_BO K_OO^{-1} K_OB
    mass: np.ndarray  # m restricted to B

    @property
    def matrix(self) -> np.ndarray:
        """Lambda = M_B^{-1} S."""
        return self.schur / self.mass[:, None]

    def apply(self, f) -> np.ndarray:
        return (self.schur @ np.asarray(f, dtype=float)) / self.mass


def dtn_matrix(bg: BoundaryGraph) -> DtnOperator:
    k_bb, k_bo, k_oo = _blocks(bg)
    s = k_bb - k_bo @ spd_solve(k_oo, k_bo.T)
    s = 0.5 * (s + s.T)
    # S is again a Laplacian: rebuild the diagonal from the off-diagonal
    # entries so rows sum to zero without cancellation
    np.fill_diagonal(s, 0.0)
    np.fill_diagonal(s, -s.sum(axis=1))
    return DtnOperator(bg.boundary, s, np.array(bg.graph.measures[bg.boundary]))


def steklov_spectrum(bg: BoundaryGraph) -> Spectrum:
    op = dtn_matrix(bg)
    return _generalized(op.schur, op.mass, STEKLOV, bg.boundary)


def dirichlet_spectrum(g: WeightedGraph, dirichlet_set: Sequence) -> Spectrum:
    """Spectrum of K u = lambda M u on V minus ``dirichlet_set`` (zero condition on the set)."""
    fixed = sorted({g.index(v) for v in dirichlet_set})
    if not fixed:
        raise ValueError("Dirichlet set is empty")
    free = np.setdiff1d(np.arange(g.n), fixed)
    if free.size == 0:
        raise EmptyInterior("Dirichlet set covers every vertex")
    k = stiffness_matrix(g)[np.ix_(free, free)]
    return _generalized(k, np.asarray(g.measures)[free], DIRICHLET, free)


def rayleigh_quotients(bg: BoundaryGraph, u) -> Tuple[float, float]:
    """(<du,du>/<u,u>, <du,du>/<u,u>_B)."""
    u = np.asarray(u, dtype=float)
    num = energy(bg.graph, u)
    den = inner(bg.graph, u, u)
    den_b = inner(bg.graph, u, u, bg.boundary)
    if den == 0.0 or den_b == 0.0:
        raise ZeroDenominator("u (or its boundary restriction) vanishes")
    return num / den, num / den_b


def second_eigenvalue(g: WeightedGraph) -> float:
    """mu_2 with conventions: +inf for one vertex, 0 for a disconnected graph."""
    if g.n == 1:
        return np.inf
    if not g.is_connected():
        return 0.0
    return float(laplacian_spectrum(g).values[1])


def clusters(values, tol: float = 1e-8):
    """Group ascending values whose neighbours lie within tol*(1+|value|)."""
    groups = []
    for i, v in enumerate(values):
        if groups and abs(v - values[groups[-1][-1]]) <= tol * (1 + abs(v)):
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups
