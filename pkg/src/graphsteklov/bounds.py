"""Lower bounds for Steklov eigenvalues, evaluated against computed spectra."""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from graphsteklov.curvature import ollivier_min_adjacent
from graphsteklov.graph_core import (
    BoundaryGraph,
    WeightedGraph,
    edge_connectivity,
    gen_path,
    vertex_connectivity,
)
from graphsteklov.spectral import dirichlet_spectrum, laplacian_spectrum, steklov_spectrum

DEFAULT_TOL = 1e-8


class NotUnitWeight(ValueError):
    pass


class IndexOutOfRange(ValueError):
    pass


class InvalidParameters(ValueError):
    pass


@dataclass(frozen=True)
class BoundReport:
    name: str
    bound: float
    target_name: str
    target: float
    strict: bool = False  # the bound is claimed as a strict inequality
    applicable: bool = True
    notes: str = ""
    details: dict = field(default_factory=dict)

    @property
    def slack(self) -> float:
        return self.target - self.bound

    def satisfied(self, tol: float = DEFAULT_TOL) -> bool:
        if not self.applicable:
            return True
        if self.strict:
            return self.slack > tol
        return self.slack >= -tol * (1 + abs(self.target))


def _require_unit(g: WeightedGraph):
    if not g.is_unit_weight():
        raise NotUnitWeight("bound is stated for unit weights (m = 1, w = 1)")


def fiedler_bounds(bg: BoundaryGraph) -> Tuple[BoundReport, BoundReport]:
    """2 e(G)(1 - cos(pi/n)) and 2 v(G)(1 - cos(pi/n)) against sigma_2."""
    g = bg.graph
    _require_unit(g)
    n = g.n
    factor = 2.0 * (1.0 - np.cos(np.pi / n))
    sigma = steklov_spectrum(bg).values
    has_target = sigma.size >= 2
    target = float(sigma[1]) if has_target else np.nan
    note = "" if has_target else "sigma_2 needs at least two boundary vertices"
    e, v = edge_connectivity(g), vertex_connectivity(g)
    return (
        BoundReport("fiedler_edge", float(e * factor), "sigma_2", target, applicable=has_target, notes=note,
                    details={"edge_connectivity": e, "n": n}),
        BoundReport("fiedler_vertex", float(v * factor), "sigma_2", target, applicable=has_target, notes=note,
                    details={"vertex_connectivity": v, "n": n}),
    )


def path_top_eigenvalue(i: int) -> float:
    """Largest Laplacian eigenvalue of the unit-weight path on i vertices."""
    if i < 2:
        raise InvalidParameters("path needs i >= 2")
    return float(laplacian_spectrum(gen_path(i)).values[-1])


def p_dirichlet(k: int, lam: float) -> float:
    """First Dirichlet eigenvalue of the path 0..k, boundary {0}, w_01 = lam, other weights and all measures 1."""
    if k < 1 or not lam > 0:
        raise InvalidParameters("need k >= 1 and lam > 0")
    weights = [float(lam)] + [1.0] * (k - 1)
    g = WeightedGraph([str(j) for j in range(k + 1)], np.ones(k + 1),
                      [(j, j + 1) for j in range(k)], weights)
    return float(dirichlet_spectrum(g, [0]).values[0])


def friedman_bound(bg: BoundaryGraph, i: int) -> BoundReport:
    """Lower bound for sigma_i on unit-weight graphs.

    i does not divide n: 2 - 2cos(pi/(2k+1)), k = n // i.
    i divides n: P(k, lambda_i), k = n / i, claimed strict.
    """
    g = bg.graph
    _require_unit(g)
    nb = bg.boundary.size
    if not 2 <= i <= nb:
        raise IndexOutOfRange(f"index {i} outside 2..{nb}")
    n = g.n
    target = float(steklov_spectrum(bg).values[i - 1])
    if n % i:
        k = n // i
        bound = 2.0 - 2.0 * np.cos(np.pi / (2 * k + 1))
        return BoundReport("friedman_not_divide", float(bound), f"sigma_{i}", target,
                           details={"i": i, "k": k, "n": n})
    k = n // i
    lam = path_top_eigenvalue(i)
    return BoundReport("friedman_divide", p_dirichlet(k, lam), f"sigma_{i}", target, strict=True,
                       details={"i": i, "k": k, "n": n, "lambda_i": lam})


def lichnerowicz_ollivier_check(g) -> BoundReport:
    """sigma_2 >= kappa_min (and mu_2 >= kappa_min) when the minimum edge curvature is positive.

    Accepts a BoundaryGraph, or a plain WeightedGraph for the mu_2 side only.
    """
    bg = g if isinstance(g, BoundaryGraph) else None
    graph = bg.graph if bg is not None else g
    kappa = float(ollivier_min_adjacent(graph))
    mu2 = float(laplacian_spectrum(graph).values[1]) if graph.n > 1 else np.nan
    details = {"kappa_min": kappa, "mu_2": mu2, "mu_2_slack": mu2 - kappa}
    if bg is not None and bg.boundary.size >= 2:
        target_name, target = "sigma_2", float(steklov_spectrum(bg).values[1])
    else:
        target_name, target = "mu_2", mu2
    applicable = kappa > 0
    notes = "" if applicable else "minimum curvature is not positive"
    return BoundReport("lichnerowicz_ollivier", kappa, target_name, target, applicable=applicable,
                       notes=notes, details=details)


def lichnerowicz_cd_bound(K: float, n: float) -> float:
    """n K / (n - 1) for K > 0, n > 1."""
    if not (K > 0 and n > 1):
        raise InvalidParameters("need K > 0 and n > 1")
    return n * K / (n - 1)
