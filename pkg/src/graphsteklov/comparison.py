"""Steklov vs Laplacian eigenvalue comparison and its rigidity.

Indices in reports and arguments are 1-based: sigma_1 = mu_1 = 0.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from graphsteklov.graph_core import BoundaryGraph, induced_interior, volumes
from graphsteklov.numerics import NumericalError, leading_index, sym_eigen
from graphsteklov.spectral import (
    Spectrum,
    clusters,
    laplacian_apply,
    laplacian_spectrum,
    second_eigenvalue,
    stiffness_matrix,
    steklov_spectrum,
)

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
WITNESS_GRAM_TOL = 1e-8
RESIDUAL_TOL = 1e-9


class NotAnEqualityIndex(ValueError):
    pass


class DegZero(ValueError):
    pass


def _close(a, b, tol):
    return abs(a - b) <= tol * (1 + abs(a))


@dataclass(frozen=True)
class ComparisonReport:
    sigma: np.ndarray
    mu: np.ndarray  # first |B| Laplacian eigenvalues
    gaps: np.ndarray  # sigma_i - mu_i
    equality_indices: Tuple[int, ...]
    tol: float

    @property
    def holds(self) -> bool:
        return bool(np.all(self.gaps >= -self.tol * (1 + np.abs(self.sigma))))

    @property
    def full_equality(self) -> bool:
        return len(self.equality_indices) == self.sigma.size


def compare_spectra(bg: BoundaryGraph, tol: float = DEFAULT_TOL, *, sigma: Spectrum = None,
                    mu: Spectrum = None) -> ComparisonReport:
    sigma = steklov_spectrum(bg) if sigma is None else sigma
    mu = laplacian_spectrum(bg.graph) if mu is None else mu
    for sp in (sigma, mu):
        if sp.residual > RESIDUAL_TOL * (1 + np.abs(sp.values).max()):
            raise NumericalError(f"{sp.kind} residual {sp.residual:.2e} too large to compare eigenvalues")
    nb = bg.boundary.size
    s, u = sigma.values, mu.values[:nb]
    gaps = s - u
    eq = tuple(i + 1 for i in range(nb) if abs(gaps[i]) <= tol * (1 + abs(s[i])))
    return ComparisonReport(s, u, gaps, eq, tol)


def factorization_rho(bg: BoundaryGraph, tol: float = DEFAULT_TOL) -> Optional[np.ndarray]:
    """rho on the interior with w_xy = rho_y m_x m_y for all x in B, y in the interior, or None.

    Each interior vertex must be adjacent to every boundary vertex (rho_y from
    the agreeing ratios) or to none (rho_y = 0).
    """
    g = bg.graph
    w = g.weight_matrix
    m = g.measures
    B, O = bg.boundary, bg.interior
    rho = np.zeros(O.size)
    for k, y in enumerate(O):
        wy = w[B, y]
        touching = wy > 0
        if not touching.any():
            continue
        if not touching.all():
            return None
        cand = wy / (m[B] * m[y])
        if np.ptp(cand) > tol * cand.max():
            return None
        rho[k] = cand.mean()
    degs = w[B].sum(axis=1) / m[B]
    if np.ptp(degs) > tol * degs.max():
        return None
    return rho


def _mean_zero_basis(sqrt_m: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the Euclidean complement of ``sqrt_m`` (Householder)."""
    n = sqrt_m.size
    s = sqrt_m / np.linalg.norm(sqrt_m)
    e = np.zeros(n)
    e[0] = 1.0
    v = s + np.sign(s[0] or 1.0) * e
    h = np.eye(n) - 2.0 * np.outer(v, v) / (v @ v)
    return h[:, 1:]


def rigidity_form_matrix(bg: BoundaryGraph, rho) -> np.ndarray:
    """Matrix of Q(u) = <du,du>_O - Deg<u,u>_O + V_B<rho u,u>_O - (V_G/Deg)<rho,u>_O^2 on the interior."""
    rho = np.asarray(rho, dtype=float)
    deg = float(rho @ bg.graph.measures[bg.interior])
    if deg <= 0:
        raise DegZero("rho vanishes identically")
    vol = volumes(bg)
    inner_g = induced_interior(bg)
    k = stiffness_matrix(inner_g)
    m = np.asarray(inner_g.measures)
    mr = m * rho
    return k + np.diag(m * (vol.boundary * rho - deg)) - (vol.total / deg) * np.outer(mr, mr)


def rigidity_form_min(bg: BoundaryGraph, rho) -> float:
    """Minimum of Q(u)/<u,u>_O over u with <u,1>_O = 0; +inf when the interior is one vertex."""
    a = rigidity_form_matrix(bg, rho)
    if a.shape[0] == 1:
        return np.inf
    sq = np.sqrt(bg.graph.measures[bg.interior])
    a_sym = a / sq[:, None] / sq[None, :]
    q = _mean_zero_basis(sq)
    return float(sym_eigen(q.T @ a_sym @ q).values[0])


@dataclass(frozen=True)
class RigidityReport:
    rho: Optional[np.ndarray]
    factorization_ok: bool
    deg: Optional[float]
    form_min_eigenvalue: Optional[float]
    form_ok: bool
    full_equality_predicted: bool
    full_equality_observed: bool
    comparison: ComparisonReport

    @property
    def consistent(self) -> bool:
        return self.full_equality_predicted == self.full_equality_observed


def full_equality_rigidity(bg: BoundaryGraph, tol: float = DEFAULT_TOL,
                           comparison: ComparisonReport = None) -> RigidityReport:
    comp = compare_spectra(bg, tol) if comparison is None else comparison
    rho = factorization_rho(bg, tol)
    deg = form_min = None
    form_ok = False
    if rho is not None:
        deg = float(rho @ bg.graph.measures[bg.interior])
        form_min = rigidity_form_min(bg, rho)
        scale = 1.0 + np.abs(rigidity_form_matrix(bg, rho)).max() / bg.graph.measures[bg.interior].min()
        form_ok = bool(form_min >= -tol * scale)
    # with one boundary vertex the only index is i = 1, equal by construction
    trivial = bg.boundary.size < 2
    return RigidityReport(
        rho=rho,
        factorization_ok=rho is not None,
        deg=deg,
        form_min_eigenvalue=form_min,
        form_ok=form_ok,
        full_equality_predicted=trivial or (rho is not None and form_ok),
        full_equality_observed=comp.full_equality,
        comparison=comp,
    )


def equality_eigenfunction_witness(bg: BoundaryGraph, i: int, tol: float = DEFAULT_TOL,
                                   mu: Spectrum = None, sigma: Spectrum = None) -> Optional[np.ndarray]:
    """Eigenfunction of mu_i vanishing on the interior, scaled so its largest entry is +1.

    Only defined at an equality index 2 <= i <= |B|.  Returns None (and logs
    a warning) when no such eigenfunction exists in the mu_i eigenspace.
    """
    nb = bg.boundary.size
    if not 2 <= i <= nb:
        raise NotAnEqualityIndex(f"index {i} outside 2..{nb}")
    mu = laplacian_spectrum(bg.graph) if mu is None else mu
    sigma = steklov_spectrum(bg) if sigma is None else sigma
    if not _close(sigma.values[i - 1], mu.values[i - 1], tol):
        raise NotAnEqualityIndex(f"sigma_{i} != mu_{i}")
    cluster = next(c for c in clusters(mu.values, tol) if i - 1 in c)
    U = mu.vectors[:, cluster]
    O = bg.interior
    R = U[O]
    gram = R.T @ (bg.graph.measures[O][:, None] * R)
    eg = sym_eigen(gram)
    null = np.nonzero(eg.values <= WITNESS_GRAM_TOL)[0]
    if null.size == 0:
        log.warning("no eigenfunction of mu_%d vanishes on the interior despite equality", i)
        return None
    v = U @ eg.vectors[:, null[0]]
    v = v / v[leading_index(v[:, None])[0]]
    lap = laplacian_apply(bg.graph, v)
    if np.abs(v[O]).max() > 1e-7 or np.abs(lap[O]).max() > 1e-7 * (1 + mu.values[i - 1]):
        log.warning("witness for index %d fails the vanishing check", i)
        return None
    return v


# ---------------------------------------------------------------------------
# Corollaries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorollaryCheck:
    applicable: bool
    condition: Optional[bool]
    lhs: Optional[float] = None
    rhs: Optional[float] = None
    equality_observed: Optional[bool] = None
    note: str = ""

    @property
    def consistent(self) -> bool:
        """Sufficient-only checks pass unless condition holds without equality."""
        if not self.applicable:
            return True
        return not (self.condition and not self.equality_observed)


def _observed(bg, tol, comparison):
    return (compare_spectra(bg, tol) if comparison is None else comparison).full_equality


def check_cor_general(bg: BoundaryGraph, tol: float = DEFAULT_TOL,
                      comparison: ComparisonReport = None) -> CorollaryCheck:
    """mu_2(interior) >= Deg - V_B rho_min + (V_G/Deg) <rho,rho>; a sufficient condition for full equality."""
    if bg.boundary.size < 2:
        return CorollaryCheck(False, None, note="needs at least two boundary vertices")
    rho = factorization_rho(bg, tol)
    if rho is None:
        return CorollaryCheck(False, None, note="boundary weights do not factorise")
    m = bg.graph.measures[bg.interior]
    deg = float(rho @ m)
    vol = volumes(bg)
    lhs = second_eigenvalue(induced_interior(bg))
    rhs = deg - vol.boundary * rho.min() + (vol.total / deg) * float(rho * rho @ m)
    cond = bool(lhs >= rhs - tol * (1 + abs(rhs)))
    return CorollaryCheck(True, cond, lhs, rhs, _observed(bg, tol, comparison))


@dataclass(frozen=True)
class ConstantRhoCheck(CorollaryCheck):
    rho: Optional[float] = None
    disconnected_interior: Optional[bool] = None
    volume_condition: Optional[bool] = None  # V_B >= V_O, meaningful when disconnected

    @property
    def consistent(self) -> bool:
        if not self.applicable:
            return True
        ok = self.condition == self.equality_observed
        if self.disconnected_interior:
            ok = ok and self.volume_condition == self.equality_observed
        return ok


def check_cor_constant(bg: BoundaryGraph, tol: float = DEFAULT_TOL,
                       comparison: ComparisonReport = None) -> ConstantRhoCheck:
    """rho(V_O - V_B) <= mu_2(interior), iff full equality, for constant positive rho."""
    if bg.boundary.size < 2:
        return ConstantRhoCheck(False, None, note="needs at least two boundary vertices")
    rho = factorization_rho(bg, tol)
    if rho is None or rho.min() <= 0 or np.ptp(rho) > tol * rho.max():
        return ConstantRhoCheck(False, None, note="rho is not a positive constant")
    r = float(rho.mean())
    vol = volumes(bg)
    interior = induced_interior(bg)
    mu2 = second_eigenvalue(interior)
    lhs = r * (vol.interior - vol.boundary)
    cond = bool(lhs <= mu2 + tol * (1 + abs(lhs)))
    disconnected = interior.n > 1 and not interior.is_connected()
    vcond = bool(vol.boundary >= vol.interior * (1 - tol)) if disconnected else None
    return ConstantRhoCheck(True, cond, lhs, mu2, _observed(bg, tol, comparison),
                            rho=r, disconnected_interior=disconnected, volume_condition=vcond)


@dataclass(frozen=True)
class UnitRigidityReport:
    applicable: bool
    omega0: Tuple[int, ...] = ()
    omega1: Tuple[int, ...] = ()
    cond1: Optional[bool] = None
    cond2: Optional[bool] = None
    cond3: Optional[bool] = None
    mu2_omega1: Optional[float] = None
    equality_observed: Optional[bool] = None

    @property
    def predicted(self) -> Optional[bool]:
        if not self.applicable:
            return None
        return bool(self.cond1 and self.cond2 and self.cond3)

    @property
    def consistent(self) -> bool:
        return not self.applicable or self.predicted == self.equality_observed


def check_cor_unit(bg: BoundaryGraph, tol: float = DEFAULT_TOL,
                   comparison: ComparisonReport = None) -> UnitRigidityReport:
    """Combinatorial rigidity test for unit-weight graphs."""
    g = bg.graph
    if not g.is_unit_weight() or bg.boundary.size < 2:
        return UnitRigidityReport(False)
    adj = g.adjacency
    B, O = bg.boundary, bg.interior
    nb_count = adj[np.ix_(O, B)].sum(axis=1)
    cond1 = bool(np.all((nb_count == 0) | (nb_count == B.size)))
    omega0 = tuple(int(y) for y in O[nb_count == 0])
    omega1 = tuple(int(y) for y in O[nb_count > 0])
    cross = int(adj[np.ix_(list(omega0), list(omega1))].sum()) if omega0 and omega1 else 0
    cond2 = cross == len(omega0) * len(omega1)
    mu2 = second_eigenvalue(g.subgraph(omega1)) if omega1 else np.inf
    if len(omega1) <= 1:
        cond3 = True
    else:
        cond3 = bool(mu2 >= len(omega1) - len(omega0) - B.size - tol * (1 + abs(mu2)))
    return UnitRigidityReport(True, omega0, omega1, cond1, cond2, cond3, mu2,
                              _observed(bg, tol, comparison))


def verify(bg: BoundaryGraph, tol: float = DEFAULT_TOL) -> dict:
    """Run every comparison/rigidity check once, sharing spectra."""
    sigma = steklov_spectrum(bg)
    mu = laplacian_spectrum(bg.graph)
    comp = compare_spectra(bg, tol, sigma=sigma, mu=mu)
    rig = full_equality_rigidity(bg, tol, comp)
    witnesses = {}
    for i in comp.equality_indices:
        if i >= 2:
            witnesses[i] = equality_eigenfunction_witness(bg, i, tol, mu=mu, sigma=sigma)
    return {
        "comparison": comp,
        "rigidity": rig,
        "witnesses": witnesses,
        "cor_general": check_cor_general(bg, tol, comp),
        "cor_constant": check_cor_constant(bg, tol, comp),
        "cor_unit": check_cor_unit(bg, tol, comp),
    }

