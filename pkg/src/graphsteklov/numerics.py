"""Dense kernels: symmetric eigendecomposition, SPD solves, small LPs.

Everything here is Euclidean.  Generalised problems with a diagonal mass
matrix are symmetrised by the caller (see :mod:`graphsteklov.spectral`).
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from graphsteklov import _kernels

JACOBI_TOL = 1e-14
MAX_SWEEPS = 100
PIVOT_TOL = 1e-13
SYMMETRY_TOL = 1e-12


class NumericalError(ArithmeticError):
    pass


class ConvergenceFailure(NumericalError):
    pass


class NotPositiveDefinite(NumericalError):
    pass


class AsymmetricMatrix(ValueError):
    pass


def sym_matrix(a) -> np.ndarray:
    """Validate a dense symmetric matrix and return it symmetrised exactly."""
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    scale = np.abs(a).max() if a.size else 0.0
    if a.size and np.abs(a - a.T).max() > SYMMETRY_TOL * max(scale, 1e-300):
        raise AsymmetricMatrix(f"max asymmetry {np.abs(a - a.T).max():.3e}")
    return 0.5 * (a + a.T)


@dataclass(frozen=True)
class EigenResult:
    values: np.ndarray  # ascending
    vectors: np.ndarray  # orthonormal columns
    residual: float  # max_i ||A v_i - lambda_i v_i||
    sweeps: int


def leading_index(v: np.ndarray, rel: float = 1e-9) -> np.ndarray:
    """Per column, first row whose magnitude is within ``rel`` of the column maximum."""
    a = np.abs(np.atleast_2d(v.T).T)
    return np.argmax(a >= a.max(axis=0) * (1 - rel), axis=0)


def fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry is positive (first one on near-ties)."""
    vectors = np.array(vectors, dtype=float)
    if vectors.size == 0:
        return vectors
    idx = leading_index(vectors)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def sym_eigen(a, max_sweeps: int = MAX_SWEEPS) -> EigenResult:
    """Full spectrum of a symmetric matrix by cyclic Jacobi rotations."""
    a = sym_matrix(a)
    n = a.shape[0]
    if n == 0:
        raise ValueError("empty matrix")
    d, v, sweeps = _kernels.jacobi(a, JACOBI_TOL, max_sweeps)
    if sweeps < 0:
        raise ConvergenceFailure(f"Jacobi did not converge in {max_sweeps} sweeps (n={n})")
    order = np.argsort(d, kind="stable")
    d = d[order]
    v = fix_signs(v[:, order])
    resid = np.linalg.norm(a @ v - v * d, axis=0).max()
    return EigenResult(d, v, float(resid), int(sweeps))


def spd_solve(a, b) -> np.ndarray:
    """Solve ``a x = b`` for symmetric positive definite ``a`` via Cholesky.

    ``b`` may be a vector or a matrix of right-hand sides.
    """
    a = sym_matrix(a)
    b = np.asarray(b, dtype=float)
    vec = b.ndim == 1
    rhs = b.reshape(a.shape[0], -1)
    L, bad = _kernels.cholesky(a, PIVOT_TOL)
    if bad >= 0:
        raise NotPositiveDefinite(f"nonpositive pivot at row {bad}")
    x = _kernels.cho_solve(L, np.ascontiguousarray(rhs))
    return x[:, 0] if vec else x


# ---------------------------------------------------------------------------
# Linear programming
# ---------------------------------------------------------------------------

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
ITERATION_LIMIT = "iteration_limit"

_RELATIONS = ("<=", ">=", "==")


@dataclass(frozen=True)
class LpProblem:
    """minimize c.x subject to a_ub x <= b_ub and a_eq x == b_eq; x is free."""

    c: np.ndarray
    a_ub: np.ndarray
    b_ub: np.ndarray
    a_eq: np.ndarray
    b_eq: np.ndarray

    @classmethod
    def build(cls, c, a_ub=None, b_ub=None, a_eq=None, b_eq=None) -> "LpProblem":
        c = np.asarray(c, dtype=float).ravel()
        n = c.size

        def mat(a):
            return np.zeros((0, n)) if a is None else np.asarray(a, dtype=float).reshape(-1, n)

        def vec(b, rows):
            return np.zeros(rows) if b is None else np.asarray(b, dtype=float).ravel()

        a_ub, a_eq = mat(a_ub), mat(a_eq)
        b_ub, b_eq = vec(b_ub, a_ub.shape[0]), vec(b_eq, a_eq.shape[0])
        if a_ub.shape[0] != b_ub.size or a_eq.shape[0] != b_eq.size:
            raise ValueError("constraint rows and right-hand sides differ in length")
        for arr in (c, a_ub, b_ub, a_eq, b_eq):
            if not np.all(np.isfinite(arr)):
                raise ValueError("LP coefficients must be finite")
        return cls(c, a_ub, b_ub, a_eq, b_eq)

    @classmethod
    def from_constraints(cls, c, constraints: Sequence) -> "LpProblem":
        """Build from ``(row, relation, rhs)`` triples, relation in <=, >=, ==."""
        c = np.asarray(c, dtype=float).ravel()
        ub_rows, ub_rhs, eq_rows, eq_rhs = [], [], [], []
        for row, rel, rhs in constraints:
            row = np.asarray(row, dtype=float).ravel()
            if rel not in _RELATIONS:
                raise ValueError(f"unknown relation {rel!r}")
            if rel == "==":
                eq_rows.append(row)
                eq_rhs.append(rhs)
            elif rel == "<=":
                ub_rows.append(row)
                ub_rhs.append(rhs)
            else:
                ub_rows.append(-row)
                ub_rhs.append(-rhs)
        return cls.build(
            c,
            np.array(ub_rows) if ub_rows else None,
            np.array(ub_rhs) if ub_rhs else None,
            np.array(eq_rows) if eq_rows else None,
            np.array(eq_rhs) if eq_rhs else None,
        )

    @property
    def num_vars(self) -> int:
        return self.c.size

    def violation(self, x) -> float:
        """Largest constraint violation of ``x`` (0 when feasible)."""
        worst = 0.0
        if self.b_ub.size:
            worst = max(worst, float(np.max(self.a_ub @ x - self.b_ub)))
        if self.b_eq.size:
            worst = max(worst, float(np.max(np.abs(self.a_eq @ x - self.b_eq))))
        return worst


@dataclass(frozen=True)
class LpSolution:
    status: str
    x: Optional[np.ndarray]
    value: float
    iterations: int


def lp_minimize(p: LpProblem, tol: float = 1e-10, max_iter: int = 50_000) -> LpSolution:
    """Dense two-phase simplex with Bland's rule.

    Free variables are split as x = x+ - x-.  Rows are normalised to a
    nonnegative right-hand side; a <= row with b >= 0 starts with its slack
    basic, every other row gets an artificial variable.
    """
    n = p.num_vars
    m_ub, m_eq = p.b_ub.size, p.b_eq.size
    m = m_ub + m_eq

    # columns: [x+ (n) | x- (n) | slacks (m_ub) | artificials]
    a = np.zeros((m, 2 * n + m_ub))
    b = np.zeros(m)
    a[:m_ub, :n] = p.a_ub
    a[:m_ub, n:2 * n] = -p.a_ub
    a[:m_ub, 2 * n:] = np.eye(m_ub)
    b[:m_ub] = p.b_ub
    a[m_ub:, :n] = p.a_eq
    a[m_ub:, n:2 * n] = -p.a_eq
    b[m_ub:] = p.b_eq
    flip = b < 0
    a[flip] *= -1
    b[flip] *= -1

    needs_art = np.ones(m, dtype=bool)
    needs_art[:m_ub] = flip[:m_ub]
    art_rows = np.nonzero(needs_art)[0]
    n_real = 2 * n + m_ub
    n_art = art_rows.size
    width = n_real + n_art + 1

    T = np.zeros((m + 1, width))
    T[:m, :n_real] = a
    T[:m, -1] = b
    basis = np.empty(m, dtype=np.int64)
    basis[:m_ub] = 2 * n + np.arange(m_ub)
    for k, r in enumerate(art_rows):
        T[r, n_real + k] = 1.0
        basis[r] = n_real + k

    iters = 0
    if n_art:
        T[m, :] = -T[art_rows].sum(axis=0)
        T[m, n_real:n_real + n_art] = 0.0
        status, it = _kernels.simplex(T, basis, n_real + n_art, tol, max_iter)
        iters += it
        if status == 2:
            return LpSolution(ITERATION_LIMIT, None, np.nan, iters)
        if -T[m, -1] > tol * max(1.0, np.abs(b).max()) * 100:
            return LpSolution(INFEASIBLE, None, np.nan, iters)
        # drive remaining artificials out of the basis; drop redundant rows
        keep = np.ones(m + 1, dtype=bool)
        for r in range(m):
            if basis[r] >= n_real:
                cand = np.nonzero(np.abs(T[r, :n_real]) > tol)[0]
                if cand.size == 0:
                    keep[r] = False
                    continue
                j = cand[0]
                T[r] /= T[r, j]
                f = T[:, j].copy()
                f[r] = 0.0
                T -= np.outer(f, T[r])
                basis[r] = j
        T = np.ascontiguousarray(np.delete(T[keep], np.s_[n_real:n_real + n_art], axis=1))
        basis = basis[keep[:m]]
        m = basis.size

    cost = np.zeros(n_real)
    cost[:n] = p.c
    cost[n:2 * n] = -p.c
    T[m, :n_real] = cost
    T[m, -1] = 0.0
    T[m] -= cost[basis] @ T[:m]
    status, it = _kernels.simplex(T, basis, n_real, tol, max_iter)
    iters += it
    if status == 1:
        return LpSolution(UNBOUNDED, None, -np.inf, iters)
    if status == 2:
        return LpSolution(ITERATION_LIMIT, None, np.nan, iters)

    z = np.zeros(n_real)
    z[basis] = T[:m, -1]
    x = z[:n] - z[n:2 * n]
    return LpSolution(OPTIMAL, x, float(p.c @ x), iters)
