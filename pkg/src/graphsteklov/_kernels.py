"""Hot inner loops, in two flavours.

Every kernel exists as a numba ``@njit`` function (scalar loops) and as a
pure-numpy function (vectorised where the algorithm allows it).  The public
names at the bottom of this module are bound once, at import time:

* ``GRAPHSTEKLOV_NUMBA=0`` (or numba missing) selects the numpy path;
* anything else selects numba.

Both flavours are importable directly (``*_numba`` / ``*_numpy``) so tests
and the benchmark can compare them side by side.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def _numba_requested():
    flag = os.environ.get("GRAPHSTEKLOV_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "no", "off")


BACKEND = "numba" if (HAVE_NUMBA and _numba_requested()) else "numpy"


# ---------------------------------------------------------------------------
# Cyclic Jacobi eigenvalue iteration
# ---------------------------------------------------------------------------


@njit(cache=True)
def jacobi_numba(a, tol, max_sweeps):
    """Row-cyclic Jacobi on a copy of symmetric ``a``.

    Returns (diag, V, sweeps); sweeps == -1 signals no convergence.
    """
    a = a.copy()
    n = a.shape[0]
    v = np.eye(n)
    norm = 0.0
    for i in range(n):
        for j in range(n):
            norm += a[i, j] * a[i, j]
    norm = np.sqrt(norm)
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        if np.sqrt(2.0 * off) <= tol * norm:
            d = np.empty(n)
            for i in range(n):
                d[i] = a[i, i]
            return d, v, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return np.zeros(n), v, -1


def _round_robin(n):
    # circle-method tournament: n-1 (or n) rounds of disjoint pairs
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def jacobi_numpy(a, tol, max_sweeps):
    """Jacobi with round-robin ordering; each round rotates n/2 disjoint pairs at once."""
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    norm = np.linalg.norm(a)
    rounds = _round_robin(n)
    offdiag = ~np.eye(n, dtype=bool)
    for sweep in range(max_sweeps + 1):
        off = np.linalg.norm(a[offdiag])
        if off <= tol * norm:
            return np.diag(a).copy(), v, sweep
        if sweep == max_sweeps:
            break
        for p, q in rounds:
            apq = a[p, q]
            live = apq != 0.0
            if not live.any():
                continue
            p, q, apq = p[live], q[live], apq[live]
            theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            big = np.abs(theta) > 1e150
            safe = np.where(big, 1.0, theta)
            # theta == 0 must rotate by +45 degrees, so no np.sign here
            t = np.where(safe < 0.0, -1.0, 1.0) / (np.abs(safe) + np.sqrt(safe * safe + 1.0))
            t = np.where(big, 0.5 / np.where(big, theta, 1.0), t)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            ap, aq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * ap - s * aq
            a[:, q] = s * ap + c * aq
            ap, aq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * ap - s[:, None] * aq
            a[q, :] = s[:, None] * ap + c[:, None] * aq
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = c * vp - s * vq
            v[:, q] = s * vp + c * vq
    return np.zeros(n), v, -1


# ---------------------------------------------------------------------------
# Cholesky factorisation and triangular solves
# ---------------------------------------------------------------------------


@njit(cache=True)
def cholesky_numba(a, pivot_tol):
    """Lower Cholesky factor; second return is the failing pivot index or -1."""
    n = a.shape[0]
    L = np.zeros((n, n))
    dmax = 0.0
    for i in range(n):
        if a[i, i] > dmax:
            dmax = a[i, i]
    thresh = pivot_tol * dmax
    for j in range(n):
        d = a[j, j]
        for k in range(j):
            d -= L[j, k] * L[j, k]
        if not d > thresh:
            return L, j
        ljj = np.sqrt(d)
        L[j, j] = ljj
        for i in range(j + 1, n):
            s = a[i, j]
            for k in range(j):
                s -= L[i, k] * L[j, k]
            L[i, j] = s / ljj
    return L, -1


def cholesky_numpy(a, pivot_tol):
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    L = np.zeros((n, n))
    thresh = pivot_tol * (np.max(np.diag(a)) if n else 0.0)
    for j in range(n):
        row = L[j, :j]
        d = a[j, j] - row @ row
        if not d > thresh:
            return L, j
        L[j, j] = np.sqrt(d)
        L[j + 1:, j] = (a[j + 1:, j] - L[j + 1:, :j] @ row) / L[j, j]
    return L, -1


@njit(cache=True)
def cho_solve_numba(L, b):
    # b is 2-D (n, k)
    n, k = b.shape
    y = b.copy()
    for c in range(k):
        for i in range(n):
            s = y[i, c]
            for j in range(i):
                s -= L[i, j] * y[j, c]
            y[i, c] = s / L[i, i]
        for i in range(n - 1, -1, -1):
            s = y[i, c]
            for j in range(i + 1, n):
                s -= L[j, i] * y[j, c]
            y[i, c] = s / L[i, i]
    return y


def cho_solve_numpy(L, b):
    n = L.shape[0]
    y = np.array(b, dtype=float, copy=True)
    for i in range(n):
        y[i] = (y[i] - L[i, :i] @ y[:i]) / L[i, i]
    for i in range(n - 1, -1, -1):
        y[i] = (y[i] - L[i + 1:, i] @ y[i + 1:]) / L[i, i]
    return y


# ---------------------------------------------------------------------------
# Simplex pivoting (Bland's rule) on a dense tableau
# ---------------------------------------------------------------------------
# Tableau layout: rows 0..m-1 are constraints [A | b]; row m holds reduced
# costs with -objective in the last column.  ``basis[i]`` is the column basic
# in row i.  Only columns < ``ncols`` may enter.
# Status: 0 optimal, 1 unbounded, 2 iteration limit.


@njit(cache=True)
def simplex_numba(T, basis, ncols, tol, max_iter):
    m = T.shape[0] - 1
    width = T.shape[1]
    for it in range(max_iter):
        enter = -1
        for j in range(ncols):
            if T[m, j] < -tol:
                enter = j
                break
        if enter < 0:
            return 0, it
        best = np.inf
        for i in range(m):
            if T[i, enter] > tol:
                r = T[i, width - 1] / T[i, enter]
                if r < best:
                    best = r
        if best == np.inf:
            return 1, it
        leave = -1
        for i in range(m):
            if T[i, enter] > tol and T[i, width - 1] / T[i, enter] <= best + tol:
                if leave < 0 or basis[i] < basis[leave]:
                    leave = i
        piv = T[leave, enter]
        for j in range(width):
            T[leave, j] /= piv
        for i in range(m + 1):
            if i != leave:
                f = T[i, enter]
                if f != 0.0:
                    for j in range(width):
                        T[i, j] -= f * T[leave, j]
        basis[leave] = enter
    return 2, max_iter


def simplex_numpy(T, basis, ncols, tol, max_iter):
    m = T.shape[0] - 1
    for it in range(max_iter):
        neg = np.nonzero(T[m, :ncols] < -tol)[0]
        if neg.size == 0:
            return 0, it
        enter = neg[0]
        col = T[:m, enter]
        rows = np.nonzero(col > tol)[0]
        if rows.size == 0:
            return 1, it
        ratios = T[rows, -1] / col[rows]
        best = ratios.min()
        tied = rows[ratios <= best + tol]
        leave = tied[np.argmin(basis[tied])]
        T[leave] /= T[leave, enter]
        f = T[:, enter].copy()
        f[leave] = 0.0
        T -= np.outer(f, T[leave])
        basis[leave] = enter
    return 2, max_iter


# ---------------------------------------------------------------------------
# Connectivity: Stoer-Wagner global min cut, unit-capacity max flow
# ---------------------------------------------------------------------------


@njit(cache=True)
def stoer_wagner_numba(w):
    """Weight of a global minimum cut of the dense symmetric matrix ``w``."""
    n = w.shape[0]
    w = w.copy()
    active = np.ones(n, dtype=np.bool_)
    best = np.inf
    for phase in range(n - 1):
        added = np.zeros(n, dtype=np.bool_)
        key = np.zeros(n)
        prev = -1
        last = -1
        remaining = n - phase
        for step in range(remaining):
            sel = -1
            for v in range(n):
                if active[v] and not added[v]:
                    if sel < 0 or key[v] > key[sel]:
                        sel = v
            added[sel] = True
            if step == remaining - 1:
                if key[sel] < best:
                    best = key[sel]
                prev = last
                last = sel
            else:
                last = sel
                for v in range(n):
                    if active[v] and not added[v]:
                        key[v] += w[sel, v]
        # merge last into prev
        for v in range(n):
            w[prev, v] += w[last, v]
            w[v, prev] = w[prev, v]
        w[prev, prev] = 0.0
        active[last] = False
    return best


def stoer_wagner_numpy(w):
    w = np.array(w, dtype=float, copy=True)
    n = w.shape[0]
    active = np.ones(n, dtype=bool)
    best = np.inf
    for phase in range(n - 1):
        added = ~active
        key = np.zeros(n)
        order = []
        for _ in range(n - phase):
            cand = np.where(added, -np.inf, key)
            sel = int(np.argmax(cand))
            added = added.copy()
            added[sel] = True
            order.append(sel)
            key += w[sel]
        last, prev = order[-1], order[-2]
        cut = w[last, active].sum()
        best = min(best, cut)
        w[prev] += w[last]
        w[:, prev] = w[prev]
        w[prev, prev] = 0.0
        w[last] = 0.0
        w[:, last] = 0.0
        active[last] = False
    return best


@njit(cache=True)
def max_flow_numba(cap, s, t, limit):
    """Edmonds-Karp on a dense capacity matrix; stops once flow reaches ``limit``."""
    n = cap.shape[0]
    r = cap.copy()
    flow = 0.0
    parent = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    while flow < limit:
        for i in range(n):
            parent[i] = -1
        parent[s] = s
        head = 0
        tail = 1
        queue[0] = s
        while head < tail and parent[t] < 0:
            u = queue[head]
            head += 1
            for v in range(n):
                if parent[v] < 0 and r[u, v] > 0.0:
                    parent[v] = u
                    queue[tail] = v
                    tail += 1
        if parent[t] < 0:
            break
        aug = np.inf
        v = t
        while v != s:
            u = parent[v]
            if r[u, v] < aug:
                aug = r[u, v]
            v = u
        v = t
        while v != s:
            u = parent[v]
            r[u, v] -= aug
            r[v, u] += aug
            v = u
        flow += aug
    return flow


def max_flow_numpy(cap, s, t, limit):
    r = np.array(cap, dtype=float, copy=True)
    n = r.shape[0]
    flow = 0.0
    while flow < limit:
        parent = np.full(n, -1)
        parent[s] = s
        frontier = np.array([s])
        while frontier.size and parent[t] < 0:
            reach = (r[frontier] > 0.0) & (parent < 0)[None, :]
            src, dst = np.nonzero(reach)
            dst, first = np.unique(dst, return_index=True)
            parent[dst] = frontier[src[first]]
            frontier = dst
        if parent[t] < 0:
            break
        path = [t]
        while path[-1] != s:
            path.append(parent[path[-1]])
        us, vs = np.array(path[1:]), np.array(path[:-1])
        aug = r[us, vs].min()
        r[us, vs] -= aug
        r[vs, us] += aug
        flow += aug
    return flow


if BACKEND == "numba":
    jacobi = jacobi_numba
    cholesky = cholesky_numba
    simplex = simplex_numba
    stoer_wagner = stoer_wagner_numba
    max_flow = max_flow_numba

    def cho_solve(L, b):
        return cho_solve_numba(L, b)

else:
    jacobi = jacobi_numpy
    cholesky = cholesky_numpy
    simplex = simplex_numpy
    stoer_wagner = stoer_wagner_numpy
    max_flow = max_flow_numpy
    cho_solve = cho_solve_numpy
