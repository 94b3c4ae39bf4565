"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_backends.py [--sizes 10 20 40] [--repeat 5]

Each kernel is called once before timing so numba compilation is excluded.
Results are checked for agreement before they are timed.
"""

import argparse
import time

import numpy as np

from graphsteklov import _kernels
from graphsteklov.curvature import curvature_lp
from graphsteklov.graph_core import random_graph

KERNELS = ("jacobi", "cholesky", "stoer_wagner", "simplex")


def best_of(fn, repeat):
    fn()  # warm-up / JIT
    ts = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        ts.append(time.perf_counter() - t0)
    return min(ts)


def simplex_case(n, rng):
    # curvature LP on the whole graph with its one equality row dropped: every
    # remaining row is <= with b >= 0, so the slack basis is a feasible start
    g = random_graph(n, min(1.0, 4.0 / n), rng)
    p, _ = curvature_lp(g, 0, int(g.neighbors(0)[0]), support=range(g.n))
    k = p.num_vars
    a = np.hstack([p.a_ub, -p.a_ub, np.eye(p.b_ub.size)])
    T = np.zeros((a.shape[0] + 1, a.shape[1] + 1))
    T[:-1, :-1] = a
    T[:-1, -1] = p.b_ub
    T[-1, :k] = p.c
    T[-1, k:2 * k] = -p.c
    basis = 2 * k + np.arange(p.b_ub.size)
    return T, basis


def cases(n, rng):
    a = rng.normal(size=(n, n))
    sym = a + a.T
    spd = a @ a.T + n * np.eye(n)
    w = np.abs(sym)
    np.fill_diagonal(w, 0.0)
    T, basis = simplex_case(n, rng)
    return {
        "jacobi": lambda f: f(sym, 1e-14, 100),
        "cholesky": lambda f: f(spd, 1e-13),
        "stoer_wagner": lambda f: f(w),
        "simplex": lambda f: f(T.copy(), basis.copy(), T.shape[1] - 1, 1e-10, 50_000),
    }


def check_agreement(name, call):
    r1, r2 = call(getattr(_kernels, f"{name}_numba")), call(getattr(_kernels, f"{name}_numpy"))
    if name == "jacobi":
        ok = np.allclose(np.sort(r1[0]), np.sort(r2[0]), atol=1e-10)
    elif name == "cholesky":
        ok = np.allclose(r1[0], r2[0])
    elif name == "simplex":
        ok = r1[0] == r2[0]
    else:
        ok = np.isclose(r1, r2)
    if not ok:
        raise SystemExit(f"{name}: backends disagree")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<13}{'n':>5}{'numba ms':>12}{'numpy ms':>12}{'speedup':>9}")
    for n in args.sizes:
        for name, call in cases(n, rng).items():
            check_agreement(name, call)
            tb = best_of(lambda: call(getattr(_kernels, f"{name}_numba")), args.repeat)
            tp = best_of(lambda: call(getattr(_kernels, f"{name}_numpy")), args.repeat)
            print(f"{name:<13}{n:>5}{1e3 * tb:>12.3f}{1e3 * tp:>12.3f}{tp / tb:>8.1f}x")


if __name__ == "__main__":
    main()
