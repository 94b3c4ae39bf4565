"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines are also
collected into an "acceptance criteria" section of the terminal summary.
"""

import itertools
import json
import time

import numpy as np
from conftest import FIXTURES, c4, k13, p3, random_bgs

from graphsteklov import _kernels
from graphsteklov.bounds import fiedler_bounds, friedman_bound, lichnerowicz_ollivier_check, p_dirichlet
from graphsteklov.cli import EXIT_OK, main
from graphsteklov.comparison import compare_spectra, full_equality_rigidity
from graphsteklov.curvature import ollivier_adjacent, ollivier_kappa, ollivier_kappa_full
from graphsteklov.graph_core import (
    BoundaryGraph,
    format_graph,
    gen_complete,
    gen_cycle,
    gen_factorized,
    parse_graph,
    random_boundary,
    random_graph,
    weighted_degree,
)
from graphsteklov.spectral import (
    dtn_matrix,
    energy,
    harmonic_extension,
    inner,
    laplacian_apply,
    laplacian_spectrum,
    normal_derivative,
    steklov_spectrum,
)

REL = 1e-8


def close(a, b, tol=1e-9):
    return np.allclose(a, b, rtol=0, atol=tol)


def test_criterion_1_comparison_inequality(criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(20240101)
    worst = np.inf
    count = 0
    for _ in range(300):
        n = int(rng.integers(3, 41))
        p = float(rng.uniform(min(0.5, 2.5 / n), 0.6))  # sparser as n grows
        g = random_graph(n, p, rng)
        bg = BoundaryGraph(g, random_boundary(g, rng, 2))
        rep = compare_spectra(bg)
        margin = rep.gaps + 1e-8 * (1 + np.abs(rep.sigma))
        worst = min(worst, float(margin.min()))
        count += 1
    elapsed = time.perf_counter() - t0
    ok = worst >= 0 and count == 300 and elapsed < 30
    criterion(1, ok, f"sigma_i >= mu_i - 1e-8(1+|sigma_i|) on {count} random graphs (n <= 40), "
                     f"min margin {worst:.3e}, {elapsed:.1f}s")


def test_criterion_2_rigidity_iff(criterion):
    mismatches = []
    checked = 0
    # (a) factorised families, interior weights scaled by t
    rng = np.random.default_rng(99)
    for fam in range(20):
        h = random_graph(int(rng.integers(2, 8)), float(rng.uniform(0.3, 0.9)), rng)
        rho = rng.uniform(0.2, 2.0, h.n)
        if fam % 4 == 1:
            rho[:] = rho[0]
        if fam % 5 == 2 and h.n > 1:
            rho[0] = 0.0
        mb = rng.uniform(0.5, 2.0, int(rng.integers(2, 5)))
        for t in (0.1, 1.0, 10.0, 100.0):
            rig = full_equality_rigidity(gen_factorized(h.scaled(weight_factor=t), rho, mb))
            checked += 1
            if not rig.consistent:
                mismatches.append(("factorized", fam, t))
    # (b) random unit-weight boundary graphs
    for k, bg in enumerate(random_bgs(100, seed=555, n_range=(3, 12), unit=True)):
        checked += 1
        if not full_equality_rigidity(bg).consistent:
            mismatches.append(("unit", k))
    # (c) hand fixtures
    for name, make in FIXTURES.items():
        checked += 1
        if not full_equality_rigidity(make()).consistent:
            mismatches.append(("fixture", name))
    criterion(2, not mismatches, f"full_equality predicted == observed on {checked} graphs, "
                                 f"{len(mismatches)} mismatches {mismatches[:3]}")


def test_criterion_3_exact_fixtures(criterion):
    # P3, boundary {0, 2}: the middle vertex averages its neighbours, u1 = (f0 + f2)/2,
    # so (Lambda f)(0) = f0 - u1 = (f0 - f2)/2  ->  Lambda = [[1/2, -1/2], [-1/2, 1/2]],
    # eigenvalues 0 and 1.  Laplacian of P3: char. poly x(x-1)(x-3).
    # C4, boundary {0, 2}: both interior vertices equal (f0 + f2)/2, so
    # (Lambda f)(0) = 2 f0 - (f0 + f2) = f0 - f2  ->  [[1, -1], [-1, 1]], eigenvalues 0, 2.
    # Circulant spectrum of C4: 2 - 2cos(2 pi k / 4) = 0, 2, 2, 4.
    # K1,3, leaf boundary: the centre is the mean of f, (Lambda f)(leaf) = f_leaf - mean(f),
    # Lambda = I - J/3 with eigenvalues 0, 1, 1.
    checks = {
        "P3 Lambda": close(dtn_matrix(p3()).matrix, [[0.5, -0.5], [-0.5, 0.5]]),
        "P3 sigma": close(steklov_spectrum(p3()).values, [0, 1]),
        "P3 mu": close(laplacian_spectrum(p3().graph).values, [0, 1, 3]),
        "C4 sigma": close(steklov_spectrum(c4()).values, [0, 2]),
        "C4 mu": close(laplacian_spectrum(c4().graph).values, [0, 2, 2, 4]),
        "C4 rigidity": full_equality_rigidity(c4()).full_equality_predicted
        and full_equality_rigidity(c4()).full_equality_observed,
        "K13 sigma": close(steklov_spectrum(k13()).values, [0, 1, 1]),
    }
    bad = [k for k, v in checks.items() if not v]
    criterion(3, not bad, f"hand-derived fixtures within 1e-9 ({len(checks)} checks), failing: {bad}")


def test_criterion_4_friedman(criterion):
    eq = friedman_bound(k13(), 3)
    s_k13 = friedman_bound(k13(), 2)
    s_c4 = friedman_bound(c4(), 2)
    checks = {
        "K13 i=3 bound 1": abs(eq.bound - 1.0) < 1e-10 and eq.name == "friedman_not_divide",
        "K13 i=3 zero slack": abs(eq.slack) < 1e-10,
        "K13 i=2 strict > 0.4": s_k13.name == "friedman_divide" and s_k13.slack > 0.4,
        "C4 i=2 strict > 0.4": s_c4.name == "friedman_divide" and s_c4.slack > 0.4,
        "P(1,lam) = lam": all(abs(p_dirichlet(1, lam) - lam) < 1e-10 for lam in (0.5, 1.0, 2.0, 3.0)),
        "P(2,1)": abs(p_dirichlet(2, 1.0) - (3 - 5 ** 0.5) / 2) < 1e-10,
    }
    bad = [k for k, v in checks.items() if not v]
    criterion(4, not bad, f"Friedman branches: K13 i=3 slack {eq.slack:.1e}, i=2 slacks "
                          f"{s_k13.slack:.4f} / {s_c4.slack:.4f}; failing: {bad}")


def test_criterion_5_fiedler(criterion):
    edge, vertex = fiedler_bounds(p3())
    p3_ok = abs(edge.bound - 1.0) < 1e-10 and abs(edge.target - 1.0) < 1e-10
    worst = np.inf
    ordered = True
    for bg in random_bgs(100, seed=4242, n_range=(3, 13), unit=True):
        e, v = fiedler_bounds(bg)
        worst = min(worst, e.target + 1e-8 - e.bound, v.target + 1e-8 - v.bound)
        ordered &= e.bound >= v.bound
    ok = p3_ok and worst >= 0 and ordered
    criterion(5, ok, f"Fiedler: equality on P3 ({edge.bound:.12f} = {edge.target:.12f}), "
                     f"bound <= sigma_2 + 1e-8 on 100 unit graphs (min margin {worst:.3e}), edge >= vertex")


def test_criterion_6_curvature(criterion):
    checks = {
        "K3 edge": abs(ollivier_kappa(gen_complete(3), 0, 1).kappa - 3) < 1e-8,
        "C4 edges": all(abs(p.kappa - 2) < 1e-8 for p in ollivier_adjacent(gen_cycle(4))),
    }
    for n in (3, 4, 5):
        checks[f"K{n} edges"] = all(abs(p.kappa - n) < 1e-8 for p in ollivier_adjacent(gen_complete(n)))
    lo = lichnerowicz_ollivier_check(c4())
    checks["C4 chain"] = all(abs(x - 2) < 1e-8 for x in (lo.details["kappa_min"], lo.details["mu_2"], lo.target))
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(50):
        g = random_graph(int(rng.integers(2, 9)), float(rng.uniform(0.2, 0.9)), rng,
                         unit=bool(rng.random() < 0.5))
        for x, y in itertools.combinations(range(g.n), 2):
            worst = max(worst, abs(ollivier_kappa(g, x, y).kappa - ollivier_kappa_full(g, x, y).kappa))
    checks["restricted == full"] = worst < 1e-8
    bad = [k for k, v in checks.items() if not v]
    criterion(6, not bad, f"curvature fixtures, Lichnerowicz chain on C4, restricted vs full LP on 50 graphs "
                          f"(max diff {worst:.1e}); failing: {bad}")


def _rel(a, b):
    return abs(a - b) / (1 + abs(a) + abs(b))


def test_criterion_7_structural_identities(criterion):
    graphs = [make() for make in FIXTURES.values()] + random_bgs(60, seed=777)
    rng = np.random.default_rng(0)
    worst = {"green": 0.0, "variational": 0.0, "trace": 0.0, "maxprinciple": 0.0, "scaling": 0.0}
    for bg in graphs:
        g = bg.graph
        nb = bg.boundary.size
        for _ in range(3):
            u, v = rng.normal(size=g.n), rng.normal(size=g.n)
            lhs = inner(g, laplacian_apply(g, u), v, bg.interior)
            dn = np.zeros(g.n)
            dn[bg.boundary] = normal_derivative(bg, u)
            worst["green"] = max(worst["green"], _rel(lhs, -energy(g, u, v) + inner(g, dn, v, bg.boundary)))

            op = dtn_matrix(bg)
            f, h = rng.normal(size=nb), rng.normal(size=nb)
            uf, uh = harmonic_extension(bg, f).values, harmonic_extension(bg, h).values
            pairing = float(np.sum(op.apply(f) * h * op.mass))
            worst["variational"] = max(worst["variational"], _rel(pairing, energy(g, uf, uh)))

            over = max(uf.max() - f.max(), f.min() - uf.min(), 0.0)
            worst["maxprinciple"] = max(worst["maxprinciple"], over)
        mu = laplacian_spectrum(g).values
        worst["trace"] = max(worst["trace"], _rel(mu.sum(), sum(weighted_degree(g, x) for x in range(g.n))))
        sig = steklov_spectrum(bg).values
        heavy = BoundaryGraph(g.scaled(weight_factor=10.0), bg.boundary)
        fat = BoundaryGraph(g.scaled(measure_factor=10.0), bg.boundary)
        scale = max(1.0, mu.max())
        for got, want in (
            (laplacian_spectrum(heavy.graph).values, 10 * mu),
            (steklov_spectrum(heavy).values, 10 * sig),
            (laplacian_spectrum(fat.graph).values, mu / 10),
            (steklov_spectrum(fat).values, sig / 10),
        ):
            worst["scaling"] = max(worst["scaling"], float(np.abs(got - want).max()) / (10 * scale))
    ok = all(v <= REL for v in worst.values())
    summary = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    criterion(7, ok, f"structural identities on {len(graphs)} graphs within 1e-8 relative: {summary}")


def _run(capsys, argv):
    try:
        code = main([str(a) for a in argv])
    except SystemExit as exc:
        code = exc.code
    return code, capsys.readouterr().out


def test_criterion_8_cli(criterion, capsys, tmp_path):
    from test_cli import DATA, EXIT_MATRIX, GEN_CASES, GOLDEN, JSON_CASES

    failures = []
    for name, argv in JSON_CASES.items():
        code, out = _run(capsys, argv)
        golden = (GOLDEN / _kernels.BACKEND / f"{name}.json").read_text()
        if code != EXIT_OK or out != golden:
            failures.append(f"golden {name}")
        if _run(capsys, argv)[1] != out:
            failures.append(f"determinism {name}")
        json.loads(out)
    for name, argv in GEN_CASES.items():
        code, out = _run(capsys, argv)
        if out != (GOLDEN / "gen" / name).read_text():
            failures.append(f"gen golden {name}")
        g, boundary = parse_graph(out)
        if format_graph(g, boundary) != out:
            failures.append(f"round trip {name}")
    for argv, expected in EXIT_MATRIX:
        if _run(capsys, argv)[0] != expected:
            failures.append(f"exit {argv}")
    assert DATA.exists()
    criterion(8, not failures, f"CLI goldens ({len(JSON_CASES)} JSON, {len(GEN_CASES)} gen) bitwise, "
                               f"round trip, determinism, {len(EXIT_MATRIX)} exit codes; failing: {failures[:3]}")
