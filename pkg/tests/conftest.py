import numpy as np
import pytest

from graphsteklov.graph_core import BoundaryGraph, gen_cycle, gen_path, gen_star, random_boundary_graph


def p3():
    return BoundaryGraph(gen_path(3), [0, 2])


def p4():
    return BoundaryGraph(gen_path(4), [0, 3])


def c4():
    return BoundaryGraph(gen_cycle(4), [0, 2])


def k13():
    return gen_star(3, 1, "endpoints")


FIXTURES = {"p3": p3, "p4": p4, "c4": c4, "k13": k13}


def random_bgs(count, seed, n_range=(3, 13), unit=False):
    """Seeded stream of random boundary graphs with a mix of densities."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(*n_range))
        p = float(rng.uniform(0.2, 0.8))
        out.append(random_boundary_graph(n, p, rng, unit=unit))
    return out


@pytest.fixture(params=sorted(FIXTURES))
def fixture_bg(request):
    return FIXTURES[request.param]()


ACCEPTANCE = {}


@pytest.fixture
def criterion():
    """Record a pass/fail line for an acceptance criterion (echoed in the terminal summary)."""

    def record(number, ok, text):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}"
        ACCEPTANCE[number] = line
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
