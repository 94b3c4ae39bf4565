"""Command-line front end.

Exit codes: 0 success, 1 a checked inequality or rigidity prediction failed,
2 parse/usage error, 3 invalid or missing boundary, 4 numerical failure.
"""

import argparse
import json
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from graphsteklov import __version__
from graphsteklov import bounds as bnd
from graphsteklov import comparison as cmp
from graphsteklov.curvature import LpFailure, ollivier_adjacent, ollivier_all_pairs
from graphsteklov.graph_core import (
    BoundaryError,
    BoundaryGraph,
    GraphError,
    ParseError,
    UnknownVertex,
    format_graph,
    gen_comb,
    gen_complete,
    gen_cycle,
    gen_path,
    gen_star,
    random_boundary,
    random_graph,
    read_graph,
    unit_graph,
)
from graphsteklov.numerics import NumericalError
from graphsteklov.spectral import dirichlet_spectrum, dtn_matrix, laplacian_spectrum, steklov_spectrum

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_PARSE = 2
EXIT_BOUNDARY = 3
EXIT_NUMERIC = 4

FAMILIES = ("path", "cycle", "complete", "star", "comb", "random")

log = logging.getLogger("graphsteklov")


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def jsonable(obj):
    """Plain-JSON view: numpy to lists, non-finite floats to strings."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return None
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def dumps(report) -> str:
    return json.dumps(jsonable(report), indent=2) + "\n"


def load(path, need_boundary=False):
    try:
        g, boundary = read_graph(path)
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc.strerror}") from exc
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from exc
    bg = None
    if boundary is not None:
        try:
            bg = BoundaryGraph(g, boundary)
        except GraphError as exc:
            raise CliError(EXIT_BOUNDARY, f"{path}: invalid boundary: {exc}") from exc
    elif need_boundary:
        raise CliError(EXIT_BOUNDARY, f"{path}: no boundary line; this command needs one")
    return g, bg


def envelope(command, path, g, tolerances, results, args=None):
    return {
        "input": {"file": Path(path).name, "digest": g.digest(), "vertices": g.n, "edges": g.num_edges},
        "command": {"name": command, "version": __version__, "args": args or {}},
        "tolerances": tolerances,
        "results": results,
    }


def labelled(g, idx):
    return [g.labels[int(i)] for i in idx]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_spectra(args):
    g, bg = load(args.file, need_boundary=args.steklov or args.dtn)
    results = {"laplacian": laplacian_spectrum(g).values}
    if args.steklov:
        sp = steklov_spectrum(bg)
        results["steklov"] = {"boundary": list(bg.boundary_labels), "values": sp.values}
    if args.dtn:
        results["dtn"] = {"boundary": list(bg.boundary_labels), "matrix": dtn_matrix(bg).matrix}
    if args.dirichlet:
        try:
            sp = dirichlet_spectrum(g, args.dirichlet)
        except GraphError as exc:
            raise CliError(EXIT_BOUNDARY, str(exc)) from exc
        results["dirichlet"] = {"fixed": args.dirichlet, "values": sp.values}
    flags = {"steklov": args.steklov, "dtn": args.dtn, "dirichlet": args.dirichlet}
    return envelope("spectra", args.file, g, {}, results, flags), EXIT_OK


def _corollary(c):
    out = {"applicable": c.applicable}
    if c.applicable:
        out.update(condition=c.condition, lhs=c.lhs, rhs=c.rhs, equality_observed=c.equality_observed,
                   consistent=c.consistent)
    if c.note:
        out["note"] = c.note
    return out


def verify_payload(bg: BoundaryGraph, tol: float):
    res = cmp.verify(bg, tol)
    comp, rig, unit = res["comparison"], res["rigidity"], res["cor_unit"]
    const = res["cor_constant"]
    g = bg.graph
    interior = labelled(g, bg.interior)
    payload = {
        "comparison": {
            "sigma": comp.sigma,
            "mu": comp.mu,
            "gaps": comp.gaps,
            "equality_indices": list(comp.equality_indices),
            "holds": comp.holds,
        },
        "rigidity": {
            "factorization_ok": rig.factorization_ok,
            "rho": None if rig.rho is None else dict(zip(interior, rig.rho.tolist())),
            "deg": rig.deg,
            "form_min_eigenvalue": rig.form_min_eigenvalue,
            "form_ok": rig.form_ok,
            "full_equality_predicted": rig.full_equality_predicted,
            "full_equality_observed": rig.full_equality_observed,
            "consistent": rig.consistent,
        },
        "witnesses": {
            str(i): (None if v is None else dict(zip(g.labels, v.tolist())))
            for i, v in res["witnesses"].items()
        },
        "cor_general": _corollary(res["cor_general"]),
        "cor_constant": dict(_corollary(const), **(
            {"rho": const.rho, "disconnected_interior": const.disconnected_interior,
             "volume_condition": const.volume_condition} if const.applicable else {})),
    }
    if unit.applicable:
        payload["cor_unit"] = {
            "applicable": True,
            "omega0": labelled(g, unit.omega0),
            "omega1": labelled(g, unit.omega1),
            "cond1": unit.cond1,
            "cond2": unit.cond2,
            "cond3": unit.cond3,
            "mu2_omega1": unit.mu2_omega1,
            "predicted": unit.predicted,
            "equality_observed": unit.equality_observed,
            "consistent": unit.consistent,
        }
    else:
        payload["cor_unit"] = {"applicable": False}
    ok = (
        comp.holds
        and rig.consistent
        and res["cor_general"].consistent
        and const.consistent
        and unit.consistent
        and all(res["witnesses"].get(i) is not None for i in comp.equality_indices if i >= 2)
    )
    payload["all_checks_passed"] = ok
    return payload, ok


def _verify_one(path, tol):
    g, bg = load(path, need_boundary=True)
    payload, ok = verify_payload(bg, tol)
    return envelope("verify", path, g, {"equality": tol}, payload), ok


def cmd_verify(args):
    if args.batch:
        files = sorted(p for p in Path(args.batch).iterdir() if p.is_file())
        if not files:
            raise CliError(EXIT_PARSE, f"{args.batch}: no graph files")

        def run(p):
            try:
                rep, ok = _verify_one(p, args.tol)
                return rep, (EXIT_OK if ok else EXIT_VIOLATION)
            except CliError as exc:
                return {"input": {"file": p.name}, "error": str(exc)}, exc.code

        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(run, files))
        code = max(c for _, c in outcomes)
        return [r for r, _ in outcomes], code
    if not args.file:
        raise CliError(EXIT_PARSE, "verify needs a FILE or --batch DIR")
    rep, ok = _verify_one(args.file, args.tol)
    return rep, EXIT_OK if ok else EXIT_VIOLATION


def _bound(r: bnd.BoundReport, tol):
    return {
        "name": r.name,
        "bound": r.bound,
        "target": r.target_name,
        "target_value": r.target,
        "slack": r.slack,
        "strict": r.strict,
        "applicable": r.applicable,
        "satisfied": r.satisfied(tol),
        "details": r.details,
        **({"notes": r.notes} if r.notes else {}),
    }


def cmd_bounds(args):
    g, bg = load(args.file, need_boundary=True)
    tol = args.tol
    results = {}
    reports = []
    if g.is_unit_weight():
        reports += list(bnd.fiedler_bounds(bg))
        for i in args.index or []:
            try:
                reports.append(bnd.friedman_bound(bg, i))
            except bnd.IndexOutOfRange as exc:
                raise CliError(EXIT_PARSE, str(exc)) from exc
    else:
        results["note"] = "Fiedler and Friedman bounds need unit weights; skipped"
    reports.append(bnd.lichnerowicz_ollivier_check(bg))
    results["bounds"] = [_bound(r, tol) for r in reports]
    if args.cd:
        K, n = args.cd
        try:
            results["lichnerowicz_cd"] = {"K": K, "n": n, "bound": bnd.lichnerowicz_cd_bound(K, n)}
        except bnd.InvalidParameters as exc:
            raise CliError(EXIT_PARSE, str(exc)) from exc
    ok = all(r.satisfied(tol) for r in reports)
    lo = reports[-1]
    if lo.applicable and not math.isnan(lo.details["mu_2"]):
        ok = ok and lo.details["mu_2_slack"] >= -tol * (1 + abs(lo.details["mu_2"]))
    results["all_satisfied"] = ok
    rep = envelope("bounds", args.file, g, {"slack": tol}, results,
                   {"index": args.index or [], "cd": args.cd})
    return rep, EXIT_OK if ok else EXIT_VIOLATION


def cmd_curvature(args):
    g, _ = load(args.file)
    pairs = ollivier_adjacent(g) if args.pairs == "adjacent" else ollivier_all_pairs(g)
    rows = [
        {"x": g.labels[p.x], "y": g.labels[p.y], "distance": int(g.distances[p.x, p.y]), "kappa": p.kappa}
        for p in pairs
    ]
    results = {"pairs": rows, "min_kappa": min(r["kappa"] for r in rows) if rows else None}
    return envelope("curvature", args.file, g, {}, results, {"pairs": args.pairs}), EXIT_OK


def build_family(args):
    fam = args.family
    if fam == "star":
        bg = gen_star(args.degree, args.arm, args.boundary or "endpoints")
        return bg.graph, list(bg.boundary_labels)
    if fam == "random":
        rng = np.random.default_rng(args.seed)
        g = random_graph(args.n, args.p, rng, unit=args.unit)
        return g, [g.labels[i] for i in random_boundary(g, rng, 2)]
    if fam == "path":
        g = gen_path(args.n)
    elif fam == "cycle":
        g = gen_cycle(args.n)
    elif fam == "complete":
        g = gen_complete(args.n)
    else:
        g = gen_comb(args.teeth, args.tooth_length)
    if args.boundary:
        boundary = args.boundary.split(",")
        BoundaryGraph(g, boundary)  # validate
        return g, boundary
    return g, None


def cmd_gen(args):
    try:
        g, boundary = build_family(args)
    except (BoundaryError, UnknownVertex) as exc:
        raise CliError(EXIT_BOUNDARY, str(exc)) from exc
    except (GraphError, ValueError) as exc:
        raise CliError(EXIT_PARSE, str(exc)) from exc
    text = format_graph(g, boundary)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        return None, EXIT_OK
    return text, EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="graphsteklov", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectra", help="Laplacian, Steklov, Dirichlet spectra and the DtN matrix")
    s.add_argument("file")
    s.add_argument("--steklov", action="store_true")
    s.add_argument("--dtn", action="store_true")
    s.add_argument("--dirichlet", nargs="+", metavar="LABEL", help="vertices with a zero condition")
    s.set_defaults(func=cmd_spectra)

    s = sub.add_parser("verify", help="check the eigenvalue comparison and its rigidity")
    s.add_argument("file", nargs="?")
    s.add_argument("--batch", metavar="DIR")
    s.add_argument("--jobs", type=int, default=4)
    s.add_argument("--tol", type=float, default=cmp.DEFAULT_TOL)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("bounds", help="evaluate lower bounds for Steklov eigenvalues")
    s.add_argument("file")
    s.add_argument("--index", type=int, action="append", help="Friedman index i (repeatable)")
    s.add_argument("--cd", type=float, nargs=2, metavar=("K", "N"), help="evaluate nK/(n-1)")
    s.add_argument("--tol", type=float, default=bnd.DEFAULT_TOL)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("curvature", help="Ollivier curvature by linear programming")
    s.add_argument("file")
    s.add_argument("--pairs", choices=("adjacent", "all"), default="adjacent")
    s.set_defaults(func=cmd_curvature)

    s = sub.add_parser("gen", help="write a graph from a named family")
    s.add_argument("family", choices=FAMILIES)
    s.add_argument("--n", type=int, default=4)
    s.add_argument("--degree", type=int, default=3)
    s.add_argument("--arm", type=int, default=1)
    s.add_argument("--teeth", type=int, default=2)
    s.add_argument("--tooth-length", type=int, default=1)
    s.add_argument("--boundary", help="star: endpoints|center|arms; others: comma-separated labels")
    s.add_argument("--p", type=float, default=0.3)
    s.add_argument("--unit", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        out, code = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (NumericalError, LpFailure) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if out is not None:
        sys.stdout.write(out if isinstance(out, str) else dumps(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
