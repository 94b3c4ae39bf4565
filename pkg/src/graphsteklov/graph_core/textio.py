"""Line-oriented graph text format.

::

    # comment
    vertex <label> <measure>
    edge <labelA> <labelB> <weight>
    boundary <label> [<label> ...]

Fields are whitespace separated; ``boundary`` lines accumulate.
"""

import math
from typing import List, Optional, Tuple

from graphsteklov.graph_core.graph import BoundaryGraph, GraphError, WeightedGraph


class ParseError(GraphError):
    def __init__(self, message, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _number(tok: str, lineno: int) -> float:
    try:
        x = float(tok)
    except ValueError:
        raise ParseError(f"not a number: {tok!r}", lineno) from None
    if not math.isfinite(x):
        raise ParseError(f"non-finite value {tok!r}", lineno)
    return x


def parse_graph(text: str) -> Tuple[WeightedGraph, Optional[List[str]]]:
    """Parse the text format; returns the graph and the boundary labels (None if no boundary line)."""
    labels, measures, edges, weights = [], [], [], []
    index = {}
    boundary = None
    edge_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        kind = tok[0]
        if kind == "vertex":
            if len(tok) != 3:
                raise ParseError("expected: vertex <label> <measure>", lineno)
            if tok[1] in index:
                raise ParseError(f"vertex {tok[1]!r} declared twice", lineno)
            index[tok[1]] = len(labels)
            labels.append(tok[1])
            measures.append(_number(tok[2], lineno))
        elif kind == "edge":
            if len(tok) != 4:
                raise ParseError("expected: edge <labelA> <labelB> <weight>", lineno)
            edge_lines.append((lineno, tok[1], tok[2], _number(tok[3], lineno)))
        elif kind == "boundary":
            if len(tok) < 2:
                raise ParseError("boundary line lists no vertices", lineno)
            boundary = (boundary or []) + tok[1:]
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)

    for lineno, a, b, w in edge_lines:
        for lab in (a, b):
            if lab not in index:
                raise ParseError(f"edge references undeclared vertex {lab!r}", lineno)
        edges.append((index[a], index[b]))
        weights.append(w)
    if not labels:
        raise ParseError("no vertices declared")
    try:
        g = WeightedGraph(labels, measures, edges, weights)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc
    if boundary is not None:
        for lab in boundary:
            if lab not in index:
                raise ParseError(f"boundary references undeclared vertex {lab!r}")
    return g, boundary


def read_graph(path) -> Tuple[WeightedGraph, Optional[List[str]]]:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def format_graph(g, boundary=None) -> str:
    """Serialise ``g`` (WeightedGraph or BoundaryGraph); vertices then edges in index order."""
    if isinstance(g, BoundaryGraph):
        boundary = g.boundary_labels if boundary is None else boundary
        g = g.graph
    lines = [f"vertex {lab} {_fmt(m)}" for lab, m in zip(g.labels, g.measures)]
    lines += [
        f"edge {g.labels[u]} {g.labels[v]} {_fmt(w)}" for (u, v), w in zip(g.edges, g.weights)
    ]
    if boundary:
        lines.append("boundary " + " ".join(str(b) for b in boundary))
    return "\n".join(lines) + "\n"


def write_graph(path, g, boundary=None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_graph(g, boundary))
