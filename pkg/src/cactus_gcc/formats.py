"""Edge-list and JSON graph formats.

Edge list: first line ``n m``, then ``m`` lines ``u v`` (0-based); blank lines
and ``#`` comments are ignored. JSON: ``{"n": int, "edges": [[u, v], ...]}``.
A JSON document may omit ``n`` and use arbitrary hashable labels; those are
remapped to 0..n-1 in sorted order and the mapping is returned alongside.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .graph import Graph, GraphError


class ParseError(GraphError):
    pass


def parse_edge_list(text: str) -> Graph:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise ParseError("empty edge list")
    try:
        header = [int(x) for x in rows[0]]
        body = [tuple(int(x) for x in r) for r in rows[1:]]
    except ValueError as exc:
        raise ParseError(f"non-integer token: {exc}") from None
    if len(header) != 2:
        raise ParseError("header must be 'n m'")
    n, m = header
    if n < 0 or m < 0:
        raise ParseError("negative header value")
    if len(body) != m:
        raise ParseError(f"header announces {m} edges, found {len(body)}")
    for r in body:
        if len(r) != 2:
            raise ParseError(f"edge line must have two endpoints: {r}")
    return Graph.from_edges(n, body)


def parse_json_graph(text: str) -> tuple[Graph, list]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "edges" not in doc:
        raise ParseError('JSON graph must be an object with an "edges" list')
    edges = [tuple(e) for e in doc["edges"]]
    if any(len(e) != 2 for e in edges):
        raise ParseError("every edge must have two endpoints")
    if "n" in doc:
        n = doc["n"]
        if not isinstance(n, int):
            raise ParseError('"n" must be an integer')
        return Graph.from_edges(n, edges), list(range(n))
    labels = sorted({v for e in edges for v in e}, key=lambda x: (str(type(x)), x))
    index = {v: i for i, v in enumerate(labels)}
    return Graph.from_edges(len(labels), [(index[u], index[v]) for u, v in edges]), labels


def parse_graph(text: str) -> tuple[Graph, list]:
    """Auto-detect the format by the first non-blank byte. Returns (graph, labels)."""
    stripped = text.lstrip()
    if not stripped:
        raise ParseError("empty input")
    if stripped[0] == "{":
        return parse_json_graph(text)
    g = parse_edge_list(text)
    return g, list(range(g.n))


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def graph_to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    if not isinstance(s, str):
        raise ParseError(f"rational must be a 'p/q' string, got {s!r}")
    return Fraction(s)
