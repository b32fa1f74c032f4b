from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import replace
from pathlib import Path
from typing import Any

from ghash.features.graph_model.types import (
    DuplicateVertexId,
    Edge,
    Graph,
    MalformedInput,
    NotABijection,
    check_label,
)

Permutation = Sequence[int]


# ----------------------------------------------------------------------
# Canonical text format
# ----------------------------------------------------------------------
def parse_graph(text: str) -> Graph:
    """
    Parse the canonical JSON graph format:

      {"vertices":[{"id":0,"label":1},...],
       "edges":[{"source":0,"target":1,"label":7,"directed":true},...]}

    Vertices may be listed in any order but ids must be exactly 0..n-1.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInput(f"not valid JSON: {e.msg} (line {e.lineno}, col {e.colno})") from e

    if not isinstance(data, dict):
        raise MalformedInput("graph must be a JSON object with 'vertices' and 'edges'")
    unknown = sorted(set(data) - {"vertices", "edges"})
    if unknown:
        raise MalformedInput(f"unknown top-level keys {unknown}")

    vertices_raw = data.get("vertices", [])
    edges_raw = data.get("edges", [])
    if not isinstance(vertices_raw, list):
        raise MalformedInput("'vertices' must be an array")
    if not isinstance(edges_raw, list):
        raise MalformedInput("'edges' must be an array")

    labels_by_id: dict[int, int | None] = {}
    for idx, item in enumerate(vertices_raw):
        where = f"vertices[{idx}]"
        _check_keys(item, where, required={"id"}, optional={"label"})
        vid = _int_field(item, "id", where)
        if vid in labels_by_id:
            raise DuplicateVertexId(f"{where} repeats vertex id {vid}")
        labels_by_id[vid] = check_label(item.get("label"), where)

    n = len(labels_by_id)
    missing = [i for i in range(n) if i not in labels_by_id]
    if missing:
        raise MalformedInput(f"vertex ids must be dense 0..{n - 1}; missing {missing[:5]}")

    edges: list[Edge] = []
    for idx, item in enumerate(edges_raw):
        where = f"edges[{idx}]"
        _check_keys(item, where, required={"source", "target"}, optional={"label", "directed"})
        directed = item.get("directed", False)
        if not isinstance(directed, bool):
            raise MalformedInput(f"{where}.directed must be true/false")
        edges.append(
            Edge(
                source=_int_field(item, "source", where),
                target=_int_field(item, "target", where),
                label=check_label(item.get("label"), where),
                directed=directed,
            )
        )

    # Graph.build raises DanglingEndpoint for out-of-range endpoints
    return Graph.build((labels_by_id[i] for i in range(n)), edges)


def serialize_graph(g: Graph) -> str:
    """Normalized text: fixed key order, no whitespace, absent labels omitted."""
    vertices: list[dict[str, Any]] = []
    for vid, label in enumerate(g.labels):
        v: dict[str, Any] = {"id": vid}
        if label is not None:
            v["label"] = label
        vertices.append(v)

    edges: list[dict[str, Any]] = []
    for e in g.edges:
        d: dict[str, Any] = {"source": e.source, "target": e.target}
        if e.label is not None:
            d["label"] = e.label
        d["directed"] = e.directed
        edges.append(d)

    return json.dumps({"vertices": vertices, "edges": edges}, separators=(",", ":"))


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(g: Graph, path: str | Path) -> None:
    p = Path(path)
    if p.parent and not p.parent.exists():
        p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(serialize_graph(g) + "\n", encoding="utf-8")


def _check_keys(item: Any, where: str, *, required: set[str], optional: set[str]) -> None:
    if not isinstance(item, dict):
        raise MalformedInput(f"{where} must be an object")
    missing = sorted(required - set(item))
    if missing:
        raise MalformedInput(f"{where} is missing required keys {missing}")
    unknown = sorted(set(item) - required - optional)
    if unknown:
        raise MalformedInput(f"{where} has unknown keys {unknown}")


def _int_field(item: dict[str, Any], key: str, where: str) -> int:
    value = item[key]
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise MalformedInput(f"{where}.{key} must be a non-negative integer, got {value!r}")
    return value


# ----------------------------------------------------------------------
# Structural utilities
# ----------------------------------------------------------------------
def check_permutation(perm: Permutation, n: int) -> list[int]:
    p = list(perm)
    if len(p) != n or sorted(p) != list(range(n)):
        raise NotABijection(f"permutation must be a bijection on 0..{n - 1}, got {p}")
    return p


def compose(q: Permutation, p: Permutation) -> list[int]:
    """q after p: i -> q[p[i]]."""
    return [q[x] for x in p]


def invert(perm: Permutation) -> list[int]:
    inv = [0] * len(perm)
    for i, x in enumerate(perm):
        inv[x] = i
    return inv


def apply_permutation(g: Graph, perm: Permutation) -> Graph:
    """Rename vertex i to perm[i]; edge order, labels and directedness are kept."""
    p = check_permutation(perm, g.n_vertices)
    inv = invert(p)
    labels = [g.labels[inv[i]] for i in range(g.n_vertices)]
    edges = [replace(e, source=p[e.source], target=p[e.target]) for e in g.edges]
    return Graph.build(labels, edges)


def disjoint_union(g: Graph, h: Graph) -> tuple[Graph, int]:
    offset = g.n_vertices
    edges = list(g.edges)
    edges.extend(replace(e, source=e.source + offset, target=e.target + offset) for e in h.edges)
    return Graph.build(g.labels + h.labels, edges), offset


# ----------------------------------------------------------------------
# Small constructors
# ----------------------------------------------------------------------
def from_pairs(n: int, pairs: Sequence[tuple[int, int]], *, directed: bool = False) -> Graph:
    """Unlabeled graph on n vertices with one edge per (source, target) pair."""
    return Graph.build([None] * n, [Edge(s, t, None, directed) for s, t in pairs])


def path_graph(n: int) -> Graph:
    return from_pairs(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return from_pairs(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> Graph:
    return from_pairs(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
