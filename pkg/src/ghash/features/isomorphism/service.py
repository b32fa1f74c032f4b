from __future__ import annotations

import itertools
import time
from collections import Counter
from collections.abc import Callable, Iterator, Sequence

from ghash.core.logging import get_logger
from ghash.features.digest.service import Digest128
from ghash.features.graph_model.service import check_permutation
from ghash.features.graph_model.types import Edge, Graph, Label, VertexId
from ghash.features.isomorphism.types import (
    DEFAULT_ORACLE_MAX_VERTICES,
    IsoResult,
    SearchStats,
    SizeMismatch,
    TooLarge,
)
from ghash.features.vertex_coder.service import VertexCoder
from ghash.features.vertex_coder.types import CoderBudget

logger = get_logger(__name__)

# (direction seen from the first vertex, edge label or None)
EdgeSig = tuple[int, Label]
# far vertex -> sorted multiset of edge signatures between the two
Adjacency = list[dict[VertexId, tuple[EdgeSig, ...]]]


def _edge_key(e: Edge, source: VertexId, target: VertexId, respect_labels: bool) -> tuple:
    label = e.label if respect_labels else None
    if e.directed:
        return (source, target, True, label)
    a, b = (source, target) if source <= target else (target, source)
    return (a, b, False, label)


def _edge_multiset(g: Graph, respect_labels: bool, perm: Sequence[int] | None = None) -> Counter:
    if perm is None:
        return Counter(_edge_key(e, e.source, e.target, respect_labels) for e in g.edges)
    return Counter(_edge_key(e, perm[e.source], perm[e.target], respect_labels) for e in g.edges)


def check_mapping(g: Graph, h: Graph, m: Sequence[int], respect_labels: bool = False) -> bool:
    """
    True iff m maps g onto h: for every ordered vertex pair the multiset of
    (direction, label-if-respected) of connecting edges agrees, and with
    respect_labels the vertex labels agree pointwise.
    """
    if g.n_vertices != h.n_vertices:
        raise SizeMismatch(f"graphs differ in size: {g.n_vertices} vs {h.n_vertices} vertices")
    p = check_permutation(m, g.n_vertices)

    if g.n_edges != h.n_edges:
        return False
    if respect_labels and any(g.labels[u] != h.labels[p[u]] for u in g.vertices()):
        return False
    return _edge_multiset(g, respect_labels, p) == _edge_multiset(h, respect_labels)


# ----------------------------------------------------------------------
# Exhaustive oracle
# ----------------------------------------------------------------------
def oracle_isomorphic(
    g: Graph,
    h: Graph,
    respect_labels: bool = False,
    *,
    max_vertices: int = DEFAULT_ORACLE_MAX_VERTICES,
) -> IsoResult:
    """Ground truth: try every bijection. Refuses graphs above max_vertices."""
    if g.n_vertices > max_vertices or h.n_vertices > max_vertices:
        raise TooLarge(
            f"oracle handles at most {max_vertices} vertices, got "
            f"{g.n_vertices} and {h.n_vertices}"
        )

    t0 = time.perf_counter()
    if g.n_vertices != h.n_vertices:
        return IsoResult(False, None, SearchStats(elapsed_ms=_ms_since(t0)))

    target = _edge_multiset(h, respect_labels)
    combinations = 0
    found: tuple[int, ...] | None = None
    for perm in itertools.permutations(range(h.n_vertices)):
        combinations += 1
        if respect_labels and any(g.labels[u] != h.labels[x] for u, x in enumerate(perm)):
            continue
        if _edge_multiset(g, respect_labels, perm) == target:
            found = perm
            break

    stats = SearchStats(
        combinations=combinations,
        nodes_expanded=combinations,
        elapsed_ms=_ms_since(t0),
    )
    return IsoResult(found is not None, found, stats)


def automorphisms(g: Graph, respect_labels: bool = False) -> Iterator[tuple[int, ...]]:
    """Every automorphism of g, by exhaustive enumeration (oracle-sized graphs only)."""
    if g.n_vertices > DEFAULT_ORACLE_MAX_VERTICES:
        raise TooLarge(f"automorphism enumeration handles at most {DEFAULT_ORACLE_MAX_VERTICES} vertices")
    target = _edge_multiset(g, respect_labels)
    for perm in itertools.permutations(range(g.n_vertices)):
        if respect_labels and any(g.labels[u] != g.labels[x] for u, x in enumerate(perm)):
            continue
        if _edge_multiset(g, respect_labels, perm) == target:
            yield perm


# ----------------------------------------------------------------------
# Backtracking
# ----------------------------------------------------------------------
def _adjacency(g: Graph, respect_labels: bool) -> Adjacency:
    acc: list[dict[VertexId, list[EdgeSig]]] = [{} for _ in g.vertices()]
    for e in g.edges:
        label = e.label if respect_labels else None
        acc[e.source].setdefault(e.target, []).append((int(e.direction_from(e.source)), label))
        if not e.is_self_loop:
            acc[e.target].setdefault(e.source, []).append((int(e.direction_from(e.target)), label))
    return [{w: tuple(sorted(sigs, key=_sig_order)) for w, sigs in row.items()} for row in acc]


def _sig_order(sig: EdgeSig) -> tuple[int, int, int]:
    direction, label = sig
    return (direction, 0 if label is None else 1, label or 0)


class Backtracker:
    """
    Depth-first assignment of g's vertices (ascending id) to unused h vertices.

    An assignment u -> x is kept only if, for every already-mapped vertex w (and u
    itself, for self-loops), the edges between u and w agree with those between x and
    m(w), and x has no edges to mapped h-vertices that u lacks.
    """

    def __init__(
        self,
        g: Graph,
        h: Graph,
        *,
        respect_labels: bool,
        candidates: Callable[[VertexId], Sequence[VertexId]],
    ) -> None:
        self.g = g
        self.h = h
        self.respect_labels = respect_labels
        self.candidates = candidates
        self._g_adj = _adjacency(g, respect_labels)
        self._h_adj = _adjacency(h, respect_labels)
        self.combinations = 0
        self.nodes_expanded = 0

    def _consistent(self, u: VertexId, x: VertexId, mapping: list[int], inverse: list[int]) -> bool:
        if self.respect_labels and self.g.labels[u] != self.h.labels[x]:
            return False

        hx = self._h_adj[x]
        matched = 0
        for w, sigs in self._g_adj[u].items():
            img = x if w == u else mapping[w]
            if img < 0:
                continue
            if hx.get(img) != sigs:
                return False
            matched += 1

        mapped_h = sum(1 for y in hx if y == x or inverse[y] >= 0)
        return matched == mapped_h

    def search(self) -> tuple[VertexId, ...] | None:
        n = self.g.n_vertices
        if n == 0:
            return ()

        mapping = [-1] * n
        inverse = [-1] * n
        pending: list[Iterator[VertexId]] = [iter(())] * n
        pending[0] = iter(self.candidates(0))
        depth = 0

        while depth >= 0:
            u = depth
            if mapping[u] >= 0:
                inverse[mapping[u]] = -1
                mapping[u] = -1

            placed = False
            for x in pending[u]:
                if inverse[x] >= 0:
                    continue
                self.combinations += 1
                if self._consistent(u, x, mapping, inverse):
                    mapping[u] = x
                    inverse[x] = u
                    self.nodes_expanded += 1
                    placed = True
                    break

            if not placed:
                depth -= 1
                continue
            if depth == n - 1:
                return tuple(mapping)
            depth += 1
            pending[depth] = iter(self.candidates(depth))

        return None


def _run_backtracker(bt: Backtracker, t0: float, method: str) -> IsoResult:
    mapping = bt.search()
    if mapping is not None and not check_mapping(bt.g, bt.h, mapping, bt.respect_labels):
        raise RuntimeError(f"{method} search produced a mapping that fails check_mapping")

    stats = SearchStats(
        combinations=bt.combinations,
        nodes_expanded=bt.nodes_expanded,
        elapsed_ms=_ms_since(t0),
    )
    logger.debug(
        "iso_search",
        extra={
            "method": method,
            "n_vertices": bt.g.n_vertices,
            "isomorphic": mapping is not None,
            "combinations": stats.combinations,
            "elapsed_ms": stats.elapsed_ms,
        },
    )
    return IsoResult(mapping is not None, mapping, stats)


def brute_force_isomorphic(g: Graph, h: Graph, respect_labels: bool = False) -> IsoResult:
    t0 = time.perf_counter()
    if g.n_vertices != h.n_vertices:
        return IsoResult(False, None, SearchStats(elapsed_ms=_ms_since(t0)))

    all_h = range(h.n_vertices)
    bt = Backtracker(g, h, respect_labels=respect_labels, candidates=lambda _u: all_h)
    return _run_backtracker(bt, t0, "brute")


def hash_partitioned_isomorphic(
    g: Graph,
    h: Graph,
    hash_labels: bool = False,
    budget: CoderBudget | None = None,
) -> IsoResult:
    """
    Backtracking restricted to equal vertex digests. Labels are matched exactly
    iff hash_labels is set.
    """
    t0 = time.perf_counter()
    if g.n_vertices != h.n_vertices:
        return IsoResult(False, None, SearchStats(elapsed_ms=_ms_since(t0)))

    g_codes = VertexCoder(g, hash_labels=hash_labels, budget=budget).vertex_codes()
    h_codes = VertexCoder(h, hash_labels=hash_labels, budget=budget).vertex_codes()

    # equal (class digest, class size) multisets <=> equal code multisets
    if Counter(g_codes) != Counter(h_codes):
        return IsoResult(False, None, SearchStats(elapsed_ms=_ms_since(t0)))

    by_code: dict[Digest128, list[VertexId]] = {}
    for x, code in enumerate(h_codes):
        by_code.setdefault(code, []).append(x)

    bt = Backtracker(
        g, h, respect_labels=hash_labels, candidates=lambda u: by_code[g_codes[u]]
    )
    return _run_backtracker(bt, t0, "hashed")


def _ms_since(t0: float) -> float:
    return (time.perf_counter() - t0) * 1000.0

