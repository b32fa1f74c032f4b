from __future__ import annotations

from dataclasses import replace

from ghash.core.logging import get_logger
from ghash.core.rng import RNG
from ghash.features.graph_model.service import apply_permutation, from_pairs
from ghash.features.graph_model.types import LABEL_MAX, Edge, Graph, LabelOverflow
from ghash.features.generators.types import (
    DEFAULT_REGULAR_MAX_RETRIES,
    InfeasibleDegree,
    RandomGraphSpec,
    RetryExhausted,
)

logger = get_logger(__name__)


def random_graph(spec: RandomGraphSpec, seed: int) -> Graph:
    """
    Uniform endpoints, uniform labels in [0, max], directed with probability
    directed_fraction. Each concern draws from its own stream.
    """
    endpoints = RNG(seed, "endpoints")
    vertex_labels = RNG(seed, "vertex_labels")
    edge_labels = RNG(seed, "edge_labels")
    direction = RNG(seed, "direction")

    n = spec.n_vertices
    labels = [
        vertex_labels.randint(0, spec.vertex_label_max) if spec.vertex_label_max >= 0 else None
        for _ in range(n)
    ]

    edges: list[Edge] = []
    for _ in range(spec.n_edges):
        source = endpoints.randint(0, n - 1)
        target = endpoints.randint(0, n - 1)
        label = edge_labels.randint(0, spec.edge_label_max) if spec.edge_label_max >= 0 else None
        directed = direction.random() < spec.directed_fraction
        edges.append(Edge(source=source, target=target, label=label, directed=directed))

    return Graph.build(labels, edges)


def shift_all_labels(g: Graph) -> Graph:
    """Add (max label over vertices and edges) + 1 to every present label."""
    top = g.max_label()
    if top is None:
        return g
    shift = top + 1
    if top + shift > LABEL_MAX:
        raise LabelOverflow(f"shifting labels by {shift} would exceed 2^32 - 1")

    labels = [None if lab is None else lab + shift for lab in g.labels]
    edges = [e if e.label is None else replace(e, label=e.label + shift) for e in g.edges]
    return Graph.build(labels, edges)


def isomorphic_copy(g: Graph, seed: int, shift_labels: bool = False) -> tuple[Graph, list[int]]:
    """Seeded random relabelling of g's vertices; optionally shift every label."""
    perm = RNG(seed, "permutation").permutation(g.n_vertices)
    copy = apply_permutation(g, perm)
    if shift_labels:
        copy = shift_all_labels(copy)
    return copy, perm


def _config_model_edges(n: int, k: int, rng: RNG) -> list[tuple[int, int]] | None:
    """One configuration-model draw; None if it produced a self-loop or parallel edge."""
    stubs = [v for v in range(n) for _ in range(k)]
    rng.shuffle(stubs)

    seen: set[tuple[int, int]] = set()
    for i in range(0, len(stubs), 2):
        a, b = stubs[i], stubs[i + 1]
        if a == b:
            return None
        pair = (a, b) if a < b else (b, a)
        if pair in seen:
            return None
        seen.add(pair)
    return sorted(seen)


def random_regular_graph(
    n: int, k: int, rng: RNG, max_retries: int = DEFAULT_REGULAR_MAX_RETRIES
) -> Graph:
    if n < 1 or k < 0 or k >= n or (n * k) % 2 != 0:
        raise InfeasibleDegree(
            f"no simple {k}-regular graph on {n} vertices (need 0 <= k < n and n*k even)"
        )

    for attempt in range(1, max_retries + 1):
        pairs = _config_model_edges(n, k, rng)
        if pairs is not None:
            logger.debug("regular_sampled", extra={"n": n, "k": k, "attempts": attempt})
            return from_pairs(n, pairs)

    logger.warning("regular_rejected", extra={"n": n, "k": k, "attempts": max_retries})
    raise RetryExhausted(
        f"configuration model found no simple {k}-regular graph on {n} vertices "
        f"in {max_retries} attempts"
    )


def random_regular_pair(
    n: int, k: int, seed: int, max_retries: int = DEFAULT_REGULAR_MAX_RETRIES
) -> tuple[Graph, Graph]:
    """Two independent simple k-regular graphs on n vertices; by chance isomorphic or not."""
    rng = RNG(seed, "regular")
    first = random_regular_graph(n, k, rng, max_retries)
    second = random_regular_graph(n, k, rng, max_retries)
    return first, second
