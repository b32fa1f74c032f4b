from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import IntEnum

from ghash.core.errors import GraphHashError

LABEL_MAX = 2**32 - 1

# Absent ("null") label is None.
Label = int | None
VertexId = int


class MalformedInput(GraphHashError, ValueError):
    pass


class DanglingEndpoint(GraphHashError, ValueError):
    pass


class DuplicateVertexId(GraphHashError, ValueError):
    pass


class NotABijection(GraphHashError, ValueError):
    pass


class LabelOverflow(GraphHashError, ValueError):
    pass


class Direction(IntEnum):
    """Edge direction as seen from one endpoint; values are the hash-input markers."""

    BACKWARD = 0
    FORWARD = 1
    UNDIRECTED = 2


def check_label(label: object, where: str) -> Label:
    if label is None:
        return None
    if isinstance(label, bool) or not isinstance(label, int):
        raise MalformedInput(f"{where} label must be an integer or absent, got {label!r}")
    if not (0 <= label <= LABEL_MAX):
        raise LabelOverflow(f"{where} label must be in [0, 2^32 - 1], got {label}")
    return label


@dataclass(frozen=True, slots=True)
class Edge:
    source: VertexId
    target: VertexId
    label: Label = None
    directed: bool = False

    @property
    def is_self_loop(self) -> bool:
        return self.source == self.target

    def far_end(self, v: VertexId) -> VertexId:
        # for undirected edges source and target are synonymous
        return self.target if self.source == v else self.source

    def direction_from(self, v: VertexId) -> Direction:
        if not self.directed:
            return Direction.UNDIRECTED
        return Direction.FORWARD if self.source == v else Direction.BACKWARD


@dataclass(frozen=True)
class Graph:
    """
    Immutable multigraph with dense vertex ids 0..n-1.

    incidence[v] lists the indices of edges touching v in edge order; a self-loop
    is listed once.
    """

    labels: tuple[Label, ...]
    edges: tuple[Edge, ...]
    incidence: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)

    @classmethod
    def build(cls, labels: Iterable[Label], edges: Iterable[Edge]) -> Graph:
        labels_t = tuple(check_label(lab, f"vertex {i}") for i, lab in enumerate(labels))
        edges_t = tuple(edges)
        n = len(labels_t)

        for idx, e in enumerate(edges_t):
            if not (0 <= e.source < n) or not (0 <= e.target < n):
                raise DanglingEndpoint(
                    f"edges[{idx}] references missing vertex ({e.source} -> {e.target}); "
                    f"graph has {n} vertices"
                )
            check_label(e.label, f"edges[{idx}]")

        return cls(labels=labels_t, edges=edges_t, incidence=build_incidence(n, edges_t))

    @classmethod
    def empty(cls) -> Graph:
        return cls.build((), ())

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(len(self.labels))

    def degree(self, v: VertexId) -> int:
        return len(self.incidence[v])

    def neighbors(self, v: VertexId) -> list[VertexId]:
        """Far endpoints of every incident edge, direction ignored, multiplicity kept."""
        return [self.edges[i].far_end(v) for i in self.incidence[v]]

    def max_label(self) -> int | None:
        present = [lab for lab in self.labels if lab is not None]
        present.extend(e.label for e in self.edges if e.label is not None)
        return max(present) if present else None


def build_incidence(n: int, edges: Sequence[Edge]) -> tuple[tuple[int, ...], ...]:
    inc: list[list[int]] = [[] for _ in range(n)]
    for idx, e in enumerate(edges):
        inc[e.source].append(idx)
        if e.target != e.source:
            inc[e.target].append(idx)
    return tuple(tuple(x) for x in inc)
