from __future__ import annotations

from dataclasses import dataclass, field

from ghash.core.errors import GraphHashError
from ghash.features.digest.service import Digest128
from ghash.features.graph_model.types import Direction, Label, VertexId

DEFAULT_MAX_NODES = 10_000_000


class BudgetExceeded(GraphHashError, RuntimeError):
    pass


@dataclass(frozen=True)
class CoderBudget:
    # CoderNode creations permitted per vertex_hash call
    max_nodes: int = DEFAULT_MAX_NODES

    def __post_init__(self) -> None:
        if self.max_nodes < 1:
            raise ValueError("CoderBudget.max_nodes must be >= 1")


@dataclass(slots=True)
class CoderNode:
    """
    One node of the unrolled tree.

    branch holds the ancestor vertices from the root vertex downward; a node whose
    vertex is already on its branch is a terminal and never gets children.
    """

    vertex: VertexId
    branch: tuple[VertexId, ...]
    children: list[ChildLink] = field(default_factory=list)
    code: Digest128 = b""
    cursor: int = 0


@dataclass(slots=True)
class ChildLink:
    edge_label: Label
    direction: Direction
    child: CoderNode


@dataclass(frozen=True)
class CoderStats:
    nodes_created: int
    peak_live: int


@dataclass(frozen=True)
class VertexClass:
    """Vertices sharing one vertex digest."""

    digest: Digest128
    vertices: tuple[VertexId, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)
