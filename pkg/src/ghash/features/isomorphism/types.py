from __future__ import annotations

from dataclasses import dataclass, field

from ghash.core.errors import GraphHashError
from ghash.features.graph_model.types import VertexId

DEFAULT_ORACLE_MAX_VERTICES = 9


class SizeMismatch(GraphHashError, ValueError):
    pass


class TooLarge(GraphHashError, ValueError):
    pass


@dataclass(frozen=True)
class SearchStats:
    # attempted (g-vertex, h-vertex) assignments, failed ones included
    combinations: int = 0
    # assignments that passed the consistency check
    nodes_expanded: int = 0
    elapsed_ms: float = field(default=0.0, compare=False)


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    # mapping[u] is the h-vertex g's vertex u maps to
    mapping: tuple[VertexId, ...] | None
    stats: SearchStats

    @property
    def verdict(self) -> str:
        return "isomorphic" if self.isomorphic else "non-isomorphic"
