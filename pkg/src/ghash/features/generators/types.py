from __future__ import annotations

from dataclasses import dataclass

from ghash.core.errors import GraphHashError

DEFAULT_REGULAR_MAX_RETRIES = 10_000


class InfeasibleDegree(GraphHashError, ValueError):
    pass


class RetryExhausted(GraphHashError, RuntimeError):
    pass


@dataclass(frozen=True)
class RandomGraphSpec:
    """
    Random multigraph recipe. Endpoints are drawn independently, so self-loops and
    parallel edges occur and any n_edges >= 0 is valid.

    A negative label max means that kind of label is absent.
    """

    n_vertices: int
    n_edges: int
    vertex_label_max: int = 9
    edge_label_max: int = 9
    directed_fraction: float = 1.0

    def __post_init__(self) -> None:
        if self.n_vertices < 0:
            raise ValueError("RandomGraphSpec.n_vertices must be >= 0")
        if self.n_edges < 0:
            raise ValueError("RandomGraphSpec.n_edges must be >= 0")
        if self.n_vertices == 0 and self.n_edges > 0:
            raise ValueError("RandomGraphSpec needs vertices to place edges on")
        if not (0.0 <= self.directed_fraction <= 1.0):
            raise ValueError("RandomGraphSpec.directed_fraction must be in [0, 1]")
