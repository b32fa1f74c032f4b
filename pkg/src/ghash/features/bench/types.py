from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any, Literal, Protocol

import pandas as pd

BenchMethod = Literal["brute", "hashed"]

# default benchmark rows: vertices x edges
DEFAULT_ROWS: tuple[tuple[int, int], ...] = ((5, 5), (5, 10), (10, 10), (10, 20), (15, 15))
METHODS: tuple[BenchMethod, ...] = ("brute", "hashed")
METHOD_TITLES: dict[str, str] = {"brute": "Brute force", "hashed": "Hashed"}

CSV_COLUMNS: list[str] = ["n_vertices", "n_edges", "method", "trial", "combinations", "isomorphic"]


@dataclass(frozen=True)
class BenchConfig:
    """
    One benchmark run: for each (n_vertices, n_edges) row, trials_per_row random
    graphs are paired with a planted isomorphic copy and every method searches for
    the isomorphism. Matching is structure-only.
    """

    rows: tuple[tuple[int, int], ...] = DEFAULT_ROWS
    trials_per_row: int = 50
    seed: int = 7
    methods: tuple[BenchMethod, ...] = METHODS
    vertex_label_max: int = 9
    edge_label_max: int = 9
    directed_fraction: float = 1.0
    shift_labels: bool = True

    def __post_init__(self) -> None:
        if not self.rows:
            raise ValueError("bench.rows must not be empty")
        for n_vertices, n_edges in self.rows:
            if n_vertices < 1 or n_edges < 0:
                raise ValueError(
                    f"bench row {n_vertices}x{n_edges} needs n_vertices >= 1 and n_edges >= 0"
                )
        if self.trials_per_row < 1:
            raise ValueError("bench.trials_per_row must be >= 1")
        if not self.methods:
            raise ValueError("bench.methods must not be empty")
        unknown = sorted(set(self.methods) - set(METHODS))
        if unknown:
            raise ValueError(f"bench.methods has unknown entries {unknown}; allowed={list(METHODS)}")
        if not (0.0 <= self.directed_fraction <= 1.0):
            raise ValueError("bench.directed_fraction must be in [0, 1]")

    def as_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["rows"] = [list(r) for r in self.rows]
        d["methods"] = list(self.methods)
        return d


@dataclass(frozen=True)
class BenchTrial:
    n_vertices: int
    n_edges: int
    method: str
    trial: int
    seed: int
    combinations: int
    nodes_expanded: int
    isomorphic: bool
    elapsed_ms: float


class TrialSink(Protocol):
    """Minimal surface area the bench feature needs from persistence."""

    def append(self, row: dict[str, Any]) -> None: ...


@dataclass(frozen=True)
class BenchReport:
    run_id: str
    config: BenchConfig
    trials: tuple[BenchTrial, ...]

    @property
    def all_isomorphic(self) -> bool:
        return all(t.isomorphic for t in self.trials)

    def to_frame(self) -> pd.DataFrame:
        df = pd.DataFrame([asdict(t) for t in self.trials])
        if df.empty:
            return df
        return df.sort_values(["n_vertices", "n_edges", "method", "trial"], kind="stable")

    def summary(self) -> pd.DataFrame:
        """Mean combinations per (row, method), rows in config order."""
        df = self.to_frame()
        table = df.pivot_table(
            index=["n_vertices", "n_edges"],
            columns="method",
            values="combinations",
            aggfunc="mean",
        )
        table = table.reindex(pd.MultiIndex.from_tuples(self.config.rows)).reindex(
            columns=list(self.config.methods)
        )
        table.index.names = ["n_vertices", "n_edges"]
        return table

    def trial_counts(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for t in self.trials:
            if t.method == self.config.methods[0]:
                key = (t.n_vertices, t.n_edges)
                out[key] = out.get(key, 0) + 1
        return out
