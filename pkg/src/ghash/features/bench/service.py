from __future__ import annotations

from collections.abc import Callable
from dataclasses import asdict
from pathlib import Path
from typing import Any

from ghash.core.config import positive_int, section
from ghash.core.ids import deterministic_run_id
from ghash.core.logging import get_logger
from ghash.core.rng import derive_seed
from ghash.features.bench.types import (
    CSV_COLUMNS,
    DEFAULT_ROWS,
    METHOD_TITLES,
    METHODS,
    BenchConfig,
    BenchReport,
    BenchTrial,
    TrialSink,
)
from ghash.features.generators.service import isomorphic_copy, random_graph
from ghash.features.generators.types import RandomGraphSpec
from ghash.features.graph_model.types import Graph
from ghash.features.isomorphism.service import (
    brute_force_isomorphic,
    hash_partitioned_isomorphic,
)
from ghash.features.isomorphism.types import IsoResult
from ghash.features.vertex_coder.types import CoderBudget

logger = get_logger(__name__)


def parse_rows(raw_rows: Any) -> tuple[tuple[int, int], ...]:
    """Rows as [[5, 5], [10, 20]] (YAML) or "5x5,10x20" (CLI)."""
    if isinstance(raw_rows, str):
        items: list[Any] = [r.strip().lower().split("x") for r in raw_rows.split(",") if r.strip()]
    elif isinstance(raw_rows, list | tuple):
        items = list(raw_rows)
    else:
        raise TypeError("bench.rows must be a list of [n_vertices, n_edges] pairs")

    rows: list[tuple[int, int]] = []
    for idx, item in enumerate(items):
        if not isinstance(item, list | tuple) or len(item) != 2:
            raise ValueError(f"bench.rows[{idx}] must look like [n_vertices, n_edges] or NxE")
        try:
            rows.append((int(item[0]), int(item[1])))
        except ValueError as e:
            raise ValueError(f"bench.rows[{idx}] must hold integers, got {item!r}") from e
    return tuple(rows)


def parse_methods(raw_methods: Any) -> tuple[str, ...]:
    if isinstance(raw_methods, str):
        raw_methods = raw_methods.split(",")
    if not isinstance(raw_methods, list | tuple):
        raise TypeError("bench.methods must be a list")
    return tuple(str(m).strip().lower() for m in raw_methods if str(m).strip())


def bench_config_from_raw(raw: dict[str, Any]) -> BenchConfig:
    """
    Builds BenchConfig from the YAML config structure:

    bench:
      rows: [[5, 5], [10, 10]]
      trials_per_row: 50
      seed: 7
      methods: ["brute", "hashed"]
    """
    b = section(raw, "bench")
    return BenchConfig(
        rows=parse_rows(b["rows"]) if "rows" in b else DEFAULT_ROWS,
        trials_per_row=positive_int(
            b.get("trials_per_row", BenchConfig.trials_per_row), "bench.trials_per_row"
        ),
        seed=int(b.get("seed", BenchConfig.seed)),
        methods=parse_methods(b["methods"]) if "methods" in b else METHODS,  # type: ignore[arg-type]
        vertex_label_max=int(b.get("vertex_label_max", BenchConfig.vertex_label_max)),
        edge_label_max=int(b.get("edge_label_max", BenchConfig.edge_label_max)),
        directed_fraction=float(b.get("directed_fraction", BenchConfig.directed_fraction)),
        shift_labels=bool(b.get("shift_labels", BenchConfig.shift_labels)),
    )


class BenchService:
    """
    Runs the planted-isomorph comparison: every trial builds a random graph and a
    permuted (optionally label-shifted) copy, then each method searches for the
    isomorphism with labels ignored.
    """

    def __init__(
        self,
        cfg: BenchConfig,
        *,
        budget: CoderBudget | None = None,
        sink: TrialSink | None = None,
    ) -> None:
        self.cfg = cfg
        self.budget = budget or CoderBudget()
        self.sink = sink
        self.run_id = deterministic_run_id(cfg.as_dict())

        self._deciders: dict[str, Callable[[Graph, Graph], IsoResult]] = {
            "brute": lambda g, h: brute_force_isomorphic(g, h, respect_labels=False),
            "hashed": lambda g, h: hash_partitioned_isomorphic(
                g, h, hash_labels=False, budget=self.budget
            ),
        }

    def trial_pair(self, n_vertices: int, n_edges: int, trial: int) -> tuple[Graph, Graph, int]:
        # keyed by the row itself so a row's trials don't depend on which other rows run
        seed = derive_seed(self.cfg.seed, n_vertices, n_edges, trial)
        spec = RandomGraphSpec(
            n_vertices=n_vertices,
            n_edges=n_edges,
            vertex_label_max=self.cfg.vertex_label_max,
            edge_label_max=self.cfg.edge_label_max,
            directed_fraction=self.cfg.directed_fraction,
        )
        g = random_graph(spec, seed)
        h, _perm = isomorphic_copy(g, seed, shift_labels=self.cfg.shift_labels)
        return g, h, seed

    def run(self) -> BenchReport:
        trials: list[BenchTrial] = []
        for n_vertices, n_edges in self.cfg.rows:
            row_trials: list[BenchTrial] = []
            for trial in range(self.cfg.trials_per_row):
                g, h, seed = self.trial_pair(n_vertices, n_edges, trial)
                for method in self.cfg.methods:
                    res = self._deciders[method](g, h)
                    row_trials.append(
                        BenchTrial(
                            n_vertices=n_vertices,
                            n_edges=n_edges,
                            method=method,
                            trial=trial,
                            seed=seed,
                            combinations=res.stats.combinations,
                            nodes_expanded=res.stats.nodes_expanded,
                            isomorphic=res.isomorphic,
                            elapsed_ms=res.stats.elapsed_ms,
                        )
                    )

            self._record(row_trials)
            trials.extend(row_trials)

        report = BenchReport(run_id=self.run_id, config=self.cfg, trials=tuple(trials))
        if not report.all_isomorphic:
            logger.error("planted_isomorphism_missed", extra={"run_id": self.run_id})
        return report

    def _record(self, row_trials: list[BenchTrial]) -> None:
        if self.sink is not None:
            for t in row_trials:
                self.sink.append({"run_id": self.run_id, **asdict(t)})

        head = row_trials[0]
        means: dict[str, float] = {}
        for method in self.cfg.methods:
            combos = [t.combinations for t in row_trials if t.method == method]
            means[method] = sum(combos) / len(combos)
        logger.info(
            "bench_row",
            extra={
                "run_id": self.run_id,
                "n_vertices": head.n_vertices,
                "n_edges": head.n_edges,
                "trials": self.cfg.trials_per_row,
                "mean_combinations": means,
            },
        )


# ----------------------------------------------------------------------
# Report output
# ----------------------------------------------------------------------
def format_table(report: BenchReport) -> str:
    """Text table: one row per graph size, mean combinations per method."""
    summary = report.summary()
    cols = ["Vertices x edges", *[METHOD_TITLES[m] for m in report.config.methods]]
    rows: list[list[str]] = []
    for (n_vertices, n_edges), values in summary.iterrows():
        rows.append(
            [f"{n_vertices}x{n_edges}", *[f"{values[m]:.1f}" for m in report.config.methods]]
        )

    widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(widths[i]) for i, c in enumerate(cols))]
    lines.append("  ".join("-" * w for w in widths))
    for r in rows:
        lines.append("  ".join(v.ljust(widths[i]) for i, v in enumerate(r)))
    return "\n".join(lines)


def write_csv(report: BenchReport, path: str | Path) -> None:
    p = Path(path)
    if p.parent and not p.parent.exists():
        p.parent.mkdir(parents=True, exist_ok=True)
    report.to_frame()[CSV_COLUMNS].to_csv(p, index=False)
