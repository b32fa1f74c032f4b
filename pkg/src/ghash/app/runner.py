from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ghash.core.config import GhashConfig, load_config
from ghash.core.logging import configure_logging, get_logger
from ghash.features.bench.service import BenchService
from ghash.features.bench.types import BenchConfig, BenchReport
from ghash.features.persistence.duckdb_adapter import DuckDBAdapter
from ghash.features.persistence.service import PersistenceService
from ghash.features.vertex_coder.types import CoderBudget

logger = get_logger(__name__)


@dataclass(frozen=True)
class BenchRunResult:
    report: BenchReport
    duckdb_path: str | None


def bootstrap(config_path: str | Path | None = None) -> GhashConfig:
    cfg = load_config(config_path)
    configure_logging(cfg.logging.level, cfg.logging.path)
    return cfg


def run_bench(
    cfg: GhashConfig, bench_cfg: BenchConfig, *, duckdb_path: str | None = None
) -> BenchRunResult:
    """Run the benchmark; trials are appended to DuckDB when a path is given (flag or config)."""
    db_path = duckdb_path or cfg.storage.duckdb_path
    budget = CoderBudget(max_nodes=cfg.coder.max_nodes)

    if db_path is None:
        return BenchRunResult(report=BenchService(bench_cfg, budget=budget).run(), duckdb_path=None)

    persistence = PersistenceService(
        adapter=DuckDBAdapter(path=db_path, clean_slate=cfg.storage.clean_slate),
        every_n_rows=cfg.storage.every_n_rows,
    )
    persistence.open()
    try:
        report = BenchService(bench_cfg, budget=budget, sink=persistence).run()
    finally:
        persistence.close()

    logger.info("bench_persisted", extra={"run_id": report.run_id, "duckdb_path": db_path})
    return BenchRunResult(report=report, duckdb_path=db_path)
