from __future__ import annotations

import os
import time
from collections.abc import Sequence
from dataclasses import dataclass

import duckdb

from .schema import BENCH_COLUMNS, BENCH_TABLE_NAME, create_schema


@dataclass(frozen=True)
class DuckDBWriteResult:
    num_rows: int
    duration_ms: float


class DuckDBAdapter:
    """
    DuckDB persistence adapter. Owns the connection and schema.
    """

    def __init__(self, path: str, *, clean_slate: bool) -> None:
        self.path = path
        self.clean_slate = clean_slate
        self._conn: duckdb.DuckDBPyConnection | None = None

    def open(self) -> None:
        if self.clean_slate and os.path.exists(self.path):
            os.remove(self.path)

        # Ensure parent dir exists
        parent = os.path.dirname(self.path)
        if parent:
            os.makedirs(parent, exist_ok=True)

        self._conn = duckdb.connect(self.path)
        create_schema(self._conn)

    @property
    def conn(self) -> duckdb.DuckDBPyConnection:
        if self._conn is None:
            raise RuntimeError("DuckDBAdapter not opened. Call open() first.")
        return self._conn

    def close(self) -> None:
        if self._conn is not None:
            self._conn.close()
            self._conn = None

    def write_trials(self, rows: Sequence[tuple]) -> DuckDBWriteResult:
        """
        Writes a batch of rows in BENCH_COLUMNS order.
        Returns count and duration.
        """
        if not rows:
            return DuckDBWriteResult(num_rows=0, duration_ms=0.0)

        t0 = time.perf_counter()

        cols = ", ".join(BENCH_COLUMNS)
        marks = ", ".join("?" for _ in BENCH_COLUMNS)
        self.conn.executemany(
            f"INSERT INTO {BENCH_TABLE_NAME} ({cols}) VALUES ({marks})",
            rows,
        )

        dt_ms = (time.perf_counter() - t0) * 1000.0
        return DuckDBWriteResult(num_rows=len(rows), duration_ms=dt_ms)

    def count_trials(self, run_id: str) -> int:
        res = self.conn.execute(
            f"SELECT COUNT(*) FROM {BENCH_TABLE_NAME} WHERE run_id = ?",
            [run_id],
        ).fetchone()
        return int(res[0]) if res else 0

    def mean_combinations(self, run_id: str) -> list[tuple[int, int, str, float]]:
        """(n_vertices, n_edges, method, mean combinations) per row, for quick inspection."""
        return [
            (int(nv), int(ne), str(m), float(mean))
            for nv, ne, m, mean in self.conn.execute(
                f"""
                SELECT n_vertices, n_edges, method, AVG(combinations)
                FROM {BENCH_TABLE_NAME}
                WHERE run_id = ?
                GROUP BY 1, 2, 3
                ORDER BY 1, 2, 3
                """,
                [run_id],
            ).fetchall()
        ]
