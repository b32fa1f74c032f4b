from __future__ import annotations

from typing import Any

from ghash.core.logging import get_logger

from .duckdb_adapter import DuckDBAdapter
from .schema import BENCH_COLUMNS


class PersistenceService:
    """Buffered trial sink with a count-based flush.

    - Hot: buffer in memory
    - Cold: DuckDB
    """

    def __init__(self, *, adapter: DuckDBAdapter, every_n_rows: int) -> None:
        self.adapter = adapter
        self.every_n_rows = int(every_n_rows)

        # Internal buffer holds tuples already shaped for DuckDBAdapter.write_trials(...)
        self._buf_rows: list[tuple] = []
        self._logger = get_logger(__name__)
        self._is_open = False

    def open(self) -> None:
        if self._is_open:
            return
        self.adapter.open()
        self._is_open = True

    def append(self, row: dict[str, Any]) -> None:
        """Append one trial row (dict keyed by BENCH_COLUMNS) to the buffer."""
        if not self._is_open:
            raise RuntimeError("PersistenceService not open. Call open() first.")

        missing = [c for c in BENCH_COLUMNS if c not in row]
        if missing:
            raise ValueError(f"trial row is missing columns {missing}")
        self._buf_rows.append(tuple(row[c] for c in BENCH_COLUMNS))

        if self.every_n_rows > 0 and len(self._buf_rows) >= self.every_n_rows:
            self.flush(reason="count")

    def flush(self, *, reason: str) -> None:
        if not self._buf_rows:
            return

        rows = list(self._buf_rows)
        self._buf_rows.clear()

        result = self.adapter.write_trials(rows)

        self._logger.info(
            "flush",
            extra={
                "event": "flush",
                "reason": reason,
                "duckdb_path": self.adapter.path,
                "num_rows": result.num_rows,
                "duration_ms": result.duration_ms,
            },
        )

    def close(self) -> None:
        if not self._is_open:
            return
        self.flush(reason="shutdown")
        self.adapter.close()
        self._is_open = False
