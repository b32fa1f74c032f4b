from __future__ import annotations

BENCH_TABLE_NAME = "bench_trials"

BENCH_COLUMNS: tuple[str, ...] = (
    "run_id",
    "n_vertices",
    "n_edges",
    "method",
    "trial",
    "seed",
    "combinations",
    "nodes_expanded",
    "isomorphic",
    "elapsed_ms",
)

BENCH_DDL = f"""
CREATE TABLE IF NOT EXISTS {BENCH_TABLE_NAME} (
    run_id TEXT NOT NULL,

    n_vertices INTEGER NOT NULL,
    n_edges INTEGER NOT NULL,
    method TEXT NOT NULL,
    trial INTEGER NOT NULL,
    seed UBIGINT NOT NULL,

    combinations BIGINT NOT NULL,
    nodes_expanded BIGINT NOT NULL,
    isomorphic BOOLEAN NOT NULL,
    elapsed_ms DOUBLE NOT NULL
);
"""

BENCH_INDEXES = [
    f"CREATE INDEX IF NOT EXISTS idx_bench_run_id ON {BENCH_TABLE_NAME}(run_id);",
    f"CREATE INDEX IF NOT EXISTS idx_bench_method ON {BENCH_TABLE_NAME}(method);",
]


def create_schema(conn) -> None:
    """
    Create tables/indexes. No migrations. Safe to call per run.
    """
    conn.execute(BENCH_DDL)
    for ddl in BENCH_INDEXES:
        conn.execute(ddl)
