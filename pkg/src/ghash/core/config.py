from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml


@dataclass(frozen=True)
class CoderConfig:
    hash_labels: bool = False
    max_nodes: int = 10_000_000
    digest: str = "md5"


@dataclass(frozen=True)
class IsomorphismConfig:
    oracle_max_vertices: int = 9


@dataclass(frozen=True)
class GeneratorsConfig:
    regular_max_retries: int = 10_000


@dataclass(frozen=True)
class StorageConfig:
    duckdb_path: str | None = None
    clean_slate: bool = False
    every_n_rows: int = 1000


@dataclass(frozen=True)
class LoggingConfig:
    level: str = "INFO"
    path: str | None = None


@dataclass(frozen=True)
class GhashConfig:
    coder: CoderConfig = field(default_factory=CoderConfig)
    isomorphism: IsomorphismConfig = field(default_factory=IsomorphismConfig)
    generators: GeneratorsConfig = field(default_factory=GeneratorsConfig)
    storage: StorageConfig = field(default_factory=StorageConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)
    # feature sections (e.g. bench) are parsed by their feature from here
    raw: dict[str, Any] = field(default_factory=dict)


def load_yaml(path: str | Path) -> dict[str, Any]:
    p = Path(path)
    data = yaml.safe_load(p.read_text())
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValueError("Config YAML must parse to a dict at the top level.")
    return data


def section(data: dict[str, Any], key: str) -> dict[str, Any]:
    sec = data.get(key) or {}
    if not isinstance(sec, dict):
        raise TypeError(f"{key} must be a mapping/dict")
    return sec


def positive_int(value: Any, key: str) -> int:
    try:
        n = int(value)
    except Exception as e:  # noqa: BLE001
        raise TypeError(f"{key} must be an integer") from e
    if n < 1:
        raise ValueError(f"{key} must be >= 1")
    return n


def parse_config(data: dict[str, Any]) -> GhashConfig:
    coder = section(data, "coder")
    iso = section(data, "isomorphism")
    gens = section(data, "generators")
    storage = section(data, "storage")
    logging_cfg = section(data, "logging")

    # --- coder ---
    coder_cfg = CoderConfig(
        hash_labels=bool(coder.get("hash_labels", CoderConfig.hash_labels)),
        max_nodes=positive_int(coder.get("max_nodes", CoderConfig.max_nodes), "coder.max_nodes"),
        digest=str(coder.get("digest", CoderConfig.digest)).strip().lower(),
    )

    # --- isomorphism / generators ---
    iso_cfg = IsomorphismConfig(
        oracle_max_vertices=positive_int(
            iso.get("oracle_max_vertices", IsomorphismConfig.oracle_max_vertices),
            "isomorphism.oracle_max_vertices",
        )
    )
    gens_cfg = GeneratorsConfig(
        regular_max_retries=positive_int(
            gens.get("regular_max_retries", GeneratorsConfig.regular_max_retries),
            "generators.regular_max_retries",
        )
    )

    # --- storage ---
    db_path = storage.get("duckdb_path")
    storage_cfg = StorageConfig(
        duckdb_path=None if db_path is None else str(db_path),
        clean_slate=bool(storage.get("clean_slate", StorageConfig.clean_slate)),
        every_n_rows=positive_int(
            storage.get("every_n_rows", StorageConfig.every_n_rows), "storage.every_n_rows"
        ),
    )

    # --- logging ---
    log_path = logging_cfg.get("path")
    log_cfg = LoggingConfig(
        level=str(logging_cfg.get("level", "INFO")).upper(),
        path=None if log_path is None else str(log_path),
    )

    return GhashConfig(
        coder=coder_cfg,
        isomorphism=iso_cfg,
        generators=gens_cfg,
        storage=storage_cfg,
        logging=log_cfg,
        raw=data,
    )


def load_config(path: str | Path | None = None) -> GhashConfig:
    if path is None:
        return GhashConfig()
    return parse_config(load_yaml(path))
