from __future__ import annotations

import json
import logging
from datetime import UTC, datetime
from pathlib import Path
from typing import Any

ROOT_LOGGER = "ghash"

# Standard LogRecord attributes we don't want to re-emit as "extras"
_RESERVED = {
    "name",
    "msg",
    "args",
    "levelname",
    "levelno",
    "pathname",
    "filename",
    "module",
    "exc_info",
    "exc_text",
    "stack_info",
    "lineno",
    "funcName",
    "created",
    "msecs",
    "relativeCreated",
    "thread",
    "threadName",
    "processName",
    "process",
    "taskName",
}


class JsonFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        payload: dict[str, Any] = {
            "ts_utc": datetime.now(UTC).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "msg": record.getMessage(),
        }

        # Merge extras: anything on record.__dict__ that's not reserved
        for k, v in record.__dict__.items():
            if k in _RESERVED:
                continue
            if k.startswith("_"):
                continue
            # don't overwrite core keys
            if k in payload:
                continue
            payload[k] = v

        return json.dumps(payload, separators=(",", ":"), ensure_ascii=True, default=str)


def get_logger(name: str) -> logging.Logger:
    """Module logger under the `ghash` hierarchy; handlers live on the root `ghash` logger."""
    if name != ROOT_LOGGER and not name.startswith(ROOT_LOGGER + "."):
        name = f"{ROOT_LOGGER}.{name}"
    return logging.getLogger(name)


def configure_logging(level: str = "INFO", path: str | Path | None = None) -> logging.Logger:
    """
    Attach the JSON file handler to the `ghash` logger.

    Without a path the records are dropped, so stdout/stderr stay reserved for CLI output.
    """
    logger = logging.getLogger(ROOT_LOGGER)
    logger.setLevel(level.upper())
    logger.propagate = False

    for h in list(logger.handlers):
        logger.removeHandler(h)
        h.close()

    if path is None:
        logger.addHandler(logging.NullHandler())
        return logger

    p = Path(path)
    if p.parent and not p.parent.exists():
        p.parent.mkdir(parents=True, exist_ok=True)

    handler = logging.FileHandler(p)
    handler.setFormatter(JsonFormatter())
    logger.addHandler(handler)
    return logger
