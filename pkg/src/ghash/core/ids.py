from __future__ import annotations

import hashlib
import json
from typing import Any


def canonical_json(obj: dict[str, Any]) -> str:
    # stable serialization for hashing
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def deterministic_run_id(cfg: dict[str, Any], length: int = 12) -> str:
    """
    Deterministic run_id derived from the benchmark configuration.
    - Same rows/trials/seed/methods -> same run_id.
    - Any change -> a new run_id.
    """
    s = canonical_json(cfg).encode("utf-8")
    h = hashlib.sha1(s).hexdigest()
    return h[:length]
