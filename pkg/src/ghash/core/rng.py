from __future__ import annotations

from collections.abc import MutableSequence
from dataclasses import dataclass
from typing import TypeVar

import numpy as np

T = TypeVar("T")

SEED_MAX = 2**64 - 1

# Fixed stream ids; new streams are appended so existing draws never shift.
STREAMS: dict[str, int] = {
    "endpoints": 0,
    "vertex_labels": 1,
    "edge_labels": 2,
    "direction": 3,
    "permutation": 4,
    "regular": 5,
    "trials": 6,
}


def check_seed(seed: int) -> int:
    s = int(seed)
    if not (0 <= s <= SEED_MAX):
        raise ValueError(f"seed must be in [0, 2^64 - 1], got {seed!r}")
    return s


def derive_seed(seed: int, *keys: int) -> int:
    """Deterministic 64-bit child seed for (seed, *keys), e.g. one per benchmark trial."""
    ss = np.random.SeedSequence(check_seed(seed), spawn_key=(STREAMS["trials"], *keys))
    lo, hi = (int(x) for x in ss.generate_state(2, dtype=np.uint32))
    return (hi << 32) | lo


@dataclass
class RNG:
    """PCG64 generator bound to one named stream of a seed."""

    seed: int
    stream: str

    def __post_init__(self) -> None:
        if self.stream not in STREAMS:
            raise ValueError(f"Unknown rng stream {self.stream!r}. Allowed={sorted(STREAMS)}")
        ss = np.random.SeedSequence(check_seed(self.seed), spawn_key=(STREAMS[self.stream],))
        self._g = np.random.Generator(np.random.PCG64(ss))

    def random(self) -> float:
        return float(self._g.random())

    def randint(self, a: int, b: int) -> int:
        # inclusive on both ends, like random.randint
        return int(self._g.integers(a, b, endpoint=True))

    def permutation(self, n: int) -> list[int]:
        return [int(x) for x in self._g.permutation(n)]

    def shuffle(self, seq: MutableSequence[T]) -> None:
        order = self._g.permutation(len(seq))
        items = list(seq)
        for i, j in enumerate(order):
            seq[i] = items[int(j)]
