from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import StrEnum

from ghash.features.graph_model.types import VertexId


class CRVerdict(StrEnum):
    NON_ISOMORPHIC = "non-isomorphic"
    # never a claim of isomorphism
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Coloring:
    """
    color_of[v] is v's color id. Ids are dense from 0 and canonical: classes are
    numbered in order of their smallest vertex id.
    """

    color_of: tuple[int, ...]
    round: int

    @property
    def n_colors(self) -> int:
        return len(set(self.color_of))

    def classes(self) -> list[tuple[VertexId, ...]]:
        out: list[list[VertexId]] = [[] for _ in range(self.n_colors)]
        for v, c in enumerate(self.color_of):
            out[c].append(v)
        return [tuple(c) for c in out]

    def histogram(self, start: int = 0, stop: int | None = None) -> Counter[int]:
        """Multiset of colors over vertices start..stop-1."""
        return Counter(self.color_of[start:stop])
