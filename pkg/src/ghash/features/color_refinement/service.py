from __future__ import annotations

from collections.abc import Hashable, Sequence

from ghash.core.logging import get_logger
from ghash.features.color_refinement.types import Coloring, CRVerdict
from ghash.features.graph_model.service import disjoint_union
from ghash.features.graph_model.types import Graph

logger = get_logger(__name__)


def canonical_ids(signatures: Sequence[Hashable]) -> tuple[int, ...]:
    """Number distinct signatures by first appearance in vertex order."""
    ids: dict[Hashable, int] = {}
    out: list[int] = []
    for sig in signatures:
        if sig not in ids:
            ids[sig] = len(ids)
        out.append(ids[sig])
    return tuple(out)


def refine_step(g: Graph, coloring: Coloring) -> Coloring:
    """
    One refinement round: new color of u is the canonical id of
    (old color of u, sorted multiset of old neighbour colors).

    Neighbours ignore direction and labels; parallel edges count once each.
    """
    old = coloring.color_of
    signatures = [
        (old[u], tuple(sorted(old[w] for w in g.neighbors(u)))) for u in g.vertices()
    ]
    return Coloring(color_of=canonical_ids(signatures), round=coloring.round + 1)


def refine_rounds(g: Graph) -> list[Coloring]:
    """C0 (uniform) through the stable coloring, in order."""
    current = Coloring(color_of=(0,) * g.n_vertices, round=0)
    rounds = [current]
    while True:
        nxt = refine_step(g, current)
        # refinement is monotone, so an unchanged class count means an unchanged partition
        if nxt.n_colors == current.n_colors:
            return rounds
        rounds.append(nxt)
        current = nxt


def refine(g: Graph) -> Coloring:
    return refine_rounds(g)[-1]


def cr_compare(g: Graph, h: Graph) -> CRVerdict:
    """Refine the disjoint union so color ids are comparable, then compare color multisets."""
    union, offset = disjoint_union(g, h)
    stable = refine(union)
    same = stable.histogram(0, offset) == stable.histogram(offset)
    verdict = CRVerdict.INCONCLUSIVE if same else CRVerdict.NON_ISOMORPHIC

    logger.debug(
        "cr_compare",
        extra={
            "n_g": g.n_vertices,
            "n_h": h.n_vertices,
            "rounds": stable.round,
            "colors": stable.n_colors,
            "verdict": verdict.value,
        },
    )
    return verdict
