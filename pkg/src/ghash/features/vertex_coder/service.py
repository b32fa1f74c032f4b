from __future__ import annotations

import struct
from collections import defaultdict

from ghash.core.logging import get_logger
from ghash.features.digest.service import Digest128, DigestFn, md5
from ghash.features.graph_model.types import Graph, Label, VertexId
from ghash.features.vertex_coder.types import (
    BudgetExceeded,
    ChildLink,
    CoderBudget,
    CoderNode,
    CoderStats,
    VertexClass,
)

_U32 = struct.Struct(">I")
_ABSENT_LABEL = b"\x00"
_PRESENT_LABEL = b"\x01"

logger = get_logger(__name__)


def encode_int(value: int) -> bytes:
    """Every integer in a hash input is 4-byte big-endian unsigned."""
    return _U32.pack(value)


def encode_label(label: Label) -> bytes:
    # marker byte keeps "no label" apart from "label 0"
    if label is None:
        return _ABSENT_LABEL
    return _PRESENT_LABEL + _U32.pack(label)


def terminal_value(vertex: VertexId, branch: tuple[VertexId, ...]) -> int:
    """
    Value a childless node contributes: 1-based position of the vertex's first
    appearance on its branch, or len(branch) + 1 when it does not appear.
    """
    for i, b in enumerate(branch):
        if b == vertex:
            return i + 1
    return len(branch) + 1


class VertexCoder:
    """
    Hashes vertices by unrolling their reachable neighbourhood into a tree.

    Each node is expanded over every incident edge (both directions), children are
    encoded depth-first and freed as soon as their code is harvested, and a node's
    digest input is:

      1. vertex label encoding                       (hash_labels only)
      2. per sorted child: edge label enc + direction (label only with hash_labels)
      3. terminal value                              (childless nodes only)
      4. per sorted child: the child's 16-byte code
    """

    def __init__(
        self,
        graph: Graph,
        *,
        hash_labels: bool = False,
        budget: CoderBudget | None = None,
        digest: DigestFn = md5,
    ) -> None:
        self.graph = graph
        self.hash_labels = hash_labels
        self.budget = budget or CoderBudget()
        self.digest = digest

        self._created = 0
        self._live = 0
        self._peak_live = 0
        self.last_stats: CoderStats | None = None

    # ------------------------------------------------------------------
    # Tree construction
    # ------------------------------------------------------------------
    def new_node(self, vertex: VertexId, branch: tuple[VertexId, ...]) -> CoderNode:
        self._created += 1
        if self._created > self.budget.max_nodes:
            raise BudgetExceeded(
                f"vertex expansion exceeded {self.budget.max_nodes} coder nodes"
            )
        self._live += 1
        if self._live > self._peak_live:
            self._peak_live = self._live
        return CoderNode(vertex=vertex, branch=branch)

    def expand_node(self, node: CoderNode) -> None:
        v = node.vertex
        if v in node.branch:
            return
        child_branch = node.branch + (v,)
        edges = self.graph.edges
        for ei in self.graph.incidence[v]:
            e = edges[ei]
            node.children.append(
                ChildLink(
                    edge_label=e.label,
                    direction=e.direction_from(v),
                    child=self.new_node(e.far_end(v), child_branch),
                )
            )

    def contract_node(self, node: CoderNode) -> None:
        self._live -= len(node.children)
        node.children.clear()

    # ------------------------------------------------------------------
    # Encoding
    # ------------------------------------------------------------------
    def _sort_key(self, link: ChildLink) -> tuple[bytes, int, bytes]:
        label = encode_label(link.edge_label) if self.hash_labels else b""
        return (link.child.code, int(link.direction), label)

    def assemble(self, node: CoderNode) -> bytes:
        """Digest input for a node whose children already carry their codes."""
        node.children.sort(key=self._sort_key)

        buf = bytearray()
        if self.hash_labels:
            buf += encode_label(self.graph.labels[node.vertex])
        if node.children:
            for link in node.children:
                if self.hash_labels:
                    buf += encode_label(link.edge_label)
                buf += encode_int(int(link.direction))
        else:
            buf += encode_int(terminal_value(node.vertex, node.branch))
        for link in node.children:
            buf += link.child.code
        return bytes(buf)

    def vertex_hash(self, v: VertexId) -> Digest128:
        if not (0 <= v < self.graph.n_vertices):
            raise ValueError(f"vertex {v} not in graph with {self.graph.n_vertices} vertices")

        self._created = 0
        self._live = 0
        self._peak_live = 0
        try:
            code = self._encode(self.new_node(v, ()))
        except BudgetExceeded:
            logger.warning(
                "budget_exceeded",
                extra={"vertex": v, "max_nodes": self.budget.max_nodes},
            )
            raise
        finally:
            self.last_stats = CoderStats(nodes_created=self._created, peak_live=self._peak_live)
        return code

    def _encode(self, root: CoderNode) -> Digest128:
        # Iterative depth-first encode; a finished node is contracted immediately,
        # so only the children of nodes on the current path are alive.
        self.expand_node(root)
        stack = [root]
        while stack:
            node = stack[-1]
            if node.cursor < len(node.children):
                child = node.children[node.cursor].child
                node.cursor += 1
                self.expand_node(child)
                if child.children:
                    stack.append(child)
                else:
                    child.code = self.digest(self.assemble(child))
                continue

            node.code = self.digest(self.assemble(node))
            self.contract_node(node)
            stack.pop()

        self._live -= 1  # root
        return root.code

    # ------------------------------------------------------------------
    # Graph level
    # ------------------------------------------------------------------
    def vertex_codes(self) -> list[Digest128]:
        codes: list[Digest128] = []
        total_nodes = 0
        for v in self.graph.vertices():
            codes.append(self.vertex_hash(v))
            if self.last_stats is not None:
                total_nodes += self.last_stats.nodes_created
        logger.debug(
            "vertex_codes",
            extra={
                "n_vertices": self.graph.n_vertices,
                "n_edges": self.graph.n_edges,
                "nodes_created": total_nodes,
                "hash_labels": self.hash_labels,
            },
        )
        return codes

    def graph_hash(self) -> Digest128:
        # synthetic root: no vertex, no edges, only the sorted vertex codes
        return self.digest(b"".join(sorted(self.vertex_codes())))

    def vertex_partition(self) -> list[VertexClass]:
        return partition_from_codes(self.vertex_codes())


def partition_from_codes(codes: list[Digest128]) -> list[VertexClass]:
    groups: dict[Digest128, list[VertexId]] = defaultdict(list)
    for v, code in enumerate(codes):
        groups[code].append(v)
    return [VertexClass(digest=d, vertices=tuple(groups[d])) for d in sorted(groups)]


# ----------------------------------------------------------------------
# Functional surface
# ----------------------------------------------------------------------
def vertex_hash(
    g: Graph, v: VertexId, hash_labels: bool = False, budget: CoderBudget | None = None
) -> Digest128:
    return VertexCoder(g, hash_labels=hash_labels, budget=budget).vertex_hash(v)


def graph_hash(g: Graph, hash_labels: bool = False, budget: CoderBudget | None = None) -> Digest128:
    return VertexCoder(g, hash_labels=hash_labels, budget=budget).graph_hash()


def vertex_partition(
    g: Graph, hash_labels: bool = False, budget: CoderBudget | None = None
) -> list[VertexClass]:
    return VertexCoder(g, hash_labels=hash_labels, budget=budget).vertex_partition()
