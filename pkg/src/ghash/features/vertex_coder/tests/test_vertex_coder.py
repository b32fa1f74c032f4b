from __future__ import annotations

import itertools
from dataclasses import replace

import pytest

from ghash.core.rng import RNG
from ghash.features.digest.service import md5, to_hex
from ghash.features.generators.service import random_graph
from ghash.features.generators.types import RandomGraphSpec
from ghash.features.graph_model.service import (
    apply_permutation,
    complete_graph,
    cycle_graph,
    disjoint_union,
    from_pairs,
    path_graph,
    star_graph,
)
from ghash.features.graph_model.types import Direction, Edge, Graph
from ghash.features.isomorphism.service import automorphisms, oracle_isomorphic
from ghash.features.vertex_coder.service import (
    VertexCoder,
    encode_int,
    encode_label,
    graph_hash,
    terminal_value,
    vertex_hash,
    vertex_partition,
)
from ghash.features.vertex_coder.types import BudgetExceeded, CoderBudget

ISOLATED = md5(b"\x00\x00\x00\x01")


def _directed_example() -> Graph:
    # 0->1, 0->2, 1->2, 2->1
    return from_pairs(3, [(0, 1), (0, 2), (1, 2), (2, 1)], directed=True)


def test_integer_and_label_encoding() -> None:
    assert encode_int(1) == b"\x00\x00\x00\x01"
    assert encode_int(2**32 - 1) == b"\xff\xff\xff\xff"
    assert encode_label(None) == b"\x00"
    assert encode_label(0) == b"\x01\x00\x00\x00\x00"


def test_terminal_value_rule() -> None:
    assert terminal_value(5, ()) == 1
    assert terminal_value(0, (0, 1)) == 1
    assert terminal_value(1, (0, 1)) == 2
    assert terminal_value(7, (0, 1)) == 3


def test_isolated_vertex_digest() -> None:
    g = Graph.build([None], [])
    assert vertex_hash(g, 0) == ISOLATED


def test_empty_graph_digest() -> None:
    assert to_hex(graph_hash(Graph.empty())) == "d41d8cd98f00b204e9800998ecf8427e"


def test_two_isolated_vertices() -> None:
    g = Graph.build([None, None], [])
    assert graph_hash(g) == md5(ISOLATED + ISOLATED)


def test_single_undirected_edge_by_hand() -> None:
    # leaf children: 1 -> back to 0 terminates at branch index 1
    leaf = md5(encode_int(1))
    child = md5(encode_int(int(Direction.UNDIRECTED)) + leaf)
    root = md5(encode_int(int(Direction.UNDIRECTED)) + child)
    assert vertex_hash(path_graph(2), 0) == root


def test_triangle_vertices_agree() -> None:
    g = cycle_graph(3)
    codes = VertexCoder(g).vertex_codes()
    assert len(set(codes)) == 1


def test_c6_and_two_triangles_differ() -> None:
    c6 = cycle_graph(6)
    two_c3, _ = disjoint_union(cycle_graph(3), cycle_graph(3))
    assert graph_hash(c6) != graph_hash(two_c3)
    assert not oracle_isomorphic(c6, two_c3).isomorphic


def test_partition_examples() -> None:
    assert [c.vertices for c in vertex_partition(cycle_graph(6))] == [tuple(range(6))]

    p3 = {c.vertices for c in vertex_partition(path_graph(3))}
    assert p3 == {(0, 2), (1,)}

    star = {c.vertices for c in vertex_partition(star_graph(4))}
    assert star == {(0,), (1, 2, 3, 4)}


def test_partition_classes_sorted_and_cover() -> None:
    g = random_graph(RandomGraphSpec(7, 9), seed=3)
    classes = vertex_partition(g)
    digests = [c.digest for c in classes]
    assert digests == sorted(digests)
    covered = sorted(v for c in classes for v in c.vertices)
    assert covered == list(g.vertices())


def test_expand_node_directed_example() -> None:
    g = _directed_example()
    coder = VertexCoder(g)

    root = coder.new_node(0, ())
    coder.expand_node(root)
    assert [(c.child.vertex, c.direction) for c in root.children] == [
        (1, Direction.FORWARD),
        (2, Direction.FORWARD),
    ]

    one = root.children[0].child
    coder.expand_node(one)
    assert one.branch == (0,)
    assert sorted((c.child.vertex, int(c.direction)) for c in one.children) == [
        (0, int(Direction.BACKWARD)),
        (2, int(Direction.BACKWARD)),
        (2, int(Direction.FORWARD)),
    ]

    two = root.children[1].child
    coder.expand_node(two)
    assert sorted((c.child.vertex, int(c.direction)) for c in two.children) == [
        (0, int(Direction.BACKWARD)),
        (1, int(Direction.BACKWARD)),
        (1, int(Direction.FORWARD)),
    ]

    # the edge back to 0 terminates at 0's first appearance
    back = next(c.child for c in one.children if c.child.vertex == 0)
    assert back.branch == (0, 1)
    coder.expand_node(back)
    assert back.children == []
    assert terminal_value(back.vertex, back.branch) == 1


def test_direction_matters() -> None:
    directed = from_pairs(2, [(0, 1)], directed=True)
    undirected = from_pairs(2, [(0, 1)])
    assert graph_hash(directed) != graph_hash(undirected)

    fwd, bwd = VertexCoder(directed).vertex_codes()
    assert fwd != bwd


def test_self_loop_terminates_immediately() -> None:
    g = Graph.build([None], [Edge(0, 0)])
    child = md5(encode_int(1))
    assert vertex_hash(g, 0) == md5(encode_int(int(Direction.UNDIRECTED)) + child)


def _random_corpus(count: int, max_vertices: int) -> list[Graph]:
    rng = RNG(11, "endpoints")
    out = []
    for i in range(count):
        n = rng.randint(1, max_vertices)
        spec = RandomGraphSpec(
            n_vertices=n,
            n_edges=rng.randint(0, n + 2),
            vertex_label_max=-1 if i % 3 == 0 else 4,
            edge_label_max=-1 if i % 3 == 0 else 4,
            directed_fraction=(i % 5) / 4,
        )
        out.append(random_graph(spec, seed=i))
    return out


@pytest.mark.parametrize("hash_labels", [False, True])
def test_invariance_under_permutation(hash_labels: bool) -> None:
    perm_rng = RNG(5, "permutation")
    for g in _random_corpus(60, 8):
        base = VertexCoder(g, hash_labels=hash_labels).vertex_codes()
        for _ in range(3):
            p = perm_rng.permutation(g.n_vertices)
            h = apply_permutation(g, p)
            moved = VertexCoder(h, hash_labels=hash_labels).vertex_codes()
            assert all(base[v] == moved[p[v]] for v in g.vertices())
            assert graph_hash(g, hash_labels) == graph_hash(h, hash_labels)


def test_label_sensitivity() -> None:
    for seed in range(100):
        g = random_graph(RandomGraphSpec(6, 7), seed=seed)
        base_plain = graph_hash(g)
        base_labeled = graph_hash(g, hash_labels=True)

        v = seed % g.n_vertices
        labels = list(g.labels)
        labels[v] = (labels[v] or 0) + 10
        relabeled_vertex = Graph.build(labels, g.edges)

        edges = list(g.edges)
        edges[0] = replace(edges[0], label=(edges[0].label or 0) + 10)
        relabeled_edge = Graph.build(g.labels, edges)

        for h in (relabeled_vertex, relabeled_edge):
            assert graph_hash(h, hash_labels=True) != base_labeled
            assert graph_hash(h) == base_plain


def test_absent_label_differs_from_zero() -> None:
    absent = Graph.build([None], [])
    zero = Graph.build([0], [])
    assert graph_hash(absent, hash_labels=True) != graph_hash(zero, hash_labels=True)
    assert graph_hash(absent) == graph_hash(zero)


def test_partition_respects_orbits() -> None:
    for g in _random_corpus(25, 6):
        codes = VertexCoder(g).vertex_codes()
        for perm in automorphisms(g):
            assert all(codes[v] == codes[perm[v]] for v in g.vertices())


def test_graph_hash_rejection_is_sound() -> None:
    graphs = _random_corpus(30, 5)
    for g, h in itertools.combinations(graphs, 2):
        if g.n_vertices == h.n_vertices and graph_hash(g) != graph_hash(h):
            assert not oracle_isomorphic(g, h).isomorphic


def test_budget_exceeded() -> None:
    coder = VertexCoder(complete_graph(6), budget=CoderBudget(max_nodes=50))
    with pytest.raises(BudgetExceeded):
        coder.vertex_hash(0)
    assert coder.last_stats is not None
    assert coder.last_stats.nodes_created == 51


def test_budget_must_be_positive() -> None:
    with pytest.raises(ValueError):
        CoderBudget(max_nodes=0)


def test_peak_live_stays_bounded() -> None:
    for g in _random_corpus(30, 7):
        if g.n_edges == 0:
            continue
        max_deg = max(g.degree(v) for v in g.vertices())
        coder = VertexCoder(g)
        for v in g.vertices():
            coder.vertex_hash(v)
            stats = coder.last_stats
            assert stats is not None
            assert stats.peak_live <= g.n_vertices * max_deg + g.n_vertices
            assert stats.peak_live <= stats.nodes_created


def test_invalid_vertex() -> None:
    with pytest.raises(ValueError):
        vertex_hash(path_graph(2), 2)
