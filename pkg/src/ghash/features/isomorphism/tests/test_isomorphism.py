from __future__ import annotations

import itertools

import pytest

from ghash.core.rng import RNG
from ghash.features.generators.service import isomorphic_copy, random_graph, random_regular_pair
from ghash.features.generators.types import RandomGraphSpec
from ghash.features.graph_model.service import (
    apply_permutation,
    cycle_graph,
    disjoint_union,
    from_pairs,
    path_graph,
    star_graph,
)
from ghash.features.graph_model.types import Edge, Graph, NotABijection
from ghash.features.isomorphism.service import (
    automorphisms,
    brute_force_isomorphic,
    check_mapping,
    hash_partitioned_isomorphic,
    oracle_isomorphic,
)
from ghash.features.isomorphism.types import SearchStats, SizeMismatch, TooLarge
from ghash.features.vertex_coder.service import graph_hash


def _two_c3() -> Graph:
    g, _ = disjoint_union(cycle_graph(3), cycle_graph(3))
    return g


def test_check_mapping() -> None:
    g = path_graph(3)
    assert check_mapping(g, g, [0, 1, 2])
    assert check_mapping(g, g, [2, 1, 0])
    assert not check_mapping(g, g, [1, 0, 2])

    with pytest.raises(SizeMismatch):
        check_mapping(g, path_graph(4), [0, 1, 2])
    with pytest.raises(NotABijection):
        check_mapping(g, g, [0, 0, 2])


def test_check_mapping_respects_direction_and_labels() -> None:
    fwd = from_pairs(2, [(0, 1)], directed=True)
    assert not check_mapping(fwd, fwd, [1, 0])

    g = Graph.build([1, 2], [Edge(0, 1, label=3)])
    h = Graph.build([2, 1], [Edge(1, 0, label=3)])
    assert check_mapping(g, h, [1, 0], respect_labels=True)
    assert not check_mapping(g, h, [0, 1], respect_labels=True)
    assert check_mapping(g, h, [0, 1], respect_labels=False)


def test_c6_versus_two_triangles() -> None:
    c6 = cycle_graph(6)
    two_c3 = _two_c3()

    assert not oracle_isomorphic(c6, two_c3).isomorphic
    assert not brute_force_isomorphic(c6, two_c3).isomorphic

    hashed = hash_partitioned_isomorphic(c6, two_c3)
    assert not hashed.isomorphic
    assert hashed.mapping is None
    assert hashed.stats.combinations == 0


def test_size_mismatch_is_non_isomorphic() -> None:
    for decide in (oracle_isomorphic, brute_force_isomorphic, hash_partitioned_isomorphic):
        res = decide(path_graph(3), path_graph(4))
        assert not res.isomorphic
        assert res.stats.combinations == 0


def test_empty_graphs_are_isomorphic() -> None:
    empty = Graph.empty()
    for decide in (oracle_isomorphic, brute_force_isomorphic, hash_partitioned_isomorphic):
        res = decide(empty, empty)
        assert res.isomorphic
        assert res.mapping == ()


def test_oracle_refuses_large_graphs() -> None:
    with pytest.raises(TooLarge):
        oracle_isomorphic(cycle_graph(10), cycle_graph(10))
    with pytest.raises(TooLarge):
        list(automorphisms(cycle_graph(10)))


def test_automorphism_counts() -> None:
    assert len(list(automorphisms(cycle_graph(5)))) == 10
    assert len(list(automorphisms(star_graph(3)))) == 6
    assert len(list(automorphisms(from_pairs(3, [(0, 1), (1, 2)], directed=True)))) == 1


def test_deciders_agree_with_oracle_on_copies() -> None:
    for seed in range(40):
        n = 2 + seed % 6
        g = random_graph(RandomGraphSpec(n, n + seed % 4, directed_fraction=0.5), seed=seed)
        h, perm = isomorphic_copy(g, seed)

        for labels in (False, True):
            oracle = oracle_isomorphic(g, h, respect_labels=labels)
            brute = brute_force_isomorphic(g, h, respect_labels=labels)
            hashed = hash_partitioned_isomorphic(g, h, hash_labels=labels)
            assert oracle.isomorphic and brute.isomorphic and hashed.isomorphic
            assert check_mapping(g, h, brute.mapping, respect_labels=labels)  # type: ignore[arg-type]
            assert check_mapping(g, h, hashed.mapping, respect_labels=labels)  # type: ignore[arg-type]

        assert check_mapping(g, h, perm, respect_labels=True)


def test_deciders_agree_with_oracle_on_random_pairs() -> None:
    rng = RNG(21, "endpoints")
    graphs = []
    for i in range(30):
        n = rng.randint(1, 5)
        graphs.append(random_graph(RandomGraphSpec(n, rng.randint(0, n + 1), -1, -1, 0.5), seed=i))

    for g, h in itertools.combinations(graphs, 2):
        if g.n_vertices != h.n_vertices:
            continue
        truth = oracle_isomorphic(g, h).isomorphic
        assert brute_force_isomorphic(g, h).isomorphic == truth
        assert hash_partitioned_isomorphic(g, h).isomorphic == truth
        if graph_hash(g) != graph_hash(h):
            assert not truth


def test_labels_only_matter_when_requested() -> None:
    g = Graph.build([1, 2, 3], [Edge(0, 1), Edge(1, 2)])
    h = Graph.build([7, 8, 9], [Edge(0, 1), Edge(1, 2)])
    assert brute_force_isomorphic(g, h).isomorphic
    assert hash_partitioned_isomorphic(g, h).isomorphic
    assert not brute_force_isomorphic(g, h, respect_labels=True).isomorphic
    assert not hash_partitioned_isomorphic(g, h, hash_labels=True).isomorphic
    assert not oracle_isomorphic(g, h, respect_labels=True).isomorphic


def test_hashed_never_needs_more_combinations() -> None:
    for seed in range(15):
        g = random_graph(RandomGraphSpec(8, 8, -1, -1, 1.0), seed=seed)
        p = RNG(seed, "permutation").permutation(8)
        h = apply_permutation(g, p)
        brute = brute_force_isomorphic(g, h)
        hashed = hash_partitioned_isomorphic(g, h)
        assert hashed.stats.combinations <= brute.stats.combinations
        assert hashed.stats.combinations >= g.n_vertices


def test_regular_pairs_agree_with_oracle() -> None:
    for seed in range(20):
        n = 6 if seed % 2 == 0 else 8
        g, h = random_regular_pair(n, 3, seed)
        truth = oracle_isomorphic(g, h).isomorphic
        assert brute_force_isomorphic(g, h).isomorphic == truth
        assert hash_partitioned_isomorphic(g, h).isomorphic == truth


def test_search_stats_ignore_elapsed_time() -> None:
    assert SearchStats(3, 2, elapsed_ms=1.0) == SearchStats(3, 2, elapsed_ms=99.0)
