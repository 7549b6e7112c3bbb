import warnings

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domgame.errors import (
    CycleDetected,
    DuplicateEdge,
    InfeasibleShape,
    IsolatedVertexWarning,
    LimitExceeded,
    MalformedLine,
    VertexOutOfRange,
)
from domgame.forest import (
    Forest,
    Graph,
    classify_vertices,
    enumerate_trees,
    leaf_pair_at_distance,
    parse_edge_list,
    random_caterpillar,
    random_forest,
    random_tree,
    serialize_edge_list,
)

from conftest import path_forest, spider_forest, star_forest
from oracles import free_tree_count, is_caterpillar


class TestParse:
    def test_p5(self):
        f = parse_edge_list("5\n0 1\n1 2\n2 3\n3 4")
        assert isinstance(f, Forest)
        assert f.n == 5
        assert sorted(f.edges) == [(0, 1), (1, 2), (2, 3), (3, 4)]

    def test_k2(self):
        f = parse_edge_list("2\n0 1")
        assert f.n == 2 and f.edges == frozenset({(0, 1)})

    def test_triangle_rejected(self):
        with pytest.raises(CycleDetected):
            parse_edge_list("3\n0 1\n1 2\n2 0")

    def test_triangle_allowed_as_general_graph(self):
        g = parse_edge_list("3\n0 1\n1 2\n2 0", allow_cycles=True)
        assert isinstance(g, Graph) and not isinstance(g, Forest)
        assert not g.is_acyclic()

    def test_comments_and_blanks(self):
        f = parse_edge_list("# a path\n\n3\n# edges follow\n0 1\n\n1 2\n")
        assert f.n == 3 and len(f.edges) == 2

    def test_duplicate_edge(self):
        with pytest.raises(DuplicateEdge):
            parse_edge_list("3\n0 1\n1 0")

    def test_out_of_range(self):
        with pytest.raises(VertexOutOfRange):
            parse_edge_list("3\n0 3")

    def test_self_loop(self):
        with pytest.raises(CycleDetected):
            parse_edge_list("3\n1 1")

    def test_malformed(self):
        with pytest.raises(MalformedLine):
            parse_edge_list("3\n0 1 2")
        with pytest.raises(MalformedLine):
            parse_edge_list("x\n0 1")
        with pytest.raises(MalformedLine):
            parse_edge_list("# nothing here\n")

    def test_isolated_vertex_warns_but_parses(self):
        with pytest.warns(IsolatedVertexWarning):
            f = parse_edge_list("3\n0 1")
        assert f.isolated_vertices() == (2,)

    def test_round_trip(self):
        text = "5\n0 1\n1 2\n2 3\n3 4\n"
        assert serialize_edge_list(parse_edge_list(text)) == text

    @given(st.integers(2, 24), st.integers(0, 2**32))
    @settings(max_examples=60, deadline=None)
    def test_round_trip_random(self, n, seed):
        f = random_forest(n, 1 + seed % max(1, n // 2), seed)
        again = parse_edge_list(serialize_edge_list(f))
        assert again == f


class TestStructure:
    def test_classify_p5(self):
        vc = classify_vertices(path_forest(5))
        assert vc.leaves == {0, 4}
        assert vc.stems == {1, 3}
        assert vc.internal == {2}

    def test_classify_star(self):
        vc = classify_vertices(star_forest(4))
        assert vc.leaves == {1, 2, 3, 4}
        assert vc.stems == {0}

    def test_classify_k2_overlaps(self):
        vc = classify_vertices(path_forest(2))
        assert vc.leaves == {0, 1} == vc.stems
        assert vc.internal == frozenset()

    def test_leaf_distance_examples(self):
        assert leaf_pair_at_distance(path_forest(5), 4)
        assert not leaf_pair_at_distance(path_forest(4), 4)
        assert leaf_pair_at_distance(path_forest(4), 3)
        assert leaf_pair_at_distance(path_forest(2), 1)
        assert not leaf_pair_at_distance(path_forest(5), 0)

    def test_leaf_distance_spider(self):
        # three legs of two edges: any two leaf tips are four apart
        spider = spider_forest(3, 2)
        dist = spider.distances_from(2)
        tips = [v for v in range(spider.n) if spider.degree(v) == 1]
        assert all(dist[t] == 4 for t in tips if t != 2)
        assert leaf_pair_at_distance(spider, 4)

    def test_leaf_distance_cross_component_pairs_do_not_count(self):
        two_paths = Forest(6, frozenset({(0, 1), (1, 2), (3, 4), (4, 5)}))
        assert not leaf_pair_at_distance(two_paths, 4)
        assert leaf_pair_at_distance(two_paths, 2)


class TestRandomGenerators:
    def test_smallest_forest_is_k2(self):
        assert random_forest(2, 1, seed=5).edges == frozenset({(0, 1)})

    def test_deterministic(self):
        a = random_forest(10, 3, seed=99)
        b = random_forest(10, 3, seed=99)
        assert a == b

    def test_component_count_and_no_isolates(self):
        f = random_forest(10, 3, seed=1)
        assert len(f.components) == 3
        assert not f.isolated_vertices()
        assert all(len(c) >= 2 for c in f.components)

    def test_infeasible(self):
        with pytest.raises(InfeasibleShape):
            random_forest(10, 6, seed=0)
        with pytest.raises(InfeasibleShape):
            random_forest(0, 1, seed=0)

    def test_isolates_allowed_when_asked(self):
        f = random_forest(3, 3, seed=0, isolate_free=False)
        assert len(f.components) == 3
        assert len(f.isolated_vertices()) == 3

    @given(st.integers(2, 30), st.integers(1, 6), st.integers(0, 2**32))
    @settings(max_examples=80, deadline=None)
    def test_random_forest_shape(self, n, components, seed):
        if components * 2 > n:
            with pytest.raises(InfeasibleShape):
                random_forest(n, components, seed)
            return
        f = random_forest(n, components, seed)
        assert len(f.components) == components
        assert len(f.edges) == n - components

    def test_caterpillar_minimum(self):
        assert random_caterpillar(2, seed=3).edges == frozenset({(0, 1)})
        with pytest.raises(InfeasibleShape):
            random_caterpillar(1, seed=0)

    def test_caterpillar_deterministic(self):
        assert random_caterpillar(7, seed=11) == random_caterpillar(7, seed=11)

    @given(st.integers(2, 24), st.integers(0, 2**32))
    @settings(max_examples=120, deadline=None)
    def test_caterpillar_definition(self, n, seed):
        assert is_caterpillar(random_caterpillar(n, seed))

    def test_random_tree(self):
        t = random_tree(9, seed=4)
        assert len(t.components) == 1 and len(t.edges) == 8


class TestEnumeration:
    def test_counts_match_counting_recurrence(self):
        # expected class counts computed by an unrelated recurrence
        for n in range(1, 11):
            expected = free_tree_count(n)
            got = sum(1 for _ in enumerate_trees(n))
            assert got == expected, f"n={n}: {got} != {expected}"

    def test_known_counts(self):
        assert free_tree_count(7) == 11
        assert free_tree_count(10) == 106
        assert sum(1 for _ in enumerate_trees(7)) == 11
        assert sum(1 for _ in enumerate_trees(10)) == 106

    def test_n4_shapes(self):
        degree_profiles = set()
        for tree in enumerate_trees(4):
            degree_profiles.add(tuple(sorted(tree.degree(v) for v in range(4))))
        assert degree_profiles == {(1, 1, 2, 2), (1, 1, 1, 3)}

    def test_every_output_is_a_tree(self):
        for n in range(1, 10):
            for tree in enumerate_trees(n):
                assert len(tree.edges) == n - 1
                assert len(tree.components) == 1

    def test_pairwise_non_isomorphic(self):
        trees = [nx.Graph(sorted(t.edges)) for t in enumerate_trees(7)]
        for t in trees:
            t.add_nodes_from(range(7))
        for i in range(len(trees)):
            for j in range(i + 1, len(trees)):
                assert not nx.is_isomorphic(trees[i], trees[j])

    def test_limit(self):
        with pytest.raises(LimitExceeded):
            next(enumerate_trees(19))
        with pytest.raises(LimitExceeded):
            next(enumerate_trees(6, limit=5))


class TestForestInvariants:
    def test_cycle_guard(self):
        with pytest.raises(CycleDetected):
            Forest(3, frozenset({(0, 1), (1, 2), (0, 2)}))

    def test_graph_allows_cycle(self):
        g = Graph(3, frozenset({(0, 1), (1, 2), (0, 2)}))
        assert not g.is_acyclic()

    def test_edge_normalization(self):
        g = Graph(3, frozenset({(2, 0)}))
        assert g.edges == frozenset({(0, 2)})

    @given(st.integers(2, 40), st.integers(0, 2**32))
    @settings(max_examples=60, deadline=None)
    def test_generators_emit_valid_forests(self, n, seed):
        f = random_forest(n, 1 + seed % max(1, n // 3), seed)
        # acyclicity: edges per component == size - 1
        assert len(f.edges) + len(f.components) == f.n
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assert parse_edge_list(serialize_edge_list(f)) == f
