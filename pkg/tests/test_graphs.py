import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colorgames.errors import ResourceBudgetError, ValidationError
from colorgames.graphs import (
    Coloring,
    Graph,
    RootedForest,
    chromatic_number,
    clique_number,
    dfs_times,
    find_coloring,
    greedy_coloring,
    heavy_light,
    is_valid_coloring,
    kfree_chromatic_number,
    max_clique,
)

from fixtures import complete_graph, cycle_graph, petersen, random_forest, random_graph
from oracles import naive_chromatic_number, naive_clique_number, naive_kfree_chromatic_number


def test_graph_construction_and_queries():
    g = Graph(4, [(0, 1), (2, 1), (2, 3)])
    assert g.n == 4 and g.m == 3
    assert g.has_edge(1, 2) and g.has_edge(2, 1)
    assert not g.has_edge(0, 3)
    assert g.neighbors(1) == {0, 2}
    assert g.degree(2) == 2


def test_graph_rejects_bad_edges():
    with pytest.raises(ValidationError):
        Graph(3, [(0, 0)])
    with pytest.raises(ValidationError):
        Graph(3, [(0, 3)])
    with pytest.raises(ValidationError):
        Graph(2, [(0, 1)], labels=["only-one"])


def test_graph_json_round_trip():
    g = Graph(3, [(0, 2), (1, 2)], labels=["x", "y", "z"])
    d = g.to_json_dict()
    assert d == {"n": 3, "edges": [[0, 2], [1, 2]], "labels": ["x", "y", "z"]}
    assert Graph.from_json_dict(d) == g


def test_induced_subgraph_reindexes():
    g = cycle_graph(5)
    h = g.induced([1, 2, 4])
    assert h.n == 3
    assert set(h.edges) == {(0, 1)}  # only the 1-2 edge survives


def test_clique_number_examples():
    assert clique_number(Graph(3)) == 1
    assert clique_number(complete_graph(4)) == 4
    assert clique_number(cycle_graph(5)) == 2


def test_max_clique_is_a_clique():
    g = petersen()
    k = max_clique(g)
    assert len(k) == 2
    assert g.has_edge(k[0], k[1])


def test_chromatic_number_examples():
    assert chromatic_number(cycle_graph(5)) == 3
    assert chromatic_number(complete_graph(4)) == 4
    assert chromatic_number(petersen()) == 3


def test_chromatic_number_empty_and_edgeless():
    assert chromatic_number(Graph(0)) == 0
    assert chromatic_number(Graph(6)) == 1


def test_find_coloring_exact():
    g = petersen()
    assert find_coloring(g, 2) is None
    c = find_coloring(g, 3)
    assert c is not None and is_valid_coloring(g, c)
    assert max(c) <= 2


def test_kfree_examples():
    k4 = complete_graph(4)
    assert kfree_chromatic_number(k4, 2) == 4
    assert kfree_chromatic_number(k4, 3) == 2
    assert kfree_chromatic_number(petersen(), 3) == 1  # triangle-free
    with pytest.raises(ValidationError):
        kfree_chromatic_number(k4, 1)


def test_is_valid_coloring_examples():
    edge = Graph(2, [(0, 1)])
    assert not is_valid_coloring(edge, [1, 1], 2)
    assert is_valid_coloring(edge, [1, 1], 3)
    c5 = cycle_graph(5)
    assert is_valid_coloring(c5, Coloring((1, 2, 1, 2, 3)), 2)
    with pytest.raises(ValidationError):
        is_valid_coloring(edge, [0], 2)


def test_budget_overrun_is_an_error():
    g = random_graph(random.Random(7), 40, 0.5)
    with pytest.raises(ResourceBudgetError):
        chromatic_number(g, node_budget=10)


def test_oracle_agreement_small_graphs():
    rng = random.Random(20240811)
    for _ in range(150):
        n = rng.randrange(1, 8)
        g = random_graph(rng, n, rng.choice([0.2, 0.5, 0.8]))
        assert clique_number(g) == naive_clique_number(g)
        chi = chromatic_number(g)
        assert chi == naive_chromatic_number(g)
        assert kfree_chromatic_number(g, 2) == chi
        assert kfree_chromatic_number(g, 3) == naive_kfree_chromatic_number(g, 3)


@given(st.integers(0, 2**36 - 1))
@settings(max_examples=60, deadline=None)
def test_greedy_coloring_proper_and_bracket(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randrange(1, 12), 0.4)
    c = greedy_coloring(g)
    assert is_valid_coloring(g, c)
    assert clique_number(g) <= chromatic_number(g) <= c.num_colors


# --- forests ----------------------------------------------------------------


def test_forest_validation():
    f = RootedForest([None, 0, 0, 2])
    assert f.roots == (0,)
    assert f.children(0) == (1, 2)
    assert f.root_path(3) == [0, 2, 3]
    with pytest.raises(ValidationError):
        RootedForest([1, 0])  # 2-cycle
    with pytest.raises(ValidationError):
        RootedForest([None, 5])


def test_ancestor_order():
    f = RootedForest([None, 0, 1, 1, None])
    assert f.is_ancestor(0, 3) and f.is_ancestor(1, 2)
    assert not f.is_ancestor(3, 0)
    assert not f.is_ancestor(2, 3)  # siblings
    assert not f.is_ancestor(0, 4)  # different trees
    assert not f.is_ancestor(2, 2)


def test_dfs_times_examples():
    assert dfs_times(RootedForest([None])) == [(0, 1)]
    assert dfs_times(RootedForest([None, 0])) == [(0, 3), (1, 2)]
    times = dfs_times(RootedForest([None, None]))
    (x0, y0), (x1, y1) = times
    assert y0 < x1  # disjoint intervals, first root first


def test_dfs_times_nesting_property():
    rng = random.Random(5)
    for _ in range(30):
        f = random_forest(rng, rng.randrange(1, 40))
        times = dfs_times(f)
        for u in range(f.n):
            for v in range(f.n):
                if u == v:
                    continue
                xu, yu = times[u]
                xv, yv = times[v]
                assert xu < yu
                if f.is_ancestor(u, v):
                    assert xu < xv < yv < yu
                elif not f.is_ancestor(v, u):
                    assert yu < xv or yv < xu


def test_heavy_light_path():
    # In a 4-vertex path the leaf's subtree holds exactly half of its
    # parent's two vertices, so that last edge is light; the rest are heavy.
    hl = heavy_light(RootedForest([None, 0, 1, 2]))
    assert hl.heavy_edges == {(0, 1), (1, 2)}
    assert hl.light_edges == {(2, 3)}
    assert hl.paths == ((0, 1, 2), (3,))


def test_heavy_light_balanced_and_star():
    balanced = RootedForest([None, 0, 0, 1, 1, 2, 2])
    hl = heavy_light(balanced)
    assert not hl.heavy_edges and len(hl.light_edges) == 6
    assert all(len(p) == 1 for p in hl.paths)
    star = RootedForest([None, 0, 0, 0])
    hl = heavy_light(star)
    assert not hl.heavy_edges
    assert hl.paths == ((0,), (1,), (2,), (3,))


def test_heavy_light_covers_all_vertices():
    rng = random.Random(99)
    for _ in range(25):
        f = random_forest(rng, rng.randrange(1, 60))
        hl = heavy_light(f)
        seen = [v for p in hl.paths for v in p]
        assert sorted(seen) == list(range(f.n))
        for path in hl.paths:
            for a, b in zip(path, path[1:]):
                assert (a, b) in hl.heavy_edges


def _light_edges_on_root_paths(f, hl):
    sizes = f.subtree_sizes()
    worst = 0
    for v in range(f.n):
        path = f.root_path(v)
        light = sum(
            1 for a, b in zip(path, path[1:]) if (a, b) in hl.light_edges
        )
        worst = max(worst, light)
        root_size = sizes[path[0]]
        assert light <= int(math.log2(root_size)) if root_size > 1 else light == 0
    return worst


def test_heavy_light_log_bound_random():
    rng = random.Random(12)
    for _ in range(20):
        f = random_forest(rng, rng.randrange(2, 400))
        _light_edges_on_root_paths(f, heavy_light(f))


def test_heavy_light_log_bound_large():
    rng = random.Random(3)
    parent = [None] * 100_000
    for v in range(1, len(parent)):
        parent[v] = rng.randrange(v)
    f = RootedForest(parent)
    _light_edges_on_root_paths(f, heavy_light(f))
