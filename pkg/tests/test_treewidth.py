import numpy as np
import pytest

from oracles import random_graph, subset_dp_treewidth
from qldpc_bounds.codes import make_family
from qldpc_bounds.connectivity import build_connectivity
from qldpc_bounds.errors import BudgetExceeded
from qldpc_bounds.generators import make_grid
from qldpc_bounds.graph import Graph
from qldpc_bounds.treewidth import (
    TreeDecomposition,
    decomposition_from_order,
    exact_treewidth,
    heuristic_treewidth_upper,
    minor_min_width,
    validate_tree_decomposition,
)


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def random_tree(rng, n):
    return Graph.from_edges(n, [(v, int(rng.integers(v))) for v in range(1, n)])


def test_exact_anchors():
    path = Graph.from_edges(6, [(i, i + 1) for i in range(5)])
    assert exact_treewidth(path)[0] == 1
    assert exact_treewidth(cycle(6))[0] == 2
    assert exact_treewidth(make_grid(2, 3).graph)[0] == 3
    assert exact_treewidth(Graph.empty(4))[0] == 0


def test_exact_matches_subset_dp():
    rng = np.random.default_rng(5)
    for _ in range(40):
        g = random_graph(rng, int(rng.integers(1, 10)), float(rng.uniform(0.2, 0.7)))
        tw, td = exact_treewidth(g)
        assert tw == subset_dp_treewidth(g)
        assert validate_tree_decomposition(g, td) is None
        assert td.width == tw


def test_heuristics_bound_exact_from_above():
    rng = np.random.default_rng(8)
    for _ in range(40):
        g = random_graph(rng, int(rng.integers(2, 13)), float(rng.uniform(0.15, 0.6)))
        tw, _ = exact_treewidth(g)
        assert minor_min_width(list(g.masks), (1 << g.n) - 1) <= tw
        for strategy in ("min_degree", "min_fill"):
            ub, td = heuristic_treewidth_upper(g, strategy)
            assert ub >= tw and td.width == ub
            assert validate_tree_decomposition(g, td) is None


def test_trees_have_width_one():
    rng = np.random.default_rng(2)
    for _ in range(10):
        g = random_tree(rng, 50)
        for strategy in ("min_degree", "min_fill"):
            assert heuristic_treewidth_upper(g, strategy)[0] == 1


def test_code_graphs():
    assert heuristic_treewidth_upper(make_grid(2, 3).graph, "min_fill")[0] == 3
    surface = build_connectivity(make_family("surface", 3))
    assert heuristic_treewidth_upper(surface, "min_fill")[0] <= 11
    assert exact_treewidth(surface)[0] == 5
    assert exact_treewidth(build_connectivity(make_family("toric", 2)))[0] == 6


def test_exact_budget():
    with pytest.raises(BudgetExceeded):
        exact_treewidth(make_grid(2, 5).graph)
    with pytest.raises(BudgetExceeded):
        exact_treewidth(make_grid(2, 4).graph, budget=3)


def test_trivial_and_broken_decompositions():
    g = cycle(5)
    one = TreeDecomposition({0: frozenset(range(5))}, ())
    assert validate_tree_decomposition(g, one) is None and one.width == 4
    loop = TreeDecomposition({0: frozenset(range(5)), 1: frozenset({0}), 2: frozenset({0})}, ((0, 1), (1, 2), (2, 0)))
    assert validate_tree_decomposition(g, loop).prop == "not_a_forest"
    stray = TreeDecomposition({0: frozenset(range(6))}, ())
    assert validate_tree_decomposition(g, stray).prop == "unknown_vertex"


def test_order_decomposition_rejects_bad_order():
    with pytest.raises(ValueError):
        decomposition_from_order(cycle(4), [0, 1])
