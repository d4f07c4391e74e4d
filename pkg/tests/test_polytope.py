import math
from fractions import Fraction
from itertools import permutations, product

import numpy as np
import pytest
from scipy.spatial import ConvexHull, HalfspaceIntersection

from cluster_forge.activity import ContractError
from cluster_forge.graph import LabeledGraph, enumerate_graphs, relabel
from cluster_forge.polytope import (count_subpolytopes, enumerate_subpolytopes, exact_volume,
                                    inverse_permutation, mayer_weight, mc_volume, permute_heights,
                                    subpolytope_in)

EDGE = LabeledGraph.from_edges(2, [(0, 1)])
K3 = LabeledGraph.complete(3)
PATH = LabeledGraph.from_edges(3, [(0, 1), (1, 2)])

# the six cells of P_{K3} listed with the decomposition figure
K3_CELLS = {((-1, -1), (1, 2)), ((-1, -1), (2, 1)), ((0, -1), (1, 2)),
            ((-1, 0), (2, 1)), ((0, 0), (1, 2)), ((0, 0), (2, 1))}


def hull_volume(G: LabeledGraph) -> float:
    """Volume of P_G from its H-representation, independent of cell counting."""
    n = G.n_vertices - 1
    rows = []
    for i, j in G.edge_list():
        a = np.zeros(n)
        if i:
            a[i - 1] += 1
        if j:
            a[j - 1] -= 1
        rows.append([*a, -1.0])
        rows.append([*(-a), -1.0])
    if n == 1:
        return 2.0
    hs = HalfspaceIntersection(np.array(rows), np.zeros(n))
    return ConvexHull(hs.intersections).volume


def test_subpolytope_in_single_edge():
    assert subpolytope_in((0,), (1,), EDGE)
    assert subpolytope_in((-1,), (1,), EDGE)
    assert not subpolytope_in((1,), (1,), EDGE)


def test_subpolytope_in_k3_exhaustive():
    passing = {(h, s) for s in permutations((1, 2)) for h in product(range(-3, 4), repeat=2)
               if subpolytope_in(h, s, K3)}
    assert passing == K3_CELLS


def test_subpolytope_in_empty_graph():
    G = LabeledGraph.empty(4)
    for s in permutations((1, 2, 3)):
        for h in product(range(-2, 3), repeat=3):
            assert subpolytope_in(h, s, G)


def test_subpolytope_size_mismatch():
    with pytest.raises(ValueError):
        subpolytope_in((0,), (1, 2), K3)


def test_exact_volume_examples():
    assert exact_volume(EDGE) == 2
    assert exact_volume(K3) == 3
    assert exact_volume(PATH) == 4


def test_exact_volume_disconnected():
    with pytest.raises(ContractError):
        exact_volume(LabeledGraph.from_edges(3, [(0, 1)]))


def test_mayer_weight_examples():
    assert mayer_weight(K3).value == -3
    assert mayer_weight(EDGE).value == -2
    assert mayer_weight(PATH).value == 4
    w = mayer_weight(K3)
    assert w.sign == -1 and w.volume == 3


def test_enumerate_subpolytopes_examples():
    assert set(enumerate_subpolytopes(K3)) == K3_CELLS
    assert list(enumerate_subpolytopes(EDGE)) == [((0,), (1,)), ((-1,), (1,))]


@pytest.mark.parametrize("n", range(1, 5))
def test_cell_count_consistency(n):
    for G in enumerate_graphs(n + 1, connected_only=True):
        cells = list(enumerate_subpolytopes(G))
        assert len(cells) == len(set(cells))
        vol = exact_volume(G)
        assert vol > 0
        assert Fraction(len(cells), math.factorial(n)) == vol
        assert all(subpolytope_in(h, s, G) for h, s in cells)
        assert all(abs(x) <= n for h, _ in cells for x in h)


@pytest.mark.parametrize("n", range(1, 4))
def test_cells_found_by_propagation_match_box_scan(n):
    for G in enumerate_graphs(n + 1, connected_only=True):
        scan = {(h, s) for s in permutations(range(1, n + 1))
                for h in product(range(-n - 1, n + 2), repeat=n) if subpolytope_in(h, s, G)}
        assert scan == set(enumerate_subpolytopes(G))


@pytest.mark.parametrize("n", range(1, 5))
def test_volume_matches_convex_hull(n):
    for G in enumerate_graphs(n + 1, connected_only=True):
        assert float(exact_volume(G)) == pytest.approx(hull_volume(G), rel=1e-9)


@pytest.mark.parametrize("n", range(1, 4))
def test_relabeling_lemma(n):
    for G in enumerate_graphs(n + 1):
        for sigma in permutations(range(1, n + 1)):
            inv = inverse_permutation(sigma)
            H = relabel(G, sigma)
            ident = tuple(range(1, n + 1))
            for h in product(range(-n, n + 1), repeat=n):
                assert subpolytope_in(h, sigma, G) == subpolytope_in(permute_heights(h, inv), ident, H)


@pytest.mark.parametrize("n", range(1, 4))
def test_volume_monotone(n):
    graphs = list(enumerate_graphs(n + 1, connected_only=True))
    vol = {G: exact_volume(G) for G in graphs}
    for G in graphs:
        for H in graphs:
            if G.issubgraph(H):
                assert vol[G] >= vol[H]


def test_parallel_count_matches_serial():
    G = LabeledGraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)])
    assert count_subpolytopes(G, workers=2) == count_subpolytopes(G)


@pytest.mark.parametrize("G, exact", [(K3, 3.0), (EDGE, 2.0)])
def test_mc_volume_agrees(G, exact):
    est, se = mc_volume(G, 1_000_000, seed=11)
    assert abs(est - exact) <= 4 * se


def test_mc_deterministic():
    a = mc_volume(PATH, 50_000, seed=3)
    b = mc_volume(PATH, 50_000, seed=3)
    assert a == b
    assert mc_volume(PATH, 50_000, seed=4) != a


def test_mc_worker_split_reproducible():
    a = mc_volume(K3, 40_000, seed=5, workers=2)
    assert a == mc_volume(K3, 40_000, seed=5, workers=2)


def test_mc_rejects_zero_samples():
    with pytest.raises(ValueError):
        mc_volume(K3, 0)
