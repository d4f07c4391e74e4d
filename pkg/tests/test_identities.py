import math
from fractions import Fraction
from itertools import permutations, product

import pytest

from cluster_forge.activity import build_gh
from cluster_forge.graph import (CapacityError, LabeledGraph, disjoint_union, enumerate_graphs, is_connected,
                                 random_graph, signed_connected_sum)
from cluster_forge.identities import (MAX_N_ENV, connected_height_vectors, continuum_identity,
                                      discrete_identity, discrete_weight, lambert_closed_form,
                                      lambert_coefficient, lambert_series, potts_both_sides,
                                      pressure_series_check, signed_connected_sum_dp,
                                      signed_sum_for_permutation)


def brute_discrete(n):
    return (-1) ** (n - 1) * sum((-1) ** G.n_edges for G in enumerate_graphs(n, connected_only=True))


@pytest.mark.parametrize("n, expected", [(2, 1), (3, 2), (4, 6)])
def test_discrete_examples(n, expected):
    assert brute_discrete(n) == expected
    for method in ("direct", "fixed_points"):
        r = discrete_identity(n, method)
        assert r.computed == expected and r.match


def test_discrete_n4_breakdown():
    by_edges = {}
    for G in enumerate_graphs(4, connected_only=True):
        by_edges[G.n_edges] = by_edges.get(G.n_edges, 0) + 1
    assert by_edges == {3: 16, 4: 15, 5: 6, 6: 1}


@pytest.mark.parametrize("n", range(2, 8))
def test_discrete_direct(n):
    assert discrete_identity(n, "direct").computed == math.factorial(n - 1)


@pytest.mark.parametrize("n", range(2, 11))
def test_discrete_fixed_points(n):
    assert discrete_identity(n, "fixed_points").computed == math.factorial(n - 1)


def test_discrete_parallel_matches():
    assert discrete_identity(6, "direct", workers=2).computed == 120


def test_discrete_capacity(monkeypatch):
    with pytest.raises(CapacityError):
        discrete_identity(1)
    with pytest.raises(CapacityError):
        discrete_identity(9)
    with pytest.raises(ValueError):
        discrete_identity(4, "nope")
    monkeypatch.setenv(MAX_N_ENV, "13")
    assert discrete_identity(13, "fixed_points").computed == math.factorial(12)


def test_discrete_weight_examples(rng):
    assert discrete_weight(LabeledGraph.empty(4), 3, 7) == 81
    assert discrete_weight(LabeledGraph.complete(3), 1, 0) == -1
    for _ in range(50):
        G = random_graph(rng.randint(1, 4), rng)
        H = random_graph(rng.randint(1, 4), rng)
        q, u = rng.randint(0, 4), rng.randint(-2, 3)
        assert discrete_weight(disjoint_union(G, H), q, u) == discrete_weight(G, q, u) * discrete_weight(H, q, u)


def test_potts_examples():
    K2 = LabeledGraph.complete(2)
    r = potts_both_sides(K2, 2, 0)
    assert r.computed == r.expected == 2
    for q in range(5):
        r = potts_both_sides(K2, q, 1)
        assert r.computed == r.expected == q * q
    r = potts_both_sides(LabeledGraph.complete(3), 3, 0)
    assert r.computed == r.expected == 6


def test_potts_rational_u():
    r = potts_both_sides(LabeledGraph.complete(3), 2, Fraction(1, 3))
    assert r.match and isinstance(r.computed, Fraction)


def test_potts_proper_colorings_oracle():
    # u = 0 counts proper colorings: q(q-1)...(q-n+1) on K_n
    for n in range(1, 5):
        for q in range(5):
            r = potts_both_sides(LabeledGraph.complete(n), q, 0)
            assert r.computed == r.expected == math.perm(q, n)


@pytest.mark.parametrize("n, expected", [(1, -2), (2, 9), (3, -64)])
@pytest.mark.parametrize("method", ["direct", "per_height", "trees"])
def test_continuum_examples(n, expected, method):
    r = continuum_identity(n, method)
    assert r.computed == expected and r.match


def test_continuum_n2_breakdown():
    from cluster_forge.polytope import mayer_weight
    weights = sorted(mayer_weight(G).value for G in enumerate_graphs(3, connected_only=True))
    assert weights == [-3, 4, 4, 4]


def test_continuum_capacity():
    with pytest.raises(CapacityError):
        continuum_identity(7, "direct")
    with pytest.raises(CapacityError):
        continuum_identity(5, "direct")  # needs workers
    with pytest.raises(CapacityError):
        continuum_identity(0, "trees")


def test_continuum_parallel_direct():
    assert continuum_identity(3, "direct", workers=2).computed == -64
    assert continuum_identity(4, "per_height", workers=2).computed == 625


@pytest.mark.parametrize("n", range(1, 4))
def test_dp_signed_sum_matches_enumeration(n):
    for h in product(range(-n, n + 1), repeat=n):
        gh = build_gh(h)
        assert signed_connected_sum_dp(gh) == signed_connected_sum(gh)[0]


def test_dp_signed_sum_random(rng):
    for _ in range(40):
        G = random_graph(rng.randint(1, 6), rng, 0.6)
        assert signed_connected_sum_dp(G) == signed_connected_sum(G)[0]


@pytest.mark.parametrize("n", range(1, 4))
def test_connected_height_filter(n):
    fast = {tuple(h) for h in connected_height_vectors(n).tolist()}
    slow = {h for h in product(range(-n, n + 1), repeat=n) if is_connected(build_gh(h))}
    assert fast == slow


@pytest.mark.parametrize("n", range(1, 4))
def test_sum_independent_of_permutation(n):
    values = {signed_sum_for_permutation(n, s) for s in permutations(range(1, n + 1))}
    assert values == {(-1) ** n * (n + 1) ** n}


@pytest.mark.parametrize("m, expected", [(1, Fraction(1)), (2, Fraction(-1)), (3, Fraction(3, 2))])
def test_lambert_examples(m, expected):
    assert lambert_coefficient(m) == expected


def test_lambert_series_satisfies_functional_equation():
    import sympy as sp
    z = sp.symbols("z")
    m = 8
    coeffs = lambert_series(m)
    L = sum(sp.Rational(c.numerator, c.denominator) * z ** k for k, c in enumerate(coeffs))
    rhs = sp.series(z * sp.exp(-L), z, 0, m + 1).removeO()
    assert sp.expand(rhs - L) == 0


@pytest.mark.parametrize("n, expected", [(1, Fraction(-1)), (2, Fraction(3, 2)), (3, Fraction(-8, 3))])
def test_pressure_series_examples(n, expected):
    r = pressure_series_check(n)
    assert r.match and r.computed == expected
    assert lambert_closed_form(n + 1) == expected
