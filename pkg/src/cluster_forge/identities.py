"""Verifiers for the cluster-weight identities.

Each identity is computed along more than one route, and a report records
the computed value next to the closed form it must equal exactly.
"""
from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from itertools import product
from typing import Sequence

import numpy as np

from ._parallel import ordered_map, split_range
from .activity import build_gh, psi
from .graph import (CapacityError, LabeledGraph, count_components, enumerate_graphs,
                    n_slots, signed_connected_sum)
from .polytope import _admissible_heights, _split_tree_edges, mayer_weight
from .trees import (count_increasing_trees, descent_heights, enumerate_increasing_trees,
                    h_increasing_counts, rooted_cayley_parent_arrays, scaled_centroids)

MAX_N_ENV = "CLUSTER_FORGE_MAX_N"

DISCRETE_LIMITS = {"direct": 8, "fixed_points": 12}
CONTINUUM_LIMITS = {"direct": 5, "per_height": 5, "trees": 7}


def capacity(limit: int) -> int:
    """Effective limit, raised by the override variable when it is set."""
    override = os.environ.get(MAX_N_ENV)
    if override:
        return max(limit, int(override))
    return limit


@dataclass
class IdentityReport:
    name: str
    params: dict
    computed: int | Fraction
    expected: int | Fraction
    work: dict = field(default_factory=dict)
    millis: float = 0.0

    @property
    def match(self) -> bool:
        return self.computed == self.expected


def _check_method(method: str, limits: dict):
    if method not in limits:
        raise ValueError(f"unknown method {method!r}; expected one of {sorted(limits)}")


# --- discrete gas -------------------------------------------------------

def discrete_weight(G: LabeledGraph, q, u):
    """First Mayer weight of the discrete gas: q^c(G) (u-1)^e(G)."""
    return q ** count_components(G) * (u - 1) ** G.n_edges


def _signed_sum_range(n: int, bounds: tuple[int, int]) -> tuple[int, int]:
    return signed_connected_sum(LabeledGraph.complete(n), start=bounds[0], stop=bounds[1])


def discrete_identity(n: int, method: str = "direct", workers: int = 1) -> IdentityReport:
    """(-1)^(n-1) times the signed count of connected graphs on n vertices.

    ``direct`` enumerates all 2^C(n,2) spanning subgraphs of K_n.
    ``fixed_points`` counts only the graphs the killing involution leaves
    fixed, which are the increasing trees; all have n-1 edges.
    """
    _check_method(method, DISCRETE_LIMITS)
    if not 2 <= n <= capacity(DISCRETE_LIMITS[method]):
        raise CapacityError(f"discrete/{method} needs 2 <= n <= {capacity(DISCRETE_LIMITS[method])}")
    t0 = time.perf_counter()
    if method == "direct":
        total = 1 << n_slots(n)
        parts = ordered_map(partial(_signed_sum_range, n), split_range(total, workers), workers)
        signed = sum(s for s, _ in parts)
        work = {"graphs": total, "connected": sum(c for _, c in parts)}
        computed = (-1) ** (n - 1) * signed
    else:
        if n <= 7:
            # small enough to walk the trees and confirm each is a fixed point
            trees = list(enumerate_increasing_trees(n))
            assert all(psi(T) == T for T in trees)
            n_fixed = len(trees)
        else:
            n_fixed = count_increasing_trees(n)
        computed = (-1) ** (n - 1) * (-1) ** (n - 1) * n_fixed
        work = {"fixed_points": n_fixed}
    return IdentityReport("discrete", {"n": n, "method": method, "workers": workers},
                          computed, math.factorial(n - 1), work,
                          (time.perf_counter() - t0) * 1e3)


def potts_colorings_side(H: LabeledGraph, q: int, u):
    """Sum over colorings c: V -> [q] of u^(number of monochromatic edges)."""
    edges = H.edge_list()
    total = 0
    for c in product(range(q), repeat=H.n_vertices):
        mono = sum(1 for i, j in edges if c[i] == c[j])
        total += u ** mono
    return total


def potts_subgraph_side(H: LabeledGraph, q, u):
    total = 0
    host = H.edges
    sub = host
    while True:
        total += discrete_weight(LabeledGraph(H.n_vertices, sub), q, u)
        if sub == 0:
            break
        sub = (sub - 1) & host
    return total


def potts_both_sides(H: LabeledGraph, q, u) -> IdentityReport:
    if H.n_vertices > capacity(5):
        raise CapacityError(f"coloring side limited to {capacity(5)} vertices")
    if q < 0:
        raise ValueError("q must be non-negative")
    t0 = time.perf_counter()
    lhs = potts_colorings_side(H, q, u)
    rhs = potts_subgraph_side(H, q, u)
    return IdentityReport("potts", {"n_vertices": H.n_vertices, "edges": H.edge_list(), "q": q, "u": u},
                          lhs, rhs,
                          {"colorings": q ** H.n_vertices, "subgraphs": 1 << H.n_edges},
                          (time.perf_counter() - t0) * 1e3)


# --- continuum gas ------------------------------------------------------

def _weight_sum_range(n: int, bounds: tuple[int, int]) -> tuple[Fraction, int]:
    total = Fraction(0)
    count = 0
    for G in enumerate_graphs(n + 1, connected_only=True, start=bounds[0], stop=bounds[1]):
        total += mayer_weight(G).value
        count += 1
    return total, count


def signed_connected_sum_dp(H: LabeledGraph) -> int:
    """Sum of (-1)^e(G) over connected spanning subgraphs of H, by subset recursion.

    Over all spanning subgraphs of an induced subgraph ``H[S]`` the signs
    cancel unless ``H[S]`` has no edges.  Splitting off the component that
    holds the least vertex of ``S`` gives the connected part.
    """
    m = H.n_vertices
    adj = H.adjacency()
    full = 1 << m
    independent = [True] * full
    for S in range(1, full):
        low = (S & -S).bit_length() - 1
        rest = S & ~(1 << low)
        independent[S] = independent[rest] and not adj[low] & rest
    conn = [0] * full
    for S in range(1, full):
        low = S & -S
        rest = S ^ low
        total = 1 if independent[S] else 0
        # blocks containing the least vertex, strictly inside S
        sub = rest
        while sub:
            sub = (sub - 1) & rest
            block = sub | low
            if independent[S ^ block]:
                total -= conn[block]
        conn[S] = total
    return conn[full - 1]


def connected_height_vectors(n: int, bound: int | None = None) -> np.ndarray:
    """Height vectors in ``[-bound, bound]^n`` whose G_h is connected.

    G_h joins centroids less than 1 apart, so it is connected exactly when
    consecutive sorted centroids are less than 1 apart.
    """
    bound = n if bound is None else bound
    side = 2 * bound + 1
    N = side ** n
    codes = np.arange(N, dtype=np.int64)
    h = np.empty((N, n), dtype=np.int64)
    for t in range(n - 1, -1, -1):
        h[:, t] = codes % side - bound
        codes //= side
    c = np.sort(scaled_centroids(h), axis=1)
    ok = (np.diff(c, axis=1) < n + 1).all(axis=1)
    return h[ok]


def _per_height_sum(hs: Sequence[Sequence[int]]) -> tuple[int, int]:
    total = 0
    for h in hs:
        total += signed_connected_sum_dp(build_gh(h))
    return total, len(hs)


def _trees_method(n: int) -> tuple[int, dict]:
    m = n + 1
    parents = rooted_cayley_parent_arrays(m)
    h = descent_heights(parents)
    # each tree must be h-increasing for its own h: every parent sits below
    # its child and within distance 1
    c = scaled_centroids(h)
    rows = np.arange(len(c))[:, None]
    cp = c[rows, parents]
    non_root = parents != np.arange(m)[None, :]
    ok = np.where(non_root, (cp < c) & (c - cp < m), True).all(axis=1)
    assert ok.all(), "a Cayley tree failed to be h-increasing for its descent vector"
    assert np.abs(h).max(initial=0) <= n
    # injectivity onto (h, tree) pairs and exhaustion of each fibre: the trees
    # sent to h must be all h-increasing trees for h
    side = 2 * n + 1
    codes = ((h + n) * side ** np.arange(n - 1, -1, -1)).sum(axis=1)
    ucodes, counts = np.unique(codes, return_counts=True)
    uniq = np.stack([ucodes // side ** k % side - n for k in range(n - 1, -1, -1)], axis=1)
    fibre_ok = bool(np.array_equal(h_increasing_counts(uniq), counts))
    assert fibre_ok, "descent map fibres disagree with h-increasing tree counts"
    return len(parents), {"rooted_trees": len(parents), "height_vectors": len(uniq)}


def continuum_identity(n: int, method: str = "trees", workers: int = 1) -> IdentityReport:
    """Sum of Mayer weights over connected graphs on ``0..n``.

    ``direct`` adds exact weights graph by graph.  ``per_height`` swaps the
    order of summation: for each height vector it adds the signs of the
    connected subgraphs of G_h.  ``trees`` counts rooted Cayley trees via
    their descent vectors, checking each one is h-increasing.
    """
    _check_method(method, CONTINUUM_LIMITS)
    limit = capacity(CONTINUUM_LIMITS[method])
    if method == "direct" and n == 5 and workers == 1 and limit == 5:
        limit = 4
    if not 1 <= n <= limit:
        raise CapacityError(f"continuum/{method} needs 1 <= n <= {limit}"
                            + (" (n=5 requires --workers > 1)" if method == "direct" and n == 5 else ""))
    t0 = time.perf_counter()
    if method == "direct":
        total_masks = 1 << n_slots(n + 1)
        parts = ordered_map(partial(_weight_sum_range, n), split_range(total_masks, workers), workers)
        value = sum((v for v, _ in parts), Fraction(0))
        assert value.denominator == 1
        computed = int(value)
        work = {"graphs": total_masks, "connected": sum(c for _, c in parts)}
    elif method == "per_height":
        hs = connected_height_vectors(n).tolist()
        chunks = [hs[lo:hi] for lo, hi in split_range(len(hs), workers)]
        parts = ordered_map(_per_height_sum, chunks, workers)
        computed = sum(v for v, _ in parts)
        work = {"height_vectors": (2 * n + 1) ** n, "connected_gh": len(hs)}
    else:
        count, work = _trees_method(n)
        computed = (-1) ** n * count
    return IdentityReport("continuum", {"n": n, "method": method, "workers": workers},
                          computed, (-1) ** n * (n + 1) ** n, work,
                          (time.perf_counter() - t0) * 1e3)


def signed_sum_for_permutation(n: int, sigma: Sequence[int]) -> int:
    """Sum of (-1)^e(G) over pairs (h, G) with the cell (h, sigma) inside P_G."""
    total = 0
    for G in enumerate_graphs(n + 1, connected_only=True):
        tree, extra = _split_tree_edges(G)
        k = sum(1 for _ in _admissible_heights(G, sigma, tree, extra))
        total += k * (-1) ** G.n_edges
    return total


# --- Lambert series -----------------------------------------------------

def _series_exp(f: list[Fraction]) -> list[Fraction]:
    """exp of a truncated series with zero constant term."""
    m = len(f) - 1
    g = [Fraction(0)] * (m + 1)
    g[0] = Fraction(1)
    for k in range(1, m + 1):
        g[k] = sum((j * f[j] * g[k - j] for j in range(1, k + 1)), Fraction(0)) / k
    return g


def lambert_series(m: int) -> list[Fraction]:
    """Coefficients 0..m of L(z) = z exp(-L(z)) by fixed-point iteration."""
    L = [Fraction(0)] * (m + 1)
    if m >= 1:
        L[1] = Fraction(1)
    for _ in range(m):
        e = _series_exp([-c for c in L])
        nxt = [Fraction(0)] + e[:m]
        if nxt == L:
            break
        L = nxt
    return L


def lambert_closed_form(m: int) -> Fraction:
    return Fraction((-1) ** (m - 1) * m ** (m - 1), math.factorial(m))


def lambert_coefficient(m: int) -> Fraction:
    if m < 1:
        raise ValueError("m must be >= 1")
    value = lambert_series(m)[m]
    if value != lambert_closed_form(m):
        raise ArithmeticError(f"series iteration and closed form disagree at m={m}")
    return value


def pressure_series_check(n: int, method: str = "direct") -> IdentityReport:
    """[z^(n+1)] L(z) against the weight sum over connected graphs on 0..n."""
    if not 1 <= n <= capacity(4):
        raise CapacityError(f"pressure check needs 1 <= n <= {capacity(4)}")
    t0 = time.perf_counter()
    inner = continuum_identity(n, method)
    lhs = lambert_series(n + 1)[n + 1]
    rhs = Fraction(inner.computed, math.factorial(n + 1))
    return IdentityReport("pressure", {"n": n, "method": method}, lhs, rhs,
                          {"continuum": inner.work}, (time.perf_counter() - t0) * 1e3)

