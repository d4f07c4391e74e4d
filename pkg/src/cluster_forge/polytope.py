"""Exact Mayer weights of the one-dimensional hard-core gas.

For a connected graph G on ``0..n`` the weight is ``(-1)^e(G) Vol(P_G)``,
where ``P_G`` is the set of ``x`` in R^n with ``x_0 = 0`` and
``|x_i - x_j| <= 1`` along every edge.  The volume is computed exactly by
counting unit cells: a cell fixes the integer parts ``h`` of the
coordinates and the order ``sigma`` of their fractional parts, has volume
``1/n!``, and lies either inside ``P_G`` or meets it in a null set.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from itertools import permutations, product
from typing import Iterator, Sequence

import numpy as np

from ._parallel import chunked, ordered_map, split_range
from .activity import ContractError
from .graph import LabeledGraph, is_connected

Permutation = tuple[int, ...]


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _check_sizes(h: Sequence[int] | None, sigma: Sequence[int], G: LabeledGraph):
    n = G.n_vertices - 1
    if len(sigma) != n or (h is not None and len(h) != n):
        raise ValueError(f"size mismatch: graph on 0..{n}, |sigma|={len(sigma)}"
                         + ("" if h is None else f", |h|={len(h)}"))


def is_permutation(sigma: Sequence[int]) -> bool:
    return sorted(sigma) == list(range(1, len(sigma) + 1))


def inverse_permutation(sigma: Sequence[int]) -> Permutation:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma, start=1):
        inv[s - 1] = i
    return tuple(inv)


def permute_heights(h: Sequence[int], sigma: Sequence[int]) -> tuple[int, ...]:
    """``(h_{sigma(1)}, ..., h_{sigma(n)})``."""
    return tuple(h[s - 1] for s in sigma)


def subpolytope_in(h: Sequence[int], sigma: Sequence[int], G: LabeledGraph) -> bool:
    """Is the unit cell ``(h, sigma)`` contained in P_G?

    Along every edge ``(i, j)`` the integer parts must satisfy
    ``h_i - h_j in {0, sign(sigma(j) - sigma(i))}``, with ``h_0 = 0`` and
    ``sigma(0) = 0``.
    """
    _check_sizes(h, sigma, G)
    hf = (0, *h)
    sf = (0, *sigma)
    for i, j in G.edge_list():
        d = hf[i] - hf[j]
        if d != 0 and d != _sign(sf[j] - sf[i]):
            return False
    return True


def _bfs_tree(G: LabeledGraph) -> list[tuple[int, int]]:
    """(parent, child) pairs of a BFS spanning tree rooted at 0, in BFS order."""
    adj = G.adjacency()
    seen = {0}
    order = []
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for u in range(G.n_vertices):
            if adj[v] >> u & 1 and u not in seen:
                seen.add(u)
                order.append((v, u))
                queue.append(u)
    return order


def _admissible_heights(G: LabeledGraph, sigma: Sequence[int],
                        tree: list[tuple[int, int]], extra: list[tuple[int, int]]) -> Iterator[tuple[int, ...]]:
    n = G.n_vertices - 1
    sf = (0, *sigma)
    steps = []
    for p, c in tree:
        s = _sign(sf[c] - sf[p])
        assert s != 0
        steps.append((p, c, s))
    for choice in product((0, 1), repeat=len(steps)):
        hf = [0] * (n + 1)
        for (p, c, s), bit in zip(steps, choice):
            hf[c] = hf[p] - s * bit
        ok = True
        for i, j in extra:
            d = hf[i] - hf[j]
            if d != 0 and d != _sign(sf[j] - sf[i]):
                ok = False
                break
        if ok:
            assert all(abs(x) <= n for x in hf)
            yield tuple(hf[1:])


def _split_tree_edges(G: LabeledGraph):
    tree = _bfs_tree(G)
    tree_set = {(min(e), max(e)) for e in tree}
    extra = [e for e in G.edge_list() if e not in tree_set]
    return tree, extra


def _require_connected(G: LabeledGraph):
    if G.n_vertices < 2:
        raise ContractError("need a graph on 0..n with n >= 1")
    if not is_connected(G):
        raise ContractError("P_G has infinite volume for a disconnected graph")


def enumerate_subpolytopes(G: LabeledGraph) -> Iterator[tuple[tuple[int, ...], Permutation]]:
    """Yield every cell ``(h, sigma)`` inside P_G exactly once.

    Permutations come in lexicographic order.  For each, the heights are
    propagated along a BFS spanning tree: a child either shares its
    parent's integer part or sits one step away in the direction fixed by
    sigma, and the non-tree edges filter the result.
    """
    _require_connected(G)
    n = G.n_vertices - 1
    tree, extra = _split_tree_edges(G)
    for sigma in permutations(range(1, n + 1)):
        for h in _admissible_heights(G, sigma, tree, extra):
            yield h, sigma


def _count_for_perms(G: LabeledGraph, perms: Sequence[Permutation]) -> int:
    tree, extra = _split_tree_edges(G)
    return sum(1 for sigma in perms for _ in _admissible_heights(G, sigma, tree, extra))


def count_subpolytopes(G: LabeledGraph, workers: int = 1) -> int:
    _require_connected(G)
    perms = list(permutations(range(1, G.n_vertices)))
    if workers == 1:
        return _count_for_perms(G, perms)
    return sum(ordered_map(partial(_count_for_perms, G), chunked(perms, workers), workers))


def exact_volume(G: LabeledGraph, workers: int = 1) -> Fraction:
    n = G.n_vertices - 1
    return Fraction(count_subpolytopes(G, workers), math.factorial(n))


@dataclass(frozen=True)
class MayerWeight:
    sign: int
    volume: Fraction

    @property
    def value(self) -> Fraction:
        return self.sign * self.volume


def mayer_weight(G: LabeledGraph, workers: int = 1) -> MayerWeight:
    vol = exact_volume(G, workers)
    assert vol > 0
    return MayerWeight(-1 if G.n_edges % 2 else 1, vol)


# --- Monte Carlo --------------------------------------------------------

def _mc_hits(G: LabeledGraph, seed: int, worker: int, samples: int, batch: int = 1 << 17) -> int:
    n = G.n_vertices - 1
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(worker,)))
    edges = G.edge_list()
    hits = 0
    left = samples
    while left:
        k = min(batch, left)
        x = np.zeros((k, n + 1))
        x[:, 1:] = rng.uniform(-n, n, size=(k, n))
        ok = np.ones(k, dtype=bool)
        for i, j in edges:
            ok &= np.abs(x[:, i] - x[:, j]) <= 1.0
        hits += int(ok.sum())
        left -= k
    return hits


def _mc_task(args):
    G, seed, worker, samples = args
    return _mc_hits(G, seed, worker, samples)


def mc_volume(G: LabeledGraph, samples: int, seed: int = 0, workers: int = 1) -> tuple[float, float]:
    """Hit-or-miss estimate of Vol(P_G) over the box [-n, n]^n.

    Each worker draws its share of the samples from its own stream, derived
    from ``(seed, worker index)``, so the estimate is reproducible for a
    fixed worker count.  Returns ``(estimate, standard_error)``.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    _require_connected(G)
    n = G.n_vertices - 1
    tasks = [(G, seed, w, hi - lo) for w, (lo, hi) in enumerate(split_range(samples, workers))]
    hits = sum(ordered_map(_mc_task, tasks, workers))
    box = float((2 * n) ** n)
    p = hits / samples
    return box * p, box * math.sqrt(p * (1 - p) / samples)
