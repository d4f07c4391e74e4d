"""Increasing trees, h-increasing trees and rooted Cayley trees.

A rooted Cayley tree on ``0..n`` determines a height vector by counting
descents along root paths; with that vector the tree is h-increasing, and
every h-increasing tree arises this way exactly once.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from .activity import build_gh, centroid_gap_below_one, centroid_key, min_centroid_vertex
from .graph import LabeledGraph, is_connected


@dataclass(frozen=True)
class RootedTree:
    """Tree on ``0..n_vertices-1``; ``parent[root]`` is None."""

    root: int
    parent: tuple[int | None, ...]

    def __post_init__(self):
        m = len(self.parent)
        if not 0 <= self.root < m or self.parent[self.root] is not None:
            raise ValueError("root must be a vertex whose parent is None")
        for v in range(m):
            seen = 0
            u = v
            while u != self.root:
                p = self.parent[u]
                if p is None or not 0 <= p < m or seen > m:
                    raise ValueError(f"parent pointers from {v} do not reach the root")
                u = p
                seen += 1

    @property
    def n_vertices(self) -> int:
        return len(self.parent)

    def edges(self) -> list[tuple[int, int]]:
        return [(p, c) for c, p in enumerate(self.parent) if p is not None]

    def graph(self) -> LabeledGraph:
        return LabeledGraph.from_edges(self.n_vertices, self.edges())

    @classmethod
    def from_graph(cls, G: LabeledGraph, root: int) -> "RootedTree":
        if not is_tree(G):
            raise ValueError("graph is not a tree")
        return cls(root, tuple(_parents_from(G, root)))


def is_tree(G: LabeledGraph) -> bool:
    return G.n_edges == G.n_vertices - 1 and is_connected(G)


def _parents_from(G: LabeledGraph, root: int) -> list[int | None]:
    adj = G.adjacency()
    parent: list[int | None] = [None] * G.n_vertices
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for u in range(G.n_vertices):
            if adj[v] >> u & 1 and u not in seen:
                seen.add(u)
                parent[u] = v
                queue.append(u)
    return parent


# --- increasing trees (labels 1..n stored as 0..n-1) --------------------

def is_increasing_tree(G: LabeledGraph) -> bool:
    """Labels increase along every path leaving the smallest vertex."""
    if not is_tree(G):
        return False
    parent = _parents_from(G, 0)
    return all(p < v for v, p in enumerate(parent) if p is not None)


def enumerate_increasing_trees(n: int) -> Iterator[LabeledGraph]:
    """Each vertex ``k >= 1`` picks a parent among ``0..k-1``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    for parents in product(*(range(k) for k in range(1, n))):
        yield LabeledGraph.from_edges(n, ((p, k) for k, p in enumerate(parents, start=1)))


def count_increasing_trees(n: int) -> int:
    total = 1
    for k in range(1, n):
        total *= k
    return total


# --- h-increasing trees -------------------------------------------------

def is_h_increasing_tree(G: LabeledGraph, h: Sequence[int]) -> bool:
    if G.n_vertices != len(h) + 1 or not is_tree(G):
        return False
    if not G.issubgraph(build_gh(h)):
        return False
    root = min_centroid_vertex(h)
    parent = _parents_from(G, root)
    return all(centroid_key(h, p) < centroid_key(h, v)
               for v, p in enumerate(parent) if p is not None)


def _parent_options(h: Sequence[int]) -> tuple[int, list[tuple[int, list[int]]]]:
    order = sorted(range(len(h) + 1), key=lambda i: centroid_key(h, i))
    options = []
    for pos in range(1, len(order)):
        v = order[pos]
        options.append((v, [u for u in order[:pos] if centroid_gap_below_one(h, u, v)]))
    return order[0], options


def enumerate_h_increasing_trees(h: Sequence[int]) -> Iterator[LabeledGraph]:
    """Every non-root vertex picks a parent of smaller centroid within distance 1.

    Parents are drawn from vertices earlier in centroid order, so no choice
    can close a cycle.
    """
    _, options = _parent_options(h)
    verts = [v for v, _ in options]
    for choice in product(*(opts for _, opts in options)):
        yield LabeledGraph.from_edges(len(h) + 1, zip(choice, verts))


def count_h_increasing_trees(h: Sequence[int]) -> int:
    total = 1
    for _, opts in _parent_options(h)[1]:
        total *= len(opts)
    return total


# --- rooted Cayley trees ------------------------------------------------

def tree_to_height(T: RootedTree) -> tuple[int, ...]:
    """Height vector making T h-increasing with its root at the lowest centroid.

    ``h_i`` is the number of descents on the root-to-i label sequence, minus
    the same count for vertex 0.
    """
    m = T.n_vertices
    desc: list[int | None] = [None] * m
    desc[T.root] = 0

    def resolve(v):
        path = []
        while desc[v] is None:
            path.append(v)
            v = T.parent[v]
        for u in reversed(path):
            p = T.parent[u]
            desc[u] = desc[p] + (u < p)

    for v in range(m):
        resolve(v)
    return tuple(desc[i] - desc[0] for i in range(1, m))


def prufer_decode(seq: Sequence[int], m: int) -> list[tuple[int, int]]:
    """Edges of the labeled tree on ``0..m-1`` with Prufer sequence ``seq``."""
    degree = [1] * m
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = degree.index(1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u = degree.index(1)
    v = degree.index(1, u + 1)
    edges.append((u, v))
    return edges


def enumerate_rooted_cayley_trees(m: int) -> Iterator[RootedTree]:
    """All ``m**(m-1)`` rooted labeled trees on ``0..m-1``.

    Unrooted trees come from Prufer sequences in lexicographic order; each
    is then rooted at every vertex in turn.
    """
    if m < 1:
        raise ValueError("need at least one vertex")
    if m == 1:
        yield RootedTree(0, (None,))
        return
    for seq in product(range(m), repeat=m - 2):
        G = LabeledGraph.from_edges(m, prufer_decode(seq, m))
        for root in range(m):
            yield RootedTree(root, tuple(_parents_from(G, root)))


def rooted_cayley_parent_arrays(m: int) -> np.ndarray:
    """All rooted trees on ``0..m-1`` as an ``(m**(m-1), m)`` parent array.

    The root points at itself.  Rows are ordered by Prufer sequence, then by
    root, matching :func:`enumerate_rooted_cayley_trees`.
    """
    if m == 1:
        return np.zeros((1, 1), dtype=np.int64)
    k = m - 2
    N = m ** k
    codes = np.arange(N, dtype=np.int64)
    seqs = np.empty((N, k), dtype=np.int64)
    for t in range(k - 1, -1, -1):
        seqs[:, t] = codes % m
        codes //= m
    rows = np.arange(N)
    degree = np.ones((N, m), dtype=np.int64)
    for t in range(k):
        np.add.at(degree, (rows, seqs[:, t]), 1)
    # orient each Prufer edge leaf -> neighbour; the last survivor m-1 is the root
    parent = np.empty((N, m), dtype=np.int64)
    for t in range(k):
        leaf = np.argmax(degree == 1, axis=1)
        parent[rows, leaf] = seqs[:, t]
        degree[rows, leaf] -= 1
        degree[rows, seqs[:, t]] -= 1
    leaf = np.argmax(degree == 1, axis=1)
    parent[rows, leaf] = m - 1
    parent[:, m - 1] = m - 1

    out = np.empty((N, m, m), dtype=np.int64)
    for r in range(m):
        new = parent.copy()
        cur = np.full(N, r)
        prev = np.full(N, r)
        active = np.ones(N, dtype=bool)
        # reverse the path from r up to the old root
        for _ in range(m):
            if not active.any():
                break
            nxt = parent[rows, cur]
            new[rows[active], cur[active]] = prev[active]
            done = nxt == cur
            prev = np.where(active, cur, prev)
            cur = np.where(active, nxt, cur)
            active &= ~done
        out[:, r, :] = new
    return out.reshape(N * m, m)


def descent_heights(parents: np.ndarray) -> np.ndarray:
    """Vectorized :func:`tree_to_height` over rows of self-rooted parent arrays."""
    n_rows, m = parents.shape
    verts = np.arange(m)
    step = (verts[None, :] < parents).astype(np.int64)
    desc = np.zeros((n_rows, m), dtype=np.int64)
    rows = np.arange(n_rows)[:, None]
    for _ in range(m):
        desc = desc[rows, parents] + step
    return desc[:, 1:] - desc[:, :1]


def scaled_centroids(h: np.ndarray) -> np.ndarray:
    """``(n+1) * hbar`` as integers, one row per height vector."""
    n_rows, n = h.shape
    m = n + 1
    full = np.zeros((n_rows, m), dtype=np.int64)
    full[:, 1:] = h
    return full * m + np.arange(m)


def h_increasing_counts(h: np.ndarray) -> np.ndarray:
    """Vectorized :func:`count_h_increasing_trees` (exact int64 products)."""
    c = scaled_centroids(h)
    m = c.shape[1]
    diff = c[:, :, None] - c[:, None, :]  # diff[r, v, u] = c_v - c_u
    opts = ((diff > 0) & (diff < m)).sum(axis=2)
    root = np.argmin(c, axis=1)
    opts[np.arange(len(c)), root] = 1
    return np.prod(opts, axis=1)
