"""Small labeled simple graphs stored as a bit field over edge slots.

The edge ``(i, j)`` with ``i < j`` occupies bit ``j*(j-1)//2 + i``.  Every
module in the package shares this indexing, so an edge set is just a Python
int and set operations are bitwise ones.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_VERTICES = 16


class InvalidEdgeError(ValueError):
    pass


class CapacityError(ValueError):
    """Raised when a request exceeds the enumeration limits."""


def edge_index(i: int, j: int) -> int:
    if i == j:
        raise InvalidEdgeError(f"self-loop ({i}, {j}) is not an edge")
    if i > j:
        i, j = j, i
    if i < 0:
        raise InvalidEdgeError(f"negative vertex label in ({i}, {j})")
    return j * (j - 1) // 2 + i


def edge_from_index(idx: int) -> tuple[int, int]:
    j = 1
    while (j + 1) * j // 2 <= idx:
        j += 1
    return idx - j * (j - 1) // 2, j


def n_slots(n_vertices: int) -> int:
    return n_vertices * (n_vertices - 1) // 2


@dataclass(frozen=True)
class LabeledGraph:
    """Simple undirected graph on vertices ``0..n_vertices-1``."""

    n_vertices: int
    edges: int = 0

    def __post_init__(self):
        if not 1 <= self.n_vertices <= MAX_VERTICES:
            raise CapacityError(
                f"n_vertices must be in 1..{MAX_VERTICES}, got {self.n_vertices}")
        if self.edges < 0 or self.edges >> n_slots(self.n_vertices):
            raise InvalidEdgeError("edge bits outside the vertex range")

    @classmethod
    def from_edges(cls, n_vertices: int, edges: Iterable[Sequence[int]]) -> "LabeledGraph":
        mask = 0
        for i, j in edges:
            if max(i, j) >= n_vertices:
                raise InvalidEdgeError(f"edge ({i}, {j}) outside 0..{n_vertices - 1}")
            mask |= 1 << edge_index(i, j)
        return cls(n_vertices, mask)

    @classmethod
    def complete(cls, n_vertices: int) -> "LabeledGraph":
        return cls(n_vertices, (1 << n_slots(n_vertices)) - 1)

    @classmethod
    def empty(cls, n_vertices: int) -> "LabeledGraph":
        return cls(n_vertices, 0)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.edges >> edge_index(i, j) & 1)

    def edge_list(self) -> list[tuple[int, int]]:
        """Edges in canonical index order."""
        out = []
        mask, idx = self.edges, 0
        while mask:
            if mask & 1:
                out.append(edge_from_index(idx))
            mask >>= 1
            idx += 1
        return out

    @property
    def n_edges(self) -> int:
        return self.edges.bit_count()

    def adjacency(self) -> list[int]:
        """Neighbour sets as vertex bitmasks."""
        adj = [0] * self.n_vertices
        for i, j in self.edge_list():
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return adj

    def issubgraph(self, other: "LabeledGraph") -> bool:
        return self.n_vertices == other.n_vertices and self.edges & ~other.edges == 0

    def __repr__(self):
        return f"LabeledGraph({self.n_vertices}, {self.edge_list()})"


def toggle_edge(G: LabeledGraph, e: Sequence[int]) -> LabeledGraph:
    i, j = e
    if max(i, j) >= G.n_vertices:
        raise InvalidEdgeError(f"edge ({i}, {j}) outside 0..{G.n_vertices - 1}")
    return LabeledGraph(G.n_vertices, G.edges ^ (1 << edge_index(i, j)))


def _reach(adj: list[int], start: int) -> int:
    seen = frontier = 1 << start
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def is_connected(G: LabeledGraph) -> bool:
    return _reach(G.adjacency(), 0) == (1 << G.n_vertices) - 1


def components(G: LabeledGraph) -> list[int]:
    """Connected components as vertex bitmasks, ordered by least vertex."""
    adj = G.adjacency()
    left = (1 << G.n_vertices) - 1
    out = []
    while left:
        v = (left & -left).bit_length() - 1
        comp = _reach(adj, v)
        out.append(comp)
        left &= ~comp
    return out


def count_components(G: LabeledGraph) -> int:
    return len(components(G))


def _check_capacity(n_vertices: int, limit: int = MAX_VERTICES):
    if not 1 <= n_vertices <= limit:
        raise CapacityError(f"n_vertices must be in 1..{limit}, got {n_vertices}")


def enumerate_graphs(n_vertices: int, connected_only: bool = False,
                     start: int = 0, stop: int | None = None) -> Iterator[LabeledGraph]:
    """Yield spanning subgraphs of K_n in increasing bit-field order.

    ``start``/``stop`` select a contiguous range of bit-field values so a
    caller can hand disjoint ranges to separate workers.
    """
    _check_capacity(n_vertices)
    total = 1 << n_slots(n_vertices)
    stop = total if stop is None else min(stop, total)
    for mask in range(start, stop):
        G = LabeledGraph(n_vertices, mask)
        if not connected_only or is_connected(G):
            yield G


def relabel(G: LabeledGraph, sigma: Sequence[int]) -> LabeledGraph:
    """Apply a permutation of ``1..n`` to a graph on ``0..n`` (vertex 0 fixed).

    ``sigma[k-1]`` is the image of label ``k``.
    """
    n = G.n_vertices - 1
    if len(sigma) != n or sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"expected a permutation of 1..{n}, got {tuple(sigma)}")
    full = (0, *sigma)
    return LabeledGraph.from_edges(G.n_vertices, ((full[i], full[j]) for i, j in G.edge_list()))


def disjoint_union(G: LabeledGraph, H: LabeledGraph) -> LabeledGraph:
    k = G.n_vertices
    shifted = ((i + k, j + k) for i, j in H.edge_list())
    return LabeledGraph.from_edges(k + H.n_vertices, [*G.edge_list(), *shifted])


def random_graph(n_vertices: int, rng: random.Random, p: float = 0.5) -> LabeledGraph:
    mask = 0
    for idx in range(n_slots(n_vertices)):
        if rng.random() < p:
            mask |= 1 << idx
    return LabeledGraph(n_vertices, mask)


def all_edges(n_vertices: int) -> list[tuple[int, int]]:
    return [(i, j) for i, j in combinations(range(n_vertices), 2)]


# --- vectorized helpers -------------------------------------------------

def connected_mask_array(masks: np.ndarray, n_vertices: int, edge_bits: Sequence[int] | None = None) -> np.ndarray:
    """Boolean array: is the graph encoded by each mask connected?

    ``edge_bits[k]`` gives the canonical slot of the edge represented by bit
    ``k`` of each mask, which lets the masks range over subsets of a host
    graph's edges rather than over all of K_n.
    """
    slots = list(range(n_slots(n_vertices))) if edge_bits is None else list(edge_bits)
    masks = masks.astype(np.uint64, copy=False)
    adj = [np.zeros(masks.shape, dtype=np.uint64) for _ in range(n_vertices)]
    one = np.uint64(1)
    for k, slot in enumerate(slots):
        i, j = edge_from_index(slot)
        present = (masks >> np.uint64(k)) & one
        adj[i] |= present << np.uint64(j)
        adj[j] |= present << np.uint64(i)
    reach = np.ones(masks.shape, dtype=np.uint64)
    for _ in range(n_vertices - 1):
        grown = reach.copy()
        for v in range(n_vertices):
            hit = (reach >> np.uint64(v)) & one
            grown |= adj[v] * hit
        if np.array_equal(grown, reach):
            break
        reach = grown
    return reach == np.uint64((1 << n_vertices) - 1)


def signed_connected_sum(host: LabeledGraph, chunk: int = 1 << 18,
                         start: int = 0, stop: int | None = None) -> tuple[int, int]:
    """Exhaustive sum of (-1)^e(G) over connected spanning subgraphs G of ``host``.

    Returns ``(signed_sum, n_connected)``.  Subgraphs are indexed by bit
    subsets of the host's edge list, and ``start``/``stop`` restrict to a
    contiguous range of those indices.
    """
    slots = [edge_index(i, j) for i, j in host.edge_list()]
    if len(slots) > 62:
        raise CapacityError("host graph has too many edges for exhaustive enumeration")
    total = 1 << len(slots)
    stop = total if stop is None else min(stop, total)
    signed = count = 0
    for lo in range(start, stop, chunk):
        masks = np.arange(lo, min(lo + chunk, stop), dtype=np.uint64)
        conn = connected_mask_array(masks, host.n_vertices, slots)
        parity = np.bitwise_count(masks[conn]) & 1
        n_conn = int(conn.sum())
        n_odd = int(parity.sum())
        signed += n_conn - 2 * n_odd
        count += n_conn
    return signed, count
