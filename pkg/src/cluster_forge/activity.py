"""Edge orders, active edges and the two killing involutions.

Two orders are used.  On graphs with plain labels, edges compare by
``(min label, max label)``.  Given a height vector ``h`` (``h_0 = 0``
implicit), vertex ``i`` sits at ``h_i + i/(n+1)``; the integer pair
``(h_i, i)`` orders these positions exactly, and edges compare by the
pair keys of their lower and upper endpoints.
"""
from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .graph import LabeledGraph, all_edges, edge_index, is_connected

Edge = tuple[int, int]


class ContractError(ValueError):
    """Input violates an operation's precondition."""


# --- height vectors -----------------------------------------------------

def full_heights(h: Sequence[int]) -> tuple[int, ...]:
    """Prepend the implicit ``h_0 = 0``."""
    return (0, *h)


def centroid_key(h: Sequence[int], i: int) -> tuple[int, int]:
    return (0 if i == 0 else h[i - 1], i)


def centroid_less(h: Sequence[int], i: int, j: int) -> bool:
    return centroid_key(h, i) < centroid_key(h, j)


def centroid_gap_below_one(h: Sequence[int], i: int, j: int) -> bool:
    """Exact test of |hbar_i - hbar_j| < 1, scaled by n+1."""
    m = len(h) + 1
    hf = full_heights(h)
    return abs((hf[i] - hf[j]) * m + (i - j)) < m


def build_gh(h: Sequence[int]) -> LabeledGraph:
    m = len(h) + 1
    hf = full_heights(h)
    mask = 0
    for j in range(1, m):
        for i in range(j):
            if abs((hf[i] - hf[j]) * m + (i - j)) < m:
                mask |= 1 << edge_index(i, j)
    return LabeledGraph(m, mask)


def min_centroid_vertex(h: Sequence[int]) -> int:
    return min(range(len(h) + 1), key=lambda i: centroid_key(h, i))


# --- edge orders --------------------------------------------------------

def lex_key(e: Edge) -> tuple[int, int]:
    return (min(e), max(e))


def lex_edge_less(e: Edge, f: Edge) -> bool:
    return lex_key(e) < lex_key(f)


def h_edge_key(h: Sequence[int], e: Edge) -> tuple[tuple[int, int], tuple[int, int]]:
    a, b = centroid_key(h, e[0]), centroid_key(h, e[1])
    return (a, b) if a < b else (b, a)


def lex_edge_less_h(h: Sequence[int], e: Edge, f: Edge) -> bool:
    return h_edge_key(h, e) < h_edge_key(h, f)


# --- activity -----------------------------------------------------------

def _connected_via(G: LabeledGraph, e: Edge, allowed: Callable[[Edge], bool]) -> bool:
    """Are the endpoints of ``e`` joined by a path of allowed edges of G?"""
    adj = [0] * G.n_vertices
    for f in G.edge_list():
        if allowed(f):
            adj[f[0]] |= 1 << f[1]
            adj[f[1]] |= 1 << f[0]
    seen = frontier = 1 << e[0]
    target = 1 << e[1]
    while frontier:
        if seen & target:
            return True
        nxt = 0
        for v in range(G.n_vertices):
            if frontier >> v & 1:
                nxt |= adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return bool(seen & target)


def is_active(G: LabeledGraph, e: Edge) -> bool:
    """Endpoints of ``e`` joined inside G by edges lex-greater than ``e``."""
    k = lex_key(e)
    return _connected_via(G, e, lambda f: lex_key(f) > k)


def is_active_h(G: LabeledGraph, h: Sequence[int], e: Edge) -> bool:
    k = h_edge_key(h, e)
    return _connected_via(G, e, lambda f: h_edge_key(h, f) > k)


def least_active_edge(G: LabeledGraph, candidates: Iterable[Edge],
                      key: Callable[[Edge], object]) -> Edge | None:
    """Smallest candidate whose endpoints are joined by strictly greater G-edges.

    Candidates are swept from the top of the order down while a union-find
    absorbs the G-edges already passed, so at each step the structure holds
    exactly the edges greater than the current one.  Every edge of G must
    appear among the candidates.
    """
    parent = list(range(G.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    best = None
    for e in sorted(candidates, key=key, reverse=True):
        a, b = find(e[0]), find(e[1])
        if a == b:
            best = e
        elif G.has_edge(*e):
            parent[a] = b
    return best


def _toggle(G: LabeledGraph, e: Edge) -> LabeledGraph:
    return LabeledGraph(G.n_vertices, G.edges ^ (1 << edge_index(*e)))


def least_active(G: LabeledGraph) -> Edge | None:
    return least_active_edge(G, all_edges(G.n_vertices), lex_key)


def psi(G: LabeledGraph) -> LabeledGraph:
    """Toggle the least active edge; graphs without one are fixed."""
    if not is_connected(G):
        raise ContractError("psi is defined on connected graphs only")
    e = least_active(G)
    return G if e is None else _toggle(G, e)


def least_active_h(G: LabeledGraph, h: Sequence[int], gh: LabeledGraph | None = None) -> Edge | None:
    gh = build_gh(h) if gh is None else gh
    return least_active_edge(G, gh.edge_list(), lambda e: h_edge_key(h, e))


def psi_h(G: LabeledGraph, h: Sequence[int]) -> LabeledGraph:
    """The height-ordered involution on connected spanning subgraphs of G_h.

    Candidate edges range over all of G_h, not only the edges of G.
    """
    if G.n_vertices != len(h) + 1:
        raise ContractError(f"graph has {G.n_vertices} vertices, h has length {len(h)}")
    gh = build_gh(h)
    if not G.issubgraph(gh):
        raise ContractError("G is not a subgraph of G_h")
    if not is_connected(G):
        raise ContractError("psi_h is defined on connected graphs only")
    e = least_active_h(G, h, gh)
    return G if e is None else _toggle(G, e)
