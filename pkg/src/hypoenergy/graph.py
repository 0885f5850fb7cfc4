"""Simple undirected graphs on vertices ``0..n-1`` and their structural predicates.

Adjacency is held as one integer bitmask per vertex, so neighbourhood
intersections and component searches are a handful of integer operations.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

from hypoenergy.errors import DisconnectedGraphError, GraphError

DEFAULT_ORDER_BOUND = 32

Edge = tuple[int, int]


def order_bound() -> int:
    """Largest supported order; ``HYPO_ORDER_BOUND`` overrides the default."""
    raw = os.environ.get("HYPO_ORDER_BOUND")
    if raw is None or raw.strip() == "":
        return DEFAULT_ORDER_BOUND
    try:
        value = int(raw)
    except ValueError:
        raise GraphError(f"HYPO_ORDER_BOUND must be an integer, got {raw!r}") from None
    if value < 1:
        raise GraphError(f"HYPO_ORDER_BOUND must be positive, got {value}")
    return value


class Graph:
    """Immutable simple graph.

    Equality is labeled equality (same order, same edge set); use
    :func:`hypoenergy.canon.canonical_form` to compare up to isomorphism.
    """

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphError(f"order must be nonnegative, got {n}")
        bound = order_bound()
        if n > bound:
            raise GraphError(f"order {n} exceeds the order bound {bound}")
        adj = [0] * n
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(adj))
        object.__setattr__(self, "edges", _edges_from_adj(adj))

    @classmethod
    def _from_adj(cls, adj: Sequence[int]) -> "Graph":
        g = object.__new__(cls)
        object.__setattr__(g, "n", len(adj))
        object.__setattr__(g, "adj", tuple(adj))
        object.__setattr__(g, "edges", _edges_from_adj(adj))
        return g

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(a.bit_count() for a in self.adj)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return _reach(self.adj, 0, (1 << self.n) - 1) == (1 << self.n) - 1

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected()

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph on ``vertices`` relabeled to ``0..k-1`` in ascending order."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        mask = 0
        for v in keep:
            mask |= 1 << v
        adj = []
        for v in keep:
            row = 0
            for w in _bits(self.adj[v] & mask):
                row |= 1 << index[w]
            adj.append(row)
        return Graph._from_adj(adj)

    def remove_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        adj = list(self.adj)
        for u, v in edges:
            if not self.has_edge(u, v):
                raise GraphError(f"({u}, {v}) is not an edge")
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return Graph._from_adj(adj)

    def add_vertex(self, neighbours: Iterable[int]) -> "Graph":
        """Copy with one new vertex ``n`` joined to ``neighbours``."""
        adj = list(self.adj)
        row = 0
        for v in neighbours:
            adj[v] |= 1 << self.n
            row |= 1 << v
        adj.append(row)
        return Graph._from_adj(adj)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Copy where vertex ``v`` becomes ``perm[v]``."""
        adj = [0] * self.n
        for v in range(self.n):
            row = 0
            for w in _bits(self.adj[v]):
                row |= 1 << perm[w]
            adj[perm[v]] = row
        return Graph._from_adj(adj)

    def adjacency_matrix(self) -> list[list[int]]:
        return [[(self.adj[i] >> j) & 1 for j in range(self.n)] for i in range(self.n)]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adj == other.adj

    def __hash__(self):
        return hash(self.adj)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)})"

    def __reduce__(self):
        return (Graph, (self.n, self.edges))


def _bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def _edges_from_adj(adj: Sequence[int]) -> tuple[Edge, ...]:
    return tuple((u, v) for u in range(len(adj)) for v in _bits(adj[u] >> (u + 1) << (u + 1)))


def _reach(adj: Sequence[int], start: int, allowed: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= adj[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph; duplicate edges collapse, loops and bad indices raise."""
    return Graph(n, edges)


# named families -----------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(n: int) -> Graph:
    """Star on ``n`` vertices (one centre, ``n - 1`` leaves)."""
    return Graph(n, [(0, i) for i in range(1, n)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, edges)


# structure ----------------------------------------------------------------


def connected_components(g: Graph) -> list[tuple[int, ...]]:
    """Vertex sets of the components, each sorted, ordered by smallest member."""
    remaining = (1 << g.n) - 1
    out = []
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        comp = _reach(g.adj, start, remaining)
        out.append(tuple(_bits(comp)))
        remaining &= ~comp
    return out


def _require_connected(g: Graph) -> None:
    comps = connected_components(g)
    if len(comps) > 1:
        raise DisconnectedGraphError(comps)


def cyclomatic_number(g: Graph) -> int:
    """``m - n + 1`` for a connected graph."""
    if g.n == 0:
        raise GraphError("cyclomatic number of the empty graph is undefined")
    _require_connected(g)
    return g.m - g.n + 1


def two_core_vertices(g: Graph) -> list[int]:
    """Vertices surviving repeated deletion of vertices of degree at most 1."""
    adj = list(g.adj)
    alive = (1 << g.n) - 1
    queue = deque(v for v in range(g.n) if adj[v].bit_count() <= 1)
    while queue:
        v = queue.popleft()
        if not alive >> v & 1:
            continue
        alive &= ~(1 << v)
        for w in _bits(adj[v]):
            adj[w] &= ~(1 << v)
            if alive >> w & 1 and adj[w].bit_count() <= 1:
                queue.append(w)
        adj[v] = 0
    return _bits(alive)


def strip_pendants(g: Graph) -> Graph:
    """The 2-core: empty for trees, otherwise the maximal subgraph of minimum degree 2."""
    return g.induced_subgraph(two_core_vertices(g))


def _max_flow_unit(adj: Sequence[int], s: int, t: int, limit: int) -> int:
    # Edge-disjoint s-t paths; each undirected edge carries capacity 1 both
    # ways, flow is antisymmetric. Stops early once ``limit`` is reached.
    flow: dict[Edge, int] = {}
    total = 0
    while total < limit:
        prev = {s: s}
        queue = deque([s])
        while queue and t not in prev:
            u = queue.popleft()
            for w in _bits(adj[u]):
                if w not in prev and flow.get((u, w), 0) < 1:
                    prev[w] = u
                    queue.append(w)
        if t not in prev:
            break
        v = t
        while v != s:
            u = prev[v]
            flow[(u, v)] = flow.get((u, v), 0) + 1
            flow[(v, u)] = flow.get((v, u), 0) - 1
            v = u
        total += 1
    return total


def edge_connectivity(g: Graph) -> int:
    """Minimum number of edges whose removal disconnects ``g``."""
    if g.n < 2:
        raise GraphError("edge connectivity needs at least 2 vertices")
    _require_connected(g)
    best = g.min_degree
    for t in range(1, g.n):
        best = min(best, _max_flow_unit(g.adj, 0, t, best))
    return best


def has_quadrangle(g: Graph) -> bool:
    """True iff some pair of vertices has two common neighbours (a 4-cycle)."""
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if (g.adj[u] & g.adj[v]).bit_count() >= 2:
                return True
    return False


def is_regular(g: Graph, k: int) -> bool:
    return all(d == k for d in g.degrees)


# edge cuts ----------------------------------------------------------------


@dataclass(frozen=True)
class EdgeCut:
    """Edge set whose deletion leaves exactly two components.

    ``side_a`` holds the smaller of the two minimum vertices.
    """

    edges: tuple[Edge, ...]
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.edges)

    def sides(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.side_a, self.side_b


def _norm_edge(e: Sequence[int]) -> Edge:
    u, v = int(e[0]), int(e[1])
    return (u, v) if u < v else (v, u)


def edge_boundary(g: Graph, side: Iterable[int]) -> tuple[Edge, ...]:
    """Edges with exactly one endpoint in ``side``, sorted."""
    mask = 0
    for v in side:
        mask |= 1 << v
    return tuple((u, v) for u, v in g.edges if (mask >> u & 1) != (mask >> v & 1))


def two_sided_cut(g: Graph, edges: Iterable[Sequence[int]]) -> EdgeCut | None:
    """``EdgeCut`` for ``edges`` if every edge crosses and ``g - F`` has two components."""
    F = tuple(sorted({_norm_edge(e) for e in edges}))
    adj = list(g.adj)
    for u, v in F:
        if not g.has_edge(u, v):
            raise GraphError(f"({u}, {v}) is not an edge")
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    if g.n == 0:
        return None
    full = (1 << g.n) - 1
    a = _reach(adj, 0, full)
    rest = full & ~a
    if not rest:
        return None
    start = (rest & -rest).bit_length() - 1
    b = _reach(adj, start, rest)
    if b != rest:
        return None
    for u, v in F:
        if (a >> u & 1) == (a >> v & 1):
            return None
    return EdgeCut(F, tuple(_bits(a)), tuple(_bits(b)))


def cut_from_side(g: Graph, side: Iterable[int]) -> EdgeCut | None:
    """The cut ``∂(side)`` if both ``side`` and its complement induce connected graphs."""
    mask = 0
    for v in side:
        mask |= 1 << v
    full = (1 << g.n) - 1
    other = full & ~mask
    if not mask or not other:
        return None
    for part in (mask, other):
        start = (part & -part).bit_length() - 1
        if _reach(g.adj, start, part) != part:
            return None
    a, b = (mask, other) if mask & 1 else (other, mask)
    return EdgeCut(edge_boundary(g, _bits(a)), tuple(_bits(a)), tuple(_bits(b)))


def enumerate_two_sided_cuts(g: Graph, max_size: int | None = None) -> Iterator[EdgeCut]:
    """All two-sided cuts of ``g`` with at most ``max_size`` edges.

    Ordered by size, then lexicographically on the sorted edge list. Uses
    whichever of bipartition or edge-subset enumeration is smaller.
    """
    _require_connected(g)
    if g.n < 2:
        return
    limit = g.m if max_size is None else min(max_size, g.m)
    n_subsets = sum(comb(g.m, k) for k in range(1, limit + 1))
    if g.n <= 20 and (1 << (g.n - 1)) <= n_subsets:
        yield from _cuts_by_bipartition(g, limit)
    else:
        yield from _cuts_by_subset(g, limit)


def _cuts_by_bipartition(g: Graph, limit: int) -> Iterator[EdgeCut]:
    found = []
    rest = g.n - 1
    for bits in range(1 << rest):
        if bits == (1 << rest) - 1:
            continue
        side = [0] + [i + 1 for i in range(rest) if bits >> i & 1]
        if len(edge_boundary(g, side)) > limit:
            continue
        cut = cut_from_side(g, side)
        if cut is not None:
            found.append(cut)
    found.sort(key=lambda c: (c.size, c.edges))
    yield from found


def _cuts_by_subset(g: Graph, limit: int) -> Iterator[EdgeCut]:
    for k in range(1, limit + 1):
        for F in combinations(g.edges, k):
            cut = two_sided_cut(g, F)
            if cut is not None:
                yield cut
