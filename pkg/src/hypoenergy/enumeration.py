"""Isomorphism-free generation of connected graphs with bounded maximum degree.

Graphs of order ``n`` are grown from those of order ``n - 1`` by adding a
vertex joined to a set ``S`` of unsaturated vertices. A child is kept only if
its parent is its canonical parent: the child minus its non-cut vertex of
highest canonical rank. Every connected graph has a non-cut vertex, so each
isomorphism class is reached from exactly one parent; duplicates from the
same parent are dropped by canonical form.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from hypoenergy import _kernels
from hypoenergy.canon import canonical_form
from hypoenergy.errors import GraphError
from hypoenergy.formats import to_graph6
from hypoenergy.graph import Graph, _reach, has_quadrangle, order_bound
from hypoenergy.spectral import EnergyVerdict, classify

CLASSES = ("connected", "trees", "cyclic", "quadrangle_free")


@dataclass(frozen=True)
class EnumSpec:
    """What to enumerate.

    ``graph_class`` is one of ``connected``, ``trees``, ``cyclic`` (m >= n) or
    ``quadrangle_free``; ``min_edges_n`` additionally keeps only graphs with
    at least as many edges as vertices.
    """

    max_order: int
    max_degree: int = 3
    graph_class: str = "connected"
    min_edges_n: bool = False

    def __post_init__(self):
        if self.graph_class not in CLASSES:
            raise ValueError(f"unknown graph class {self.graph_class!r}; expected one of {CLASSES}")
        if self.max_degree < 1:
            raise ValueError("max_degree must be at least 1")
        if not 0 <= self.max_order <= order_bound():
            raise GraphError(f"max_order {self.max_order} outside 0..{order_bound()}")

    def accepts(self, g: Graph) -> bool:
        if g.max_degree > self.max_degree or not g.is_connected() or g.n == 0:
            return False
        if self.min_edges_n and g.m < g.n:
            return False
        if self.graph_class == "trees":
            return g.m == g.n - 1
        if self.graph_class == "cyclic":
            return g.m >= g.n
        if self.graph_class == "quadrangle_free":
            return not has_quadrangle(g)
        return True


def _canonical_parent_ok(child: Graph, lab: list[int], parent_form: bytes) -> bool:
    n = child.n
    full = (1 << n) - 1
    new = n - 1
    for i in range(n - 1, -1, -1):
        v = lab[i]
        rest = full & ~(1 << v)
        start = (rest & -rest).bit_length() - 1
        if _reach(child.adj, start, rest) == rest:
            if v == new:
                return True
            keep = [u for u in range(n) if u != v]
            return canonical_form(child.induced_subgraph(keep)) == parent_form
    raise AssertionError("connected graph without a non-cut vertex")


def _children(parent: Graph, max_degree: int, mode: str) -> list[tuple[str, Graph]]:
    parent_form = canonical_form(parent)
    open_vertices = [v for v in range(parent.n) if parent.degree(v) < max_degree]
    sizes = (1,) if mode == "trees" else range(1, max_degree + 1)
    seen: set[str] = set()
    out = []
    for k in sizes:
        for S in combinations(open_vertices, k):
            child = parent.add_vertex(S)
            if mode == "quadrangle_free" and has_quadrangle(child):
                continue
            lab, rows, _ = _kernels.canonical_labeling(child.n, child.adj)
            canon = Graph._from_adj(rows)
            key = to_graph6(canon)
            if key in seen:
                continue
            if _canonical_parent_ok(child, lab, parent_form):
                seen.add(key)
                out.append((key, canon))
    return out


# Levels already generated, keyed by (max_degree, mode). Generation modes
# prune by hereditary classes: trees and quadrangle-free graphs have
# canonical parents in the same class.
_LEVELS: dict[tuple[int, str], list[list[Graph]]] = {}


def _levels(max_order: int, max_degree: int, mode: str) -> list[list[Graph]]:
    levels = _LEVELS.setdefault((max_degree, mode), [[Graph(1)]])
    while len(levels) < max_order:
        found = []
        for parent in levels[-1]:
            found.extend(_children(parent, max_degree, mode))
        found.sort(key=lambda item: item[0])
        levels.append([g for _, g in found])
    return levels[:max_order]


def _generation_mode(spec: EnumSpec) -> str:
    if spec.graph_class in ("trees", "quadrangle_free"):
        return spec.graph_class
    return "connected"


def connected_graphs(spec: EnumSpec) -> Iterator[Graph]:
    """Every graph accepted by ``spec``, once per isomorphism class.

    Ordered by order, then by canonical form; each graph is emitted in its
    canonical labeling.
    """
    mode = _generation_mode(spec)
    for level in _levels(spec.max_order, spec.max_degree, mode):
        for g in level:
            if spec.accepts(g):
                yield g


def trees(max_order: int, max_degree: int = 3) -> Iterator[Graph]:
    return connected_graphs(EnumSpec(max_order, max_degree, "trees"))


def _classify_one(g: Graph) -> EnergyVerdict:
    return classify(g)


def classify_stream(spec: EnumSpec, jobs: int = 1) -> list[tuple[Graph, EnergyVerdict]]:
    """Verdict for every enumerated graph, in stream order."""
    graphs = list(connected_graphs(spec))
    if jobs > 1 and len(graphs) > 64:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            verdicts = list(pool.map(_classify_one, graphs, chunksize=64))
    else:
        verdicts = [classify(g) for g in graphs]
    return list(zip(graphs, verdicts))


def hypoenergetic_scan(spec: EnumSpec, jobs: int = 1) -> list[tuple[Graph, EnergyVerdict]]:
    """The hypoenergetic graphs among those enumerated, with their verdicts."""
    return [(g, v) for g, v in classify_stream(spec, jobs) if v.hypoenergetic]


def census(spec: EnumSpec, jobs: int = 1) -> list[tuple[int, int, int]]:
    """``(n, count, hypoenergetic_count)`` for each order up to ``spec.max_order``."""
    rows = {n: [0, 0] for n in range(1, spec.max_order + 1)}
    for g, v in classify_stream(spec, jobs):
        rows[g.n][0] += 1
        rows[g.n][1] += int(v.hypoenergetic)
    return [(n, c, h) for n, (c, h) in rows.items()]
