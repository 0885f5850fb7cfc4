"""Edge-cut decomposition certificates for connected cyclic graphs with max degree 3.

A certificate splits a graph along a *good* edge cut ``F``: ``G - F`` has
exactly two components, each with smaller cyclomatic number than ``G`` and
neither isomorphic to S1, S3, S4, W or K23. Splitting recurses until every
piece is a tree or has cyclomatic number 1 or 2. Since deleting an edge cut
never raises the energy, and energy is additive over components, the leaves'
energies bound the root's from below.

The cut search follows the case analysis on the edge connectivity of the
2-core: minimum cuts of the core come first, then local repairs around an
exceptional side, then an exhaustive scan.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence, Union

from hypoenergy.catalog import is_exceptional
from hypoenergy.errors import (
    CertificateFormatError,
    CertificationError,
    DisconnectedGraphError,
    ExceptionalGraphError,
    GraphError,
)
from hypoenergy.formats import parse_graph6, to_graph6
from hypoenergy.graph import (
    Edge,
    EdgeCut,
    Graph,
    connected_components,
    cut_from_side,
    cyclomatic_number,
    edge_connectivity,
    enumerate_two_sided_cuts,
    two_core_vertices,
    two_sided_cut,
)

TREE_BASE = "TreeBase"
SMALL_BASE = "SmallCyclomaticBase"
LEAF_REASONS = (TREE_BASE, SMALL_BASE)

DEFAULT_MAX_CUT = 4
# Repairs move up to this many vertices lying within REPAIR_RADIUS of the cut.
REPAIR_MOVES = 3
REPAIR_RADIUS = 2

PROOF_GUIDED = "proof-guided"
EXHAUSTIVE = "exhaustive"
FALLBACK = "fallback"


@dataclass(frozen=True)
class CutReport:
    strategy: str
    kappa: int | None
    case: str
    cut_size: int
    repaired: bool = False


@dataclass(frozen=True)
class Leaf:
    graph: Graph
    reason: str


@dataclass(frozen=True)
class Cut:
    graph: Graph
    cut: tuple[Edge, ...]
    left: "Node"
    right: "Node"
    report: CutReport | None = field(default=None, compare=False)


Node = Union[Leaf, Cut]


@dataclass(frozen=True)
class Certificate:
    root: Node

    @property
    def graph(self) -> Graph:
        return self.root.graph

    def walk(self) -> Iterator[tuple[str, Node]]:
        """Pre-order ``(path, node)`` pairs; paths look like ``root.L.R``."""
        stack = [("root", self.root)]
        while stack:
            path, node = stack.pop()
            yield path, node
            if isinstance(node, Cut):
                stack.append((path + ".R", node.right))
                stack.append((path + ".L", node.left))

    def cuts(self) -> list[Cut]:
        return [node for _, node in self.walk() if isinstance(node, Cut)]

    def leaves(self) -> list[Leaf]:
        return [node for _, node in self.walk() if isinstance(node, Leaf)]


# good cuts ----------------------------------------------------------------


def _as_edges(F) -> list[Sequence[int]]:
    return list(F.edges) if isinstance(F, EdgeCut) else list(F)


def _failure(g: Graph, cut: EdgeCut, k: int) -> tuple[str, list[tuple[int, ...]]]:
    # ("", []) when good; otherwise the reason and the offending sides.
    exceptional = []
    for side in cut.sides():
        sub = g.induced_subgraph(side)
        c = sub.m - sub.n + 1
        if not 0 <= c < k:
            return "cyclomatic", [side]
        if is_exceptional(sub):
            exceptional.append(side)
    if exceptional:
        return "exceptional", exceptional
    return "", []


def is_good_cut(g: Graph, F) -> bool:
    """Whether ``F`` (an ``EdgeCut`` or edge iterable) is a good edge cut of ``g``."""
    k = cyclomatic_number(g)
    cut = two_sided_cut(g, _as_edges(F))
    if cut is None:
        return False
    reason, _ = _failure(g, cut, k)
    return reason == ""


def find_good_cut_exhaustive(g: Graph, max_size: int = DEFAULT_MAX_CUT
                             ) -> tuple[EdgeCut, CutReport] | None:
    """First good cut in the size-then-lexicographic stream of two-sided cuts."""
    k = cyclomatic_number(g)
    for cut in enumerate_two_sided_cuts(g, max_size):
        if _failure(g, cut, k)[0] == "":
            return cut, CutReport(EXHAUSTIVE, None, EXHAUSTIVE, cut.size)
    return None


def _case_label(kappa: int, core: Graph, cut: EdgeCut) -> str:
    if kappa == 1:
        return "Case 1"
    both_cyclic = all(
        (h := core.induced_subgraph(side)).m - h.n + 1 >= 1 for side in cut.sides()
    )
    if kappa == 2:
        return "Subcase 2.1" if both_cyclic else "Subcase 2.2"
    if kappa == 3:
        return "Subcase 3.1" if both_cyclic else "Subcase 3.2"
    return f"kappa={kappa}"


def _near(g: Graph, cut_edges: Iterable[Edge], radius: int) -> list[int]:
    frontier = {v for e in cut_edges for v in e}
    seen = set(frontier)
    for _ in range(radius):
        frontier = {w for v in frontier for w in g.neighbors(v)} - seen
        seen |= frontier
    return sorted(seen)


def _repairs(g: Graph, cut: EdgeCut, side: tuple[int, ...], max_size: int) -> Iterator[EdgeCut]:
    # Cuts bounding ``side`` with a few vertices near the cut moved across,
    # fewest moves first, then smallest and lexicographically first cut.
    region = _near(g, cut.edges, REPAIR_RADIUS)
    base = set(side)
    for moves in range(1, REPAIR_MOVES + 1):
        found = {}
        for T in combinations(region, moves):
            candidate = cut_from_side(g, base.symmetric_difference(T))
            if candidate is not None and candidate.size <= max_size:
                found[candidate.edges] = candidate
        for key in sorted(found, key=lambda edges: (len(edges), edges)):
            yield found[key]


def find_good_cut_proof_guided(g: Graph, max_size: int = DEFAULT_MAX_CUT
                               ) -> tuple[EdgeCut, CutReport] | None:
    """Good cut found by following the edge-connectivity case split of the 2-core.

    Minimum cuts of the 2-core are lifted to ``g`` and tried in order. If a
    candidate fails only because a side is exceptional, cuts obtained by
    moving a few vertices near the cut across are tried next. Falls back to
    :func:`find_good_cut_exhaustive`, reported with case ``fallback``.
    """
    k = cyclomatic_number(g)
    core_vertices = two_core_vertices(g)
    core = g.induced_subgraph(core_vertices)
    kappa = edge_connectivity(core)
    lifted = []
    for core_cut in enumerate_two_sided_cuts(core, kappa):
        edges = [(core_vertices[u], core_vertices[v]) for u, v in core_cut.edges]
        cut = two_sided_cut(g, edges)
        if cut is None:
            continue
        label = _case_label(kappa, core, core_cut)
        reason, sides = _failure(g, cut, k)
        if reason == "" and cut.size <= max_size:
            return cut, CutReport(PROOF_GUIDED, kappa, label, cut.size)
        lifted.append((cut, label, reason, sides))

    for cut, label, reason, sides in lifted:
        if reason != "exceptional":
            continue
        for side in sides:
            for candidate in _repairs(g, cut, side, max_size):
                if _failure(g, candidate, k)[0] == "":
                    return candidate, CutReport(PROOF_GUIDED, kappa, label, candidate.size, True)

    found = find_good_cut_exhaustive(g, max_size)
    if found is None:
        return None
    cut, _ = found
    return cut, CutReport(EXHAUSTIVE, kappa, FALLBACK, cut.size)


# certificates -------------------------------------------------------------


def certify(g: Graph, max_cut_size: int = DEFAULT_MAX_CUT) -> Certificate:
    """Decomposition certificate for a connected, non-exceptional graph with max degree 3.

    Raises ``CertificationError`` carrying the stuck subgraph if some node of
    cyclomatic number at least 3 has no good cut within ``max_cut_size``.
    """
    comps = connected_components(g)
    if g.n == 0 or len(comps) != 1:
        raise DisconnectedGraphError(comps)
    if g.max_degree > 3:
        raise GraphError(f"maximum degree {g.max_degree} exceeds 3")
    name = is_exceptional(g)
    if name is not None:
        raise ExceptionalGraphError(name)
    return Certificate(_build(g, max_cut_size))


def _build(g: Graph, max_cut_size: int) -> Node:
    c = g.m - g.n + 1
    if c == 0:
        return Leaf(g, TREE_BASE)
    if c <= 2:
        return Leaf(g, SMALL_BASE)
    found = find_good_cut_proof_guided(g, max_cut_size)
    if found is None:
        raise CertificationError(
            f"no good edge cut with at most {max_cut_size} edges in {to_graph6(g)}", g)
    cut, report = found
    left = _build(g.induced_subgraph(cut.side_a), max_cut_size)
    right = _build(g.induced_subgraph(cut.side_b), max_cut_size)
    return Cut(g, cut.edges, left, right, report)


# text format --------------------------------------------------------------


def dumps(cert: Certificate) -> str:
    """Line-oriented form: ``CERT n m`` then a pre-order walk of CUT/LEAF records."""
    g = cert.graph
    lines = [f"CERT {g.n} {g.m}"]
    for path, node in cert.walk():
        if isinstance(node, Cut):
            if node.report is not None:
                r = node.report
                lines.append(
                    f"# {path}: {r.case}, {r.strategy}, kappa={r.kappa}, "
                    f"size={r.cut_size}{', repaired' if r.repaired else ''}"
                )
            edges = " ".join(f"{u}-{v}" for u, v in node.cut)
            lines.append(f"CUT {to_graph6(node.graph)} {edges}")
        else:
            lines.append(f"LEAF {node.reason} {to_graph6(node.graph)}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> Certificate:
    records = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            records.append((lineno, line.split()))
    if not records or records[0][1][0] != "CERT" or len(records[0][1]) != 3:
        raise CertificateFormatError("missing 'CERT n m' header", records[0][0] if records else 1)
    lineno, header = records[0]
    try:
        n, m = int(header[1]), int(header[2])
    except ValueError:
        raise CertificateFormatError("non-integer header", lineno) from None
    it = iter(records[1:])

    def node() -> Node:
        try:
            lineno, parts = next(it)
        except StopIteration:
            raise CertificateFormatError("certificate ends inside a CUT", len(records)) from None
        try:
            if parts[0] == "LEAF" and len(parts) == 3:
                return Leaf(parse_graph6(parts[2]), parts[1])
            if parts[0] == "CUT" and len(parts) >= 2:
                graph = parse_graph6(parts[1])
                edges = []
                for token in parts[2:]:
                    u, _, v = token.partition("-")
                    edges.append((int(u), int(v)))
                return Cut(graph, tuple(edges), node(), node())
        except (GraphError, ValueError) as exc:
            if isinstance(exc, CertificateFormatError):
                raise
            raise CertificateFormatError(str(exc), lineno) from None
        raise CertificateFormatError(f"unrecognised record {' '.join(parts)!r}", lineno)

    root = node()
    leftover = next(it, None)
    if leftover is not None:
        raise CertificateFormatError("records after the end of the tree", leftover[0])
    if (root.graph.n, root.graph.m) != (n, m):
        raise CertificateFormatError(
            f"header says n={n} m={m}, root graph has n={root.graph.n} m={root.graph.m}", lineno)
    return Certificate(root)
