"""Independent checker for decomposition certificates.

Nothing here calls the cut search, the canonical labeling or the catalog
lookup used to build certificates. Components come from a plain BFS and
isomorphism to the exceptional graphs is decided by degree-preserving
backtracking against hard-coded edge lists.
"""

from __future__ import annotations

from dataclasses import dataclass

from hypoenergy.certify import SMALL_BASE, TREE_BASE, Certificate, Cut, Leaf
from hypoenergy.errors import CertificateRejected
from hypoenergy.graph import Graph
from hypoenergy.spectral import energy

SLACK_TOL = 1e-8

# Edge lists written out again rather than imported from the catalog.
_EXCEPTIONAL_EDGES = {
    "S1": (1, []),
    "S3": (3, [(0, 1), (0, 2)]),
    "S4": (4, [(0, 1), (0, 2), (0, 3)]),
    "K23": (5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]),
    "W": (7, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6)]),
}


def _adj_lists(n: int, edges) -> list[set[int]]:
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


_EXCEPTIONAL = {name: _adj_lists(n, e) for name, (n, e) in _EXCEPTIONAL_EDGES.items()}


def _components(adj: list[set[int]]) -> list[frozenset[int]]:
    seen = [False] * len(adj)
    out = []
    for s in range(len(adj)):
        if seen[s]:
            continue
        seen[s] = True
        queue, comp = [s], {s}
        while queue:
            v = queue.pop()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.add(w)
                    queue.append(w)
        out.append(frozenset(comp))
    return out


def _isomorphic(a: list[set[int]], b: list[set[int]]) -> bool:
    n = len(a)
    if n != len(b) or sorted(map(len, a)) != sorted(map(len, b)):
        return False
    image = [-1] * n
    used = [False] * n

    def extend(v: int) -> bool:
        if v == n:
            return True
        for w in range(n):
            if used[w] or len(b[w]) != len(a[v]):
                continue
            if all((image[u] in b[w]) == (u in a[v]) for u in range(v)):
                image[v], used[w] = w, True
                if extend(v + 1):
                    return True
                used[w] = False
        return False

    return extend(0)


def exceptional_name(g: Graph) -> str | None:
    adj = _adj_lists(g.n, g.edges)
    for name, ref in _EXCEPTIONAL.items():
        if _isomorphic(adj, ref):
            return name
    return None


def _induced(g: Graph, vertices) -> tuple[int, list[set[int]], set[tuple[int, int]]]:
    index = {v: i for i, v in enumerate(sorted(vertices))}
    edges = {(index[u], index[v]) for u, v in g.edges if u in index and v in index}
    return len(index), _adj_lists(len(index), edges), edges


@dataclass(frozen=True)
class NodeCheck:
    path: str
    kind: str
    n: int
    m: int
    c: int
    energy: float
    slack: float


@dataclass(frozen=True)
class VerificationReport:
    accepted: bool
    root_order: int
    root_energy: float
    root_slack: float
    nodes: tuple[NodeCheck, ...]

    def lines(self) -> list[str]:
        out = []
        for node in self.nodes:
            out.append(
                f"{node.path} {node.kind} n={node.n} m={node.m} c={node.c} "
                f"E={node.energy:.12f} slack={node.slack:.12f}"
            )
        out.append(f"accepted E(root)={self.root_energy:.12f} >= n={self.root_order} "
                   f"slack={self.root_slack:.12f}")
        return out


def _reject(path, condition):
    raise CertificateRejected(path, condition)


def verify_certificate(cert: Certificate) -> VerificationReport:
    """Re-check every structural and numeric condition of ``cert``.

    Raises ``CertificateRejected`` naming the first failing node (pre-order)
    and the violated condition; otherwise returns per-node slacks.
    """
    checks: dict[str, NodeCheck] = {}

    def visit(path: str, node, parent_c: int | None) -> tuple[int, float]:
        g = node.graph
        if not isinstance(g, Graph):
            _reject(path, "node graph is not a Graph")
        adj = _adj_lists(g.n, g.edges)
        if g.n == 0 or len(_components(adj)) != 1:
            _reject(path, "graph is not connected")
        if any(len(nb) > 3 for nb in adj):
            _reject(path, "maximum degree exceeds 3")
        c = len(g.edges) - g.n + 1
        if parent_c is not None and not 0 <= c < parent_c:
            _reject(path, f"cyclomatic number {c} not in [0, {parent_c})")
        name = exceptional_name(g)
        if isinstance(node, Leaf):
            if node.reason == TREE_BASE:
                if c != 0:
                    _reject(path, f"TreeBase leaf is not a tree (c={c})")
            elif node.reason == SMALL_BASE:
                if not 1 <= c <= 2:
                    _reject(path, f"SmallCyclomaticBase leaf has c={c}")
            else:
                _reject(path, f"unknown leaf reason {node.reason!r}")
            if name is not None:
                _reject(path, f"leaf is exceptional ({name})")
            e = energy(g)
            slack = e - g.n
            if slack < -SLACK_TOL:
                _reject(path, f"leaf energy {e!r} below order {g.n}")
            checks[path] = NodeCheck(path, node.reason, g.n, len(g.edges), c, e, slack)
            return g.n, e
        if not isinstance(node, Cut):
            _reject(path, f"unknown node type {type(node).__name__}")
        if name is not None:
            _reject(path, f"graph is exceptional ({name})")
        cut = set()
        for u, v in node.cut:
            edge = (min(u, v), max(u, v))
            if edge not in g.edges:
                _reject(path, f"cut edge {u}-{v} is not an edge of the graph")
            cut.add(edge)
        comps = _components(_adj_lists(g.n, [e for e in g.edges if e not in cut]))
        if len(comps) != 2:
            _reject(path, f"G - F has {len(comps)} components, expected 2")
        side_a = comps[0] if 0 in comps[0] else comps[1]
        side_b = comps[1] if side_a is comps[0] else comps[0]
        for u, v in cut:
            if (u in side_a) == (v in side_a):
                _reject(path, f"cut edge {u}-{v} does not cross between the components")
        for side, child, tag in ((side_a, node.left, "L"), (side_b, node.right, "R")):
            n_side, _, edges_side = _induced(g, side)
            if child.graph.n != n_side or set(child.graph.edges) != edges_side:
                _reject(path, f"child {tag} is not the induced component of G - F")
        order_l, e_l = visit(path + ".L", node.left, c)
        order_r, e_r = visit(path + ".R", node.right, c)
        if order_l + order_r != g.n:
            _reject(path, f"leaf orders sum to {order_l + order_r}, expected {g.n}")
        e = energy(g)
        slack = e - e_l - e_r
        if slack < -SLACK_TOL:
            _reject(path, f"E(G)={e!r} < E(G1)+E(G2)={e_l + e_r!r}")
        checks[path] = NodeCheck(path, "CUT", g.n, len(g.edges), c, e, slack)
        return g.n, e

    n, root_energy = visit("root", cert.root, None)
    root_slack = root_energy - n
    # Each node may lose at most SLACK_TOL; the chained bound tolerates the sum.
    if root_slack < -SLACK_TOL * len(checks):
        _reject("root", f"E(root)={root_energy!r} below n={n}")
    nodes = tuple(checks[path] for path, _ in cert.walk())
    return VerificationReport(True, n, root_energy, root_slack, nodes)
