"""The five hypoenergetic connected graphs of maximum degree at most 3."""

from __future__ import annotations

from hypoenergy.canon import canonical_form
from hypoenergy.graph import Graph, complete_bipartite, star_graph

S1 = Graph(1)
S3 = star_graph(3)
S4 = star_graph(4)
# Two degree-3 vertices joined through a degree-2 vertex, each with two
# leaves. Frozen from an exhaustive search of 7-vertex trees with max
# degree 3 (the only one with energy below 7); see tests/test_catalog.py.
W = Graph(7, [(0, 1), (1, 2), (0, 3), (0, 4), (2, 5), (2, 6)])
K23 = complete_bipartite(2, 3)

CATALOG: dict[str, Graph] = {"S1": S1, "S3": S3, "S4": S4, "W": W, "K23": K23}
TREE_NAMES = ("S1", "S3", "S4", "W")

_BY_ORDER: dict[int, dict[bytes, str]] = {}
for _name, _g in CATALOG.items():
    _BY_ORDER.setdefault(_g.n, {})[canonical_form(_g)] = _name


def is_exceptional(g: Graph) -> str | None:
    """Catalog name of the graph isomorphic to ``g``, or ``None``."""
    candidates = _BY_ORDER.get(g.n)
    if not candidates:
        return None
    return candidates.get(canonical_form(g))
