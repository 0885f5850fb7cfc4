"""Canonical forms and isomorphism testing."""

from __future__ import annotations

from functools import lru_cache

from hypoenergy import _kernels
from hypoenergy.formats import to_graph6
from hypoenergy.graph import Graph


def canonical_labeling(g: Graph) -> list[int]:
    """``lab[i]`` is the vertex of ``g`` placed at canonical position ``i``."""
    lab, _, _ = _kernels.canonical_labeling(g.n, g.adj)
    return list(lab)


def automorphism_generators(g: Graph) -> list[list[int]]:
    """Automorphisms discovered by the canonical search (not necessarily a full generating set)."""
    _, _, gens = _kernels.canonical_labeling(g.n, g.adj)
    return [list(p) for p in gens]


@lru_cache(maxsize=1 << 16)
def _canonical_rows(n: int, adj: tuple[int, ...]) -> tuple[int, ...]:
    _, rows, _ = _kernels.canonical_labeling(n, adj)
    return tuple(rows)


def canonical_graph(g: Graph) -> Graph:
    """The canonical relabeling of ``g``; isomorphic graphs map to equal graphs."""
    return Graph._from_adj(_canonical_rows(g.n, g.adj))


def canonical_form(g: Graph) -> bytes:
    """graph6 bytes of the canonical relabeling."""
    return to_graph6(canonical_graph(g)).encode("ascii")


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees) != sorted(h.degrees):
        return False
    return canonical_form(g) == canonical_form(h)
