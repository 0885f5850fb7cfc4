import pickle
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import connected_graphs_st, graphs
from hypoenergy.errors import DisconnectedGraphError, GraphError
from hypoenergy.graph import (
    EdgeCut,
    Graph,
    complete_bipartite,
    complete_graph,
    connected_components,
    cut_from_side,
    cycle_graph,
    cyclomatic_number,
    disjoint_union,
    edge_connectivity,
    enumerate_two_sided_cuts,
    from_edge_list,
    has_quadrangle,
    order_bound,
    path_graph,
    star_graph,
    strip_pendants,
    two_core_vertices,
    two_sided_cut,
)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


class TestConstruction:
    def test_single_vertex(self):
        g = from_edge_list(1, [])
        assert (g.n, g.m) == (1, 0)

    def test_k23_parts(self):
        g = from_edge_list(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
        assert g == complete_bipartite(2, 3)
        assert g.degrees == (3, 3, 2, 2, 2)

    def test_duplicates_collapse(self):
        assert from_edge_list(3, [(0, 1), (0, 1)]) == from_edge_list(3, [(0, 1)])
        assert from_edge_list(3, [(1, 0), (0, 1)]).m == 1

    def test_loop_rejected(self):
        with pytest.raises(GraphError, match="loop"):
            Graph(3, [(1, 1)])

    @pytest.mark.parametrize("edge", [(0, 3), (-1, 0), (5, 2)])
    def test_out_of_range_rejected(self, edge):
        with pytest.raises(GraphError):
            Graph(3, [edge])

    def test_order_bound_default_and_override(self, monkeypatch):
        monkeypatch.delenv("HYPO_ORDER_BOUND", raising=False)
        assert order_bound() == 32
        Graph(32)
        with pytest.raises(GraphError):
            Graph(33)
        monkeypatch.setenv("HYPO_ORDER_BOUND", "40")
        assert Graph(40).n == 40
        monkeypatch.setenv("HYPO_ORDER_BOUND", "nope")
        with pytest.raises(GraphError):
            order_bound()

    def test_immutable_and_hashable(self):
        g = cycle_graph(5)
        with pytest.raises(AttributeError):
            g.n = 4
        assert len({g, cycle_graph(5), path_graph(5)}) == 2
        assert pickle.loads(pickle.dumps(g)) == g

    @given(graphs())
    def test_adjacency_symmetric(self, g):
        a = g.adjacency_matrix()
        assert all(a[i][j] == a[j][i] for i in range(g.n) for j in range(g.n))
        assert all(a[i][i] == 0 for i in range(g.n))
        assert sum(g.degrees) == 2 * g.m

    @given(graphs(max_n=7), st.randoms(use_true_random=False))
    def test_relabel_preserves_structure(self, g, rnd):
        perm = list(range(g.n))
        rnd.shuffle(perm)
        h = g.relabel(perm)
        assert sorted(h.degrees) == sorted(g.degrees)
        assert all(h.has_edge(perm[u], perm[v]) for u, v in g.edges)


class TestComponentsAndCyclomatic:
    def test_examples(self):
        assert connected_components(Graph(1)) == [(0,)]
        assert connected_components(complete_bipartite(2, 3)) == [(0, 1, 2, 3, 4)]
        assert len(connected_components(disjoint_union(complete_graph(2), complete_graph(3)))) == 2

    @pytest.mark.parametrize("g,c", [(path_graph(6), 0), (star_graph(4), 0), (cycle_graph(5), 1),
                                     (complete_graph(4), 3), (complete_bipartite(2, 3), 2)])
    def test_cyclomatic(self, g, c):
        assert cyclomatic_number(g) == c

    def test_disconnected_error_names_components(self):
        g = disjoint_union(complete_graph(2), complete_graph(3))
        with pytest.raises(DisconnectedGraphError) as info:
            cyclomatic_number(g)
        assert info.value.components == [(0, 1), (2, 3, 4)]
        assert "{2,3,4}" in str(info.value)

    @given(graphs())
    def test_components_match_networkx(self, g):
        ours = connected_components(g)
        theirs = sorted(tuple(sorted(c)) for c in nx.connected_components(to_nx(g)))
        assert ours == theirs

    @given(connected_graphs_st())
    def test_cyclomatic_zero_iff_tree(self, g):
        c = cyclomatic_number(g)
        assert c >= 0
        assert (c == 0) == (g.m == g.n - 1) == g.is_tree()


class TestCore:
    def test_cycle_is_its_own_core(self):
        assert strip_pendants(cycle_graph(7)) == cycle_graph(7)

    @pytest.mark.parametrize("g", [Graph(1), path_graph(2), path_graph(6), star_graph(4)])
    def test_tree_core_empty(self, g):
        assert strip_pendants(g).n == 0

    def test_triangle_with_pendant_path(self):
        g = Graph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5)])
        assert two_core_vertices(g) == [0, 1, 2]
        assert strip_pendants(g) == cycle_graph(3)

    @given(connected_graphs_st(max_n=9))
    def test_core_matches_networkx_and_keeps_c(self, g):
        core = two_core_vertices(g)
        h = to_nx(g)
        assert core == sorted(nx.k_core(h, 2).nodes)
        if core:
            stripped = strip_pendants(g)
            assert min(stripped.degrees) >= 2
            assert cyclomatic_number(stripped) == cyclomatic_number(g)
            assert strip_pendants(stripped) == stripped


class TestEdgeConnectivity:
    def test_examples(self):
        assert edge_connectivity(path_graph(5)) == 1
        assert edge_connectivity(cycle_graph(6)) == 2
        assert edge_connectivity(complete_graph(4)) == 3

    def test_single_vertex_rejected(self):
        with pytest.raises(GraphError):
            edge_connectivity(Graph(1))

    @given(connected_graphs_st(min_n=2, max_n=9))
    def test_matches_networkx(self, g):
        k = edge_connectivity(g)
        assert k == nx.edge_connectivity(to_nx(g))
        assert k <= g.min_degree

    @given(connected_graphs_st(min_n=2, max_n=10, max_degree=3))
    def test_subcubic_range(self, g):
        assert 1 <= edge_connectivity(g) <= 3


class TestQuadrangle:
    def test_examples(self):
        assert has_quadrangle(complete_bipartite(2, 3))
        assert not has_quadrangle(path_graph(7))
        assert not has_quadrangle(cycle_graph(5))
        assert has_quadrangle(cycle_graph(4))

    @given(graphs(max_n=7))
    def test_matches_brute_force(self, g):
        brute = any(
            g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(c, d) and g.has_edge(d, a)
            for a, b, c, d in _four_cycles(g.n)
        )
        assert has_quadrangle(g) == brute


def _four_cycles(n):
    for quad in combinations(range(n), 4):
        a, b, c, d = quad
        yield a, b, c, d
        yield a, c, b, d
        yield a, b, d, c


def _brute_two_sided(g, max_size):
    found = []
    for size in range(1, max_size + 1):
        for F in combinations(g.edges, size):
            h = to_nx(g)
            h.remove_edges_from(F)
            comps = list(nx.connected_components(h))
            if len(comps) == 2 and all((u in comps[0]) != (v in comps[0]) for u, v in F):
                found.append(tuple(F))
    return found


class TestCuts:
    def test_p2(self):
        cuts = list(enumerate_two_sided_cuts(path_graph(2), 1))
        assert [c.edges for c in cuts] == [((0, 1),)]
        assert cuts[0].sides() == ((0,), (1,))

    def test_c4_has_no_bridge(self):
        assert list(enumerate_two_sided_cuts(cycle_graph(4), 1)) == []

    def test_k4(self):
        cuts = list(enumerate_two_sided_cuts(complete_graph(4), 4))
        sizes = sorted(c.size for c in cuts)
        assert sizes == [3, 3, 3, 3, 4, 4, 4]

    def test_two_sided_cut_rejects_foreign_edges(self):
        with pytest.raises(GraphError):
            two_sided_cut(path_graph(3), [(0, 2)])

    def test_cut_requires_crossing(self):
        # Removing an extra edge inside one side keeps two components but is not a bond.
        g = Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
        assert two_sided_cut(g, [(2, 3)]) is not None
        assert two_sided_cut(g, [(2, 3), (0, 1)]) is None

    def test_cut_from_side(self):
        cut = cut_from_side(cycle_graph(6), [0, 1, 2])
        assert cut == EdgeCut(((0, 5), (2, 3)), (0, 1, 2), (3, 4, 5))
        assert cut_from_side(cycle_graph(6), [0, 2]) is None

    @given(connected_graphs_st(min_n=2, max_n=7), st.integers(1, 4))
    def test_matches_brute_force_and_order(self, g, max_size):
        cuts = list(enumerate_two_sided_cuts(g, max_size))
        keys = [c.edges for c in cuts]
        assert keys == sorted(keys, key=lambda e: (len(e), e))
        assert sorted(keys) == sorted(_brute_two_sided(g, max_size))

    @given(connected_graphs_st(min_n=2, max_n=8))
    def test_cut_identities(self, g):
        c = cyclomatic_number(g)
        for cut in enumerate_two_sided_cuts(g, 4):
            a, b = cut.sides()
            assert sorted(a + b) == list(range(g.n))
            assert all((u in a) != (v in a) for u, v in cut.edges)
            g1, g2 = g.induced_subgraph(a), g.induced_subgraph(b)
            assert g1.is_connected() and g2.is_connected()
            assert cyclomatic_number(g1) + cyclomatic_number(g2) == c + 1 - cut.size
