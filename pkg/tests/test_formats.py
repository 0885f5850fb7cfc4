import io

import networkx as nx
import pytest
from hypothesis import given

from conftest import graphs
from hypoenergy.errors import EdgeListError, Graph6Error
from hypoenergy.formats import (
    parse_edgelist,
    parse_edgelists,
    parse_graph6,
    parse_graph6_lines,
    read_graphs,
    to_edgelist,
    to_graph6,
    write_graphs,
)
from hypoenergy.graph import Graph, complete_bipartite, path_graph


def nx_graph6(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return nx.to_graph6_bytes(h, header=False).decode().strip()


def test_single_vertex():
    assert to_graph6(Graph(1)) == "@"
    assert parse_graph6("@") == Graph(1)


def test_k23_round_trip():
    text = to_graph6(complete_bipartite(2, 3))
    assert to_graph6(parse_graph6(text)) == text


def test_p4_round_trip():
    assert parse_graph6(to_graph6(path_graph(4))) == path_graph(4)


@given(graphs(max_n=20))
def test_matches_networkx_encoder(g):
    text = to_graph6(g)
    assert text == nx_graph6(g)
    assert parse_graph6(text) == g


def test_long_order_header(monkeypatch):
    monkeypatch.setenv("HYPO_ORDER_BOUND", "70")
    g = path_graph(63)
    assert to_graph6(g).startswith("~??~")
    assert to_graph6(g) == nx_graph6(g)
    assert parse_graph6(to_graph6(g)) == g


def test_header_and_bytes_input():
    assert parse_graph6(">>graph6<<Bw") == parse_graph6(b"Bw")


@pytest.mark.parametrize("text,offset", [
    ("", 0),          # nothing to read
    ("B", 1),         # missing edge bytes
    ("Bww", 2),       # trailing garbage
    ("B\x7f", 1),     # byte out of range
    ("Bx", 1),        # nonzero padding bits
])
def test_malformed(text, offset):
    with pytest.raises(Graph6Error) as info:
        parse_graph6(text)
    assert info.value.offset == offset
    assert "byte offset" in str(info.value)


def test_order_bound_enforced(monkeypatch):
    monkeypatch.setenv("HYPO_ORDER_BOUND", "5")
    with pytest.raises(Graph6Error, match="order bound"):
        parse_graph6("E???")


def test_graph6_lines_skip_blanks_and_comments():
    gs = parse_graph6_lines("# corpus\n@\n\nBw\n")
    assert [g.n for g in gs] == [1, 3]
    with pytest.raises(Graph6Error, match="line 2"):
        parse_graph6_lines("@\nB\n")


def test_edgelist_round_trip_and_comments():
    g = complete_bipartite(2, 3)
    text = to_edgelist(g)
    assert text.splitlines()[0] == "5 6"
    assert parse_edgelist(text) == g
    commented = "# K23\n5 6\n\n0 2  # first edge\n0 3\n0 4\n1 2\n1 3\n1 4\n"
    assert parse_edgelist(commented) == g


def test_multiple_edgelists():
    text = to_edgelist(path_graph(3)) + to_edgelist(Graph(1))
    assert parse_edgelists(text) == [path_graph(3), Graph(1)]
    with pytest.raises(EdgeListError):
        parse_edgelist(text)


@pytest.mark.parametrize("text,line", [
    ("3\n", 1),
    ("3 2\n0 1\n", 2),
    ("3 1\n0 x\n", 2),
    ("3 1\n0 0\n", 2),
    ("3 1\n0 5\n", 2),
])
def test_edgelist_errors(text, line):
    with pytest.raises(EdgeListError) as info:
        parse_edgelists(text)
    assert info.value.line == line


@pytest.mark.parametrize("fmt", ["graph6", "edgelist"])
def test_stream_round_trip(fmt):
    gs = [Graph(1), path_graph(4), complete_bipartite(2, 3)]
    buf = io.StringIO()
    write_graphs(gs, buf, fmt)
    buf.seek(0)
    assert read_graphs(buf, fmt) == gs
