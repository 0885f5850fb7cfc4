"""graph6 and plain edge-list text formats.

graph6 packs the upper triangle of the adjacency matrix column by column
(``(0,1), (0,2), (1,2), (0,3), ...``) into 6-bit groups, each offset by 63.
The edge-list format is a header line ``n m`` followed by ``m`` lines ``u v``;
blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from hypoenergy.errors import EdgeListError, Graph6Error, GraphError
from hypoenergy.graph import Graph, order_bound

_HEADER = ">>graph6<<"


def _encode_order(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])
    return bytes([126, 126] + [63 + (n >> s & 63) for s in (30, 24, 18, 12, 6, 0)])


def to_graph6(g: Graph) -> str:
    """graph6 line for ``g`` (no header, no newline)."""
    out = bytearray(_encode_order(g.n))
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return out.decode("ascii")


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 line; the optional ``>>graph6<<`` header is accepted."""
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    base = 0
    if data.startswith(_HEADER.encode()):
        base = len(_HEADER)
        data = data[base:]
    if not data:
        raise Graph6Error("empty graph6 string", base)
    for i, ch in enumerate(data):
        if not 63 <= ch <= 126:
            raise Graph6Error(f"byte {ch!r} outside the graph6 range 63..126", base + i)

    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated 8-byte order header", base + len(data))
        n = 0
        for ch in data[2:8]:
            n = n << 6 | (ch - 63)
        pos = 8
    else:
        if len(data) < 4:
            raise Graph6Error("truncated 4-byte order header", base + len(data))
        n = 0
        for ch in data[1:4]:
            n = n << 6 | (ch - 63)
        pos = 4
    bound = order_bound()
    if n > bound:
        raise Graph6Error(f"order {n} exceeds the order bound {bound}", base)

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < need:
        raise Graph6Error(f"expected {need} data bytes, found {len(body)}", base + len(data))
    if len(body) > need:
        raise Graph6Error("trailing bytes after graph6 data", base + pos + need)

    edges = []
    k = 0
    i, j = 0, 1
    for idx, ch in enumerate(body):
        val = ch - 63
        for shift in range(5, -1, -1):
            if k >= nbits:
                if val >> shift & 1:
                    raise Graph6Error("nonzero padding bits", base + pos + idx)
                continue
            if val >> shift & 1:
                edges.append((i, j))
            k += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, edges)


def to_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def _content_lines(lines: Iterable[str]) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_edgelists(text: str) -> list[Graph]:
    """Parse one or more concatenated edge-list blocks."""
    graphs = []
    it = _content_lines(text.splitlines())
    for lineno, line in it:
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListError(f"expected header 'n m', got {line!r}", lineno)
        try:
            n, m = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"non-integer header {line!r}", lineno) from None
        if n < 0 or m < 0:
            raise EdgeListError("negative order or size", lineno)
        edges = []
        for _ in range(m):
            try:
                lineno, line = next(it)
            except StopIteration:
                raise EdgeListError(f"expected {m} edges, found {len(edges)}", lineno) from None
            parts = line.split()
            if len(parts) != 2:
                raise EdgeListError(f"expected edge 'u v', got {line!r}", lineno)
            try:
                edges.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise EdgeListError(f"non-integer edge {line!r}", lineno) from None
        try:
            graphs.append(Graph(n, edges))
        except GraphError as exc:
            raise EdgeListError(str(exc), lineno) from None
    return graphs


def parse_edgelist(text: str) -> Graph:
    graphs = parse_edgelists(text)
    if len(graphs) != 1:
        raise EdgeListError(f"expected exactly one graph, found {len(graphs)}", 1)
    return graphs[0]


def parse_graph6_lines(text: str) -> list[Graph]:
    graphs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            graphs.append(parse_graph6(line))
        except Graph6Error as exc:
            raise Graph6Error(f"line {lineno}: {exc.args[0].rsplit(' (byte', 1)[0]}", exc.offset) from None
    return graphs


def read_graphs(stream: TextIO, fmt: str) -> list[Graph]:
    text = stream.read()
    if fmt == "graph6":
        return parse_graph6_lines(text)
    if fmt == "edgelist":
        return parse_edgelists(text)
    raise ValueError(f"unknown format {fmt!r}")


def write_graphs(graphs: Iterable[Graph], stream: TextIO, fmt: str) -> None:
    for g in graphs:
        if fmt == "graph6":
            stream.write(to_graph6(g) + "\n")
        elif fmt == "edgelist":
            stream.write(to_edgelist(g))
        else:
            raise ValueError(f"unknown format {fmt!r}")
