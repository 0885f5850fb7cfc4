import pytest
from hypothesis import settings, strategies as st

from hypoenergy.enumeration import EnumSpec, connected_graphs
from hypoenergy.graph import Graph

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=8, max_degree=None):
    """Random labeled graphs; edges beyond ``max_degree`` are dropped."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for v in range(n) for u in range(v)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    deg = [0] * n
    edges = []
    for (u, v), keep in zip(pairs, chosen):
        if keep and (max_degree is None or (deg[u] < max_degree and deg[v] < max_degree)):
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, edges)


@st.composite
def connected_graphs_st(draw, min_n=1, max_n=8, max_degree=None):
    """Random connected graphs: a random spanning tree plus extra edges."""
    n = draw(st.integers(min_n, max_n))
    deg = [0] * n
    edges = set()
    for v in range(1, n):
        options = [u for u in range(v) if max_degree is None or deg[u] < max_degree]
        u = draw(st.sampled_from(options))
        edges.add((u, v))
        deg[u] += 1
        deg[v] += 1
    pairs = [(u, v) for v in range(n) for u in range(v) if (u, v) not in edges]
    extra = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    for (u, v), keep in zip(pairs, extra):
        if keep and (max_degree is None or (deg[u] < max_degree and deg[v] < max_degree)):
            edges.add((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, edges)


@pytest.fixture(scope="session")
def subcubic_10():
    """All connected graphs with max degree 3 and at most 10 vertices."""
    return list(connected_graphs(EnumSpec(10)))


@pytest.fixture(scope="session")
def subcubic_trees_10():
    return list(connected_graphs(EnumSpec(10, graph_class="trees")))


# acceptance summary --------------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when == "teardown" or (rep.when == "setup" and rep.passed):
        return
    number, title = marker.args
    detail = "; ".join(str(v) for k, v in rep.user_properties if k == "detail")
    if rep.failed:
        message = rep.longrepr.reprcrash.message if hasattr(rep.longrepr, "reprcrash") else ""
        detail = (detail + "; " if detail else "") + message.splitlines()[0] if message else detail
    _ACCEPTANCE[number] = (title, rep.passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok, detail = _ACCEPTANCE[number]
        line = f"{'PASS' if ok else 'FAIL'} [{number}] {title}"
        terminalreporter.write_line(line + (f" -- {detail}" if detail else ""))
