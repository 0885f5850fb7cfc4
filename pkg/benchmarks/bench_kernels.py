"""Compare the compiled and pure-Python kernels on the package's real workloads.

    python3 benchmarks/bench_kernels.py [--max-n 9] [--repeat 3]

Workloads: canonical labeling of every connected max-degree-3 graph up to
``--max-n`` (what enumeration spends its time on), canonical labeling of a
few highly symmetric graphs, and Jacobi spectra of the same corpus.
"""

import argparse
import statistics
import sys
import time

from hypoenergy import _kernels
from hypoenergy.enumeration import EnumSpec, connected_graphs
from hypoenergy.graph import complete_bipartite, complete_graph, cycle_graph


def _corpus(max_n):
    return list(connected_graphs(EnumSpec(max_n)))


def _flat(g):
    return [float(x) for row in g.adjacency_matrix() for x in row]


def _time(fn, repeat):
    runs = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - start)
    return statistics.median(runs)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=9)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    if "compiled" not in _kernels.BACKENDS:
        print("compiled backend not built; run `pip install -e . --no-build-isolation`")
        return 1
    corpus = _corpus(args.max_n)
    symmetric = [complete_graph(16), complete_bipartite(8, 8), cycle_graph(24)]
    inputs = [(g.n, g.adj) for g in corpus]
    matrices = [(_flat(g), g.n, 1e-12 * g.n) for g in corpus]

    workloads = {
        f"canonical labeling, {len(corpus)} graphs n<={args.max_n}":
            lambda impl: [impl.canonical_labeling(n, adj) for n, adj in inputs],
        "canonical labeling, K16 + K8,8 + C24":
            lambda impl: [impl.canonical_labeling(g.n, g.adj) for g in symmetric],
        f"Jacobi spectra, {len(corpus)} graphs n<={args.max_n}":
            lambda impl: [impl.jacobi_eigenvalues(f, n, tol, 100) for f, n, tol in matrices],
    }
    print(f"{'workload':<46} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for label, work in workloads.items():
        py = _time(lambda: work(_kernels.BACKENDS["python"]), args.repeat)
        c = _time(lambda: work(_kernels.BACKENDS["compiled"]), args.repeat)
        print(f"{label:<46} {py:>10.3f} {c:>11.3f} {py / c:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
