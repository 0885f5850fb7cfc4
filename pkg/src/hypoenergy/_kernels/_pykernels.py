"""Pure-Python hot kernels.

Reference implementations of the two inner loops the rest of the package
leans on: the cyclic Jacobi eigenvalue sweep and the partition-refinement
canonical labeler. The compiled module ``_ckernels`` exposes the same
functions with the same semantics; results must agree exactly for the
labeler and to rounding for the eigensolver.
"""

from __future__ import annotations

import math

from .errors import JacobiNoConvergence


def jacobi_eigenvalues(flat, n, tol, max_sweeps=100):
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    ``flat`` is the row-major matrix as a sequence of ``n*n`` floats. Iterates
    until the Frobenius norm of the off-diagonal part drops below ``tol``.
    Returns the diagonal (unsorted) and the number of sweeps used.
    """
    a = [list(map(float, flat[i * n:(i + 1) * n])) for i in range(n)]
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            row = a[p]
            for q in range(p + 1, n):
                off += row[q] * row[q]
        if math.sqrt(2.0 * off) < tol:
            return [a[i][i] for i in range(n)], sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if apq == 0.0:
                    continue
                app = a[p][p]
                aqq = a[q][q]
                theta = (aqq - app) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                a[p][p] = app - t * apq
                a[q][q] = aqq + t * apq
                a[p][q] = 0.0
                a[q][p] = 0.0
                for r in range(n):
                    if r == p or r == q:
                        continue
                    arp = a[r][p]
                    arq = a[r][q]
                    nrp = arp - s * (arq + tau * arp)
                    nrq = arq + s * (arp - tau * arq)
                    a[r][p] = nrp
                    a[p][r] = nrp
                    a[r][q] = nrq
                    a[q][r] = nrq
    raise JacobiNoConvergence(
        f"off-diagonal norm {math.sqrt(2.0 * off):.3e} still above {tol:.3e} "
        f"after {max_sweeps} sweeps"
    )


# canonical labeling ------------------------------------------------------


def _refine(adj, cells):
    # Split cells by neighbour counts into each cell until the partition is
    # equitable. New cells are ordered by count so the result is equivariant.
    while True:
        for i in range(len(cells)):
            mask = 0
            for v in cells[i]:
                mask |= 1 << v
            out = []
            split = False
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups = {}
                for v in cell:
                    groups.setdefault((adj[v] & mask).bit_count(), []).append(v)
                if len(groups) == 1:
                    out.append(cell)
                else:
                    split = True
                    for k in sorted(groups):
                        out.append(groups[k])
            if split:
                cells = out
                break
        else:
            return cells


def _leaf_certificate(adj, lab):
    pos = [0] * len(lab)
    for i, v in enumerate(lab):
        pos[v] = i
    rows = []
    for v in lab:
        row = 0
        bits = adj[v]
        while bits:
            low = bits & -bits
            row |= 1 << pos[low.bit_length() - 1]
            bits ^= low
        rows.append(row)
    return tuple(rows)


def _orbit_roots(n, gens):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in range(n):
            a, b = find(x), find(g[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]


def canonical_labeling(n, adj):
    """Canonical labeling of a graph given as adjacency bitmasks.

    Returns ``(lab, rows, generators)`` where ``lab[i]`` is the vertex placed at
    canonical position ``i``, ``rows`` is the relabeled adjacency (one bitmask
    per canonical position) and ``generators`` are automorphisms found along
    the way, each as a list mapping vertex to image.

    The search explores every leaf of the individualization-refinement tree,
    pruning only children that a known automorphism fixing the current prefix
    maps onto an explored sibling, so the maximum certificate is exact.
    """
    if n == 0:
        return [], (), []
    adj = list(adj)
    state = {"best": None, "best_lab": None, "first": None, "first_lab": None}
    gens = []

    def leaf(lab):
        cert = _leaf_certificate(adj, lab)
        for ref, ref_lab in ((state["first"], state["first_lab"]),
                             (state["best"], state["best_lab"])):
            if ref is not None and cert == ref:
                g = [0] * n
                for a, b in zip(ref_lab, lab):
                    g[a] = b
                if any(g[x] != x for x in range(n)):
                    gens.append(g)
                return
        if state["first"] is None:
            state["first"], state["first_lab"] = cert, lab
        if state["best"] is None or cert > state["best"]:
            state["best"], state["best_lab"] = cert, lab

    def search(cells, prefix):
        cells = _refine(adj, cells)
        if len(cells) == n:
            leaf([c[0] for c in cells])
            return
        t = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = sorted(cells[t])
        explored = []
        for v in target:
            if explored:
                stab = [g for g in gens if all(g[p] == p for p in prefix)]
                if stab:
                    roots = _orbit_roots(n, stab)
                    if any(roots[v] == roots[u] for u in explored):
                        continue
            explored.append(v)
            child = cells[:t] + [[v], [w for w in cells[t] if w != v]] + cells[t + 1:]
            search(child, prefix + [v])

    search([list(range(n))], [])
    return state["best_lab"], state["best"], gens
