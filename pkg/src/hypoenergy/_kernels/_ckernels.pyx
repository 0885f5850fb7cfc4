# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels; same contract as ``_pykernels``."""

from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy
from libc.math cimport sqrt, fabs
from libc.stdint cimport uint64_t

from hypoenergy._kernels.errors import JacobiNoConvergence

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

MAX_ORDER = 64


def jacobi_eigenvalues(flat, int n, double tol, int max_sweeps=100):
    cdef double *a
    cdef int i, p, q, r, sweep
    cdef double off = 0.0, apq, app, aqq, theta, t, c, s, tau, arp, arq, nrp, nrq
    if n == 0:
        return [], 0
    a = <double *> malloc(n * n * sizeof(double))
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(n * n):
            a[i] = float(flat[i])
        for sweep in range(max_sweeps + 1):
            off = 0.0
            for p in range(n):
                for q in range(p + 1, n):
                    off += a[p * n + q] * a[p * n + q]
            if sqrt(2.0 * off) < tol:
                return [a[i * n + i] for i in range(n)], sweep
            if sweep == max_sweeps:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p * n + q]
                    if apq == 0.0:
                        continue
                    app = a[p * n + p]
                    aqq = a[q * n + q]
                    theta = (aqq - app) / (2.0 * apq)
                    if fabs(theta) > 1e150:
                        t = 0.5 / theta
                    else:
                        t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                        if theta < 0.0:
                            t = -t
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    tau = s / (1.0 + c)
                    a[p * n + p] = app - t * apq
                    a[q * n + q] = aqq + t * apq
                    a[p * n + q] = 0.0
                    a[q * n + p] = 0.0
                    for r in range(n):
                        if r == p or r == q:
                            continue
                        arp = a[r * n + p]
                        arq = a[r * n + q]
                        nrp = arp - s * (arq + tau * arp)
                        nrq = arq + s * (arp - tau * arq)
                        a[r * n + p] = nrp
                        a[p * n + r] = nrp
                        a[r * n + q] = nrq
                        a[q * n + r] = nrq
        raise JacobiNoConvergence(
            f"off-diagonal norm {sqrt(2.0 * off):.3e} still above {tol:.3e} "
            f"after {max_sweeps} sweeps"
        )
    finally:
        free(a)


cdef class _Labeler:
    cdef int n
    cdef uint64_t adj[64]
    cdef int *labs          # (n + 1) * n, one partition per depth
    cdef char *ends         # (n + 1) * n, ends[k] = 1 if a cell ends at k
    cdef int *prefix
    cdef int *tmp_lab
    cdef char *tmp_ends
    cdef int *cnt
    cdef int *uf
    cdef int have_first
    cdef int have_best
    cdef int *first_lab
    cdef int *best_lab
    cdef uint64_t *first_rows
    cdef uint64_t *best_rows
    cdef uint64_t *rows
    cdef int *pos
    cdef int *gens
    cdef int ngens
    cdef int capgens

    def __cinit__(self, int n, adj):
        cdef int i
        self.n = n
        for i in range(n):
            self.adj[i] = <uint64_t> adj[i]
        self.labs = <int *> malloc((n + 1) * n * sizeof(int))
        self.ends = <char *> malloc((n + 1) * n * sizeof(char))
        self.prefix = <int *> malloc(n * sizeof(int))
        self.tmp_lab = <int *> malloc(n * sizeof(int))
        self.tmp_ends = <char *> malloc(n * sizeof(char))
        self.cnt = <int *> malloc(n * sizeof(int))
        self.uf = <int *> malloc(n * sizeof(int))
        self.first_lab = <int *> malloc(n * sizeof(int))
        self.best_lab = <int *> malloc(n * sizeof(int))
        self.first_rows = <uint64_t *> malloc(n * sizeof(uint64_t))
        self.best_rows = <uint64_t *> malloc(n * sizeof(uint64_t))
        self.rows = <uint64_t *> malloc(n * sizeof(uint64_t))
        self.pos = <int *> malloc(n * sizeof(int))
        self.capgens = 8
        self.gens = <int *> malloc(self.capgens * n * sizeof(int))
        self.ngens = 0
        self.have_first = 0
        self.have_best = 0

    def __dealloc__(self):
        free(self.labs)
        free(self.ends)
        free(self.prefix)
        free(self.tmp_lab)
        free(self.tmp_ends)
        free(self.cnt)
        free(self.uf)
        free(self.first_lab)
        free(self.best_lab)
        free(self.first_rows)
        free(self.best_rows)
        free(self.rows)
        free(self.pos)
        free(self.gens)

    cdef void refine(self, int *lab, char *ends) noexcept:
        cdef int n = self.n
        cdef int s, e, k, cs, ce, out, lo, hi, val, split
        cdef uint64_t mask
        while True:
            split = 0
            s = 0
            while s < n:
                e = s
                while not ends[e]:
                    e += 1
                mask = 0
                for k in range(s, e + 1):
                    mask |= (<uint64_t> 1) << lab[k]
                out = 0
                cs = 0
                while cs < n:
                    ce = cs
                    while not ends[ce]:
                        ce += 1
                    if cs == ce:
                        self.tmp_lab[out] = lab[cs]
                        self.tmp_ends[out] = 1
                        out += 1
                    else:
                        lo = 65
                        hi = -1
                        for k in range(cs, ce + 1):
                            self.cnt[k] = __builtin_popcountll(self.adj[lab[k]] & mask)
                            if self.cnt[k] < lo:
                                lo = self.cnt[k]
                            if self.cnt[k] > hi:
                                hi = self.cnt[k]
                        if lo == hi:
                            for k in range(cs, ce + 1):
                                self.tmp_lab[out] = lab[k]
                                self.tmp_ends[out] = 0
                                out += 1
                            self.tmp_ends[out - 1] = 1
                        else:
                            split = 1
                            for val in range(lo, hi + 1):
                                e = out
                                for k in range(cs, ce + 1):
                                    if self.cnt[k] == val:
                                        self.tmp_lab[out] = lab[k]
                                        self.tmp_ends[out] = 0
                                        out += 1
                                if out > e:
                                    self.tmp_ends[out - 1] = 1
                    cs = ce + 1
                if split:
                    memcpy(lab, self.tmp_lab, n * sizeof(int))
                    memcpy(ends, self.tmp_ends, n * sizeof(char))
                    break
                # advance to next splitter cell
                e = s
                while not ends[e]:
                    e += 1
                s = e + 1
            if not split:
                return

    cdef int find(self, int x) noexcept:
        while self.uf[x] != x:
            self.uf[x] = self.uf[self.uf[x]]
            x = self.uf[x]
        return x

    cdef void orbits_fixing(self, int depth) noexcept:
        cdef int n = self.n
        cdef int g, x, a, b, j, ok
        cdef int *perm
        for x in range(n):
            self.uf[x] = x
        for g in range(self.ngens):
            perm = self.gens + g * n
            ok = 1
            for j in range(depth):
                if perm[self.prefix[j]] != self.prefix[j]:
                    ok = 0
                    break
            if not ok:
                continue
            for x in range(n):
                a = self.find(x)
                b = self.find(perm[x])
                if a != b:
                    if a < b:
                        self.uf[b] = a
                    else:
                        self.uf[a] = b

    cdef int compare_rows(self, uint64_t *x, uint64_t *y) noexcept:
        cdef int i
        for i in range(self.n):
            if x[i] != y[i]:
                return 1 if x[i] > y[i] else -1
        return 0

    cdef void add_generator(self, int *ref_lab, int *lab) noexcept:
        cdef int n = self.n
        cdef int i, moved = 0
        cdef int *perm
        if self.ngens == self.capgens:
            self.capgens *= 2
            self.gens = <int *> realloc(self.gens, self.capgens * n * sizeof(int))
        perm = self.gens + self.ngens * n
        for i in range(n):
            perm[ref_lab[i]] = lab[i]
        for i in range(n):
            if perm[i] != i:
                moved = 1
                break
        if moved:
            self.ngens += 1

    cdef void leaf(self, int *lab) noexcept:
        cdef int n = self.n
        cdef int i
        cdef uint64_t bits, row
        for i in range(n):
            self.pos[lab[i]] = i
        for i in range(n):
            bits = self.adj[lab[i]]
            row = 0
            while bits:
                row |= (<uint64_t> 1) << self.pos[__builtin_ctzll(bits)]
                bits &= bits - 1
            self.rows[i] = row
        if self.have_first and self.compare_rows(self.rows, self.first_rows) == 0:
            self.add_generator(self.first_lab, lab)
            return
        if self.have_best and self.compare_rows(self.rows, self.best_rows) == 0:
            self.add_generator(self.best_lab, lab)
            return
        if not self.have_first:
            memcpy(self.first_rows, self.rows, n * sizeof(uint64_t))
            memcpy(self.first_lab, lab, n * sizeof(int))
            self.have_first = 1
        if not self.have_best or self.compare_rows(self.rows, self.best_rows) > 0:
            memcpy(self.best_rows, self.rows, n * sizeof(uint64_t))
            memcpy(self.best_lab, lab, n * sizeof(int))
            self.have_best = 1

    cdef void search(self, int depth) noexcept:
        cdef int n = self.n
        cdef int *lab = self.labs + depth * n
        cdef char *ends = self.ends + depth * n
        cdef int *clab
        cdef char *cends
        cdef int k, ts, te, ncells, size, j, v, u, out, skip, nexp
        cdef int target[64]
        cdef int explored[64]
        self.refine(lab, ends)
        ncells = 0
        for k in range(n):
            ncells += ends[k]
        if ncells == n:
            self.leaf(lab)
            return
        ts = 0
        while True:
            te = ts
            while not ends[te]:
                te += 1
            if te > ts:
                break
            ts = te + 1
        size = te - ts + 1
        for k in range(size):
            target[k] = lab[ts + k]
        # insertion sort: ascending vertex order
        for k in range(1, size):
            v = target[k]
            j = k - 1
            while j >= 0 and target[j] > v:
                target[j + 1] = target[j]
                j -= 1
            target[j + 1] = v
        nexp = 0
        clab = self.labs + (depth + 1) * n
        cends = self.ends + (depth + 1) * n
        for k in range(size):
            v = target[k]
            if nexp > 0 and self.ngens > 0:
                self.orbits_fixing(depth)
                skip = 0
                for j in range(nexp):
                    if self.find(v) == self.find(explored[j]):
                        skip = 1
                        break
                if skip:
                    continue
            explored[nexp] = v
            nexp += 1
            memcpy(clab, lab, n * sizeof(int))
            memcpy(cends, ends, n * sizeof(char))
            clab[ts] = v
            cends[ts] = 1
            out = ts + 1
            for j in range(ts, te + 1):
                u = lab[j]
                if u != v:
                    clab[out] = u
                    cends[out] = 0
                    out += 1
            cends[te] = 1
            self.prefix[depth] = v
            self.search(depth + 1)

    def run(self):
        cdef int n = self.n
        cdef int i
        for i in range(n):
            self.labs[i] = i
            self.ends[i] = 0
        self.ends[n - 1] = 1
        self.search(0)
        lab = [self.best_lab[i] for i in range(n)]
        rows = tuple(int(self.best_rows[i]) for i in range(n))
        gens = [[self.gens[g * n + i] for i in range(n)] for g in range(self.ngens)]
        return lab, rows, gens


def canonical_labeling(int n, adj):
    if n == 0:
        return [], (), []
    if n > MAX_ORDER:
        raise ValueError(f"compiled labeler supports at most {MAX_ORDER} vertices")
    return _Labeler(n, adj).run()
