# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: the hot loops behind the exact percolation scan and
the Monte Carlo samplers.

This module is the performance twin of ``_pykernels``; both implement the
same draw order, the same component-visit order (minimum vertex first),
the same compensated summation, and the same SplitMix64 substream
arithmetic, so results are bit-for-bit identical across backends.  The
extension is compiled with -ffp-contract=off to keep double rounding
aligned with CPython.
"""

from libc.stdlib cimport calloc, free, malloc

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

SIZE_MODE = 0
EDGE_MODE = 1
NEVER = 0x7FFFFFFF

cdef unsigned long long GOLDEN = 0x9E3779B97F4A7C15ULL
cdef unsigned long long SALT = 0x1F123BB5ULL
cdef double INV53 = 1.0 / 9007199254740992.0
cdef int C_NEVER = 0x7FFFFFFF


cdef inline unsigned long long _mix(unsigned long long z) nogil:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline unsigned long long _stream(unsigned long long seed, unsigned long long index) nogil:
    return _mix(seed ^ _mix(index * GOLDEN + SALT))


cdef inline int _find(int* parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef inline void _reset(int* parent, int* size, int* ecnt, int nv) nogil:
    cdef int v
    for v in range(nv):
        parent[v] = v
        size[v] = 1
        ecnt[v] = 0


cdef inline void _add_edge(int* parent, int* size, int* ecnt, int u, int v) nogil:
    cdef int ru = _find(parent, u)
    cdef int rv = _find(parent, v)
    cdef int tmp
    if ru == rv:
        ecnt[ru] += 1
        return
    if size[ru] < size[rv]:
        tmp = ru
        ru = rv
        rv = tmp
    parent[rv] = ru
    size[ru] += size[rv]
    ecnt[ru] += ecnt[rv] + 1


cdef inline double _value(int* parent, int* size, int* ecnt, char* seen,
                          int nv, int mode, const double* table) nogil:
    cdef double val = 0.0
    cdef int x, r
    for x in range(nv):
        seen[x] = 0
    for x in range(nv):
        r = _find(parent, x)
        if not seen[r]:
            seen[r] = 1
            if mode == 0:
                val += table[size[r]]
            else:
                val += table[ecnt[r]]
    return val


def exact_scan(const int[:] us, const int[:] vs, int nv, const double[:] weights,
               int mode, const double[:] table, long long start, long long count):
    """Weighted component-functional sum over a Gray-code subset range."""
    cdef int n_edges = us.shape[0]
    cdef int* parent = <int*> malloc(nv * sizeof(int))
    cdef int* size = <int*> malloc(nv * sizeof(int))
    cdef int* ecnt = <int*> malloc(nv * sizeof(int))
    cdef char* seen = <char*> malloc(nv)
    if parent == NULL or size == NULL or ecnt == NULL or seen == NULL:
        free(parent); free(size); free(ecnt); free(seen)
        raise MemoryError
    cdef unsigned long long mask, bitval
    cdef long long i, step
    cdef int popcnt, e, ru, rv, sa, sb, ea, eb, tmp
    cdef double value, acc, comp, term, y, t
    try:
        with nogil:
            mask = (<unsigned long long> start) ^ ((<unsigned long long> start) >> 1)
            popcnt = __builtin_popcountll(mask)
            _reset(parent, size, ecnt, nv)
            for e in range(n_edges):
                if (mask >> e) & 1:
                    _add_edge(parent, size, ecnt, us[e], vs[e])
            value = _value(parent, size, ecnt, seen, nv, mode, &table[0])
            acc = 0.0
            comp = 0.0
            i = start
            for step in range(count):
                term = weights[popcnt] * value
                y = term - comp
                t = acc + y
                comp = (t - acc) - y
                acc = t
                if step == count - 1:
                    break
                bitval = (<unsigned long long> (i + 1)) & (-<unsigned long long> (i + 1))
                e = __builtin_ctzll(<unsigned long long> (i + 1))
                if mask & bitval:
                    mask ^= bitval
                    popcnt -= 1
                    _reset(parent, size, ecnt, nv)
                    for e in range(n_edges):
                        if (mask >> e) & 1:
                            _add_edge(parent, size, ecnt, us[e], vs[e])
                    value = _value(parent, size, ecnt, seen, nv, mode, &table[0])
                else:
                    mask ^= bitval
                    popcnt += 1
                    ru = _find(parent, us[e])
                    rv = _find(parent, vs[e])
                    if ru == rv:
                        if mode == 1:
                            value -= table[ecnt[ru]]
                            ecnt[ru] += 1
                            value += table[ecnt[ru]]
                        else:
                            ecnt[ru] += 1
                    else:
                        sa = size[ru]
                        sb = size[rv]
                        ea = ecnt[ru]
                        eb = ecnt[rv]
                        if mode == 0:
                            value -= table[sa]
                            value -= table[sb]
                            value += table[sa + sb]
                        else:
                            value -= table[ea]
                            value -= table[eb]
                            value += table[ea + eb + 1]
                        if sa < sb:
                            tmp = ru
                            ru = rv
                            rv = tmp
                        parent[rv] = ru
                        size[ru] += size[rv]
                        ecnt[ru] += ecnt[rv] + 1
                i += 1
    finally:
        free(parent); free(size); free(ecnt); free(seen)
    return acc


def perc_values(const int[:] us, const int[:] vs, int nv, double p, int mode,
                const double[:] table, unsigned long long seed,
                long long start, long long count, double[:] out):
    """Per-sample functional values of independently percolated graphs."""
    cdef int n_edges = us.shape[0]
    cdef int* parent = <int*> malloc(nv * sizeof(int))
    cdef int* size = <int*> malloc(nv * sizeof(int))
    cdef int* ecnt = <int*> malloc(nv * sizeof(int))
    cdef char* seen = <char*> malloc(nv)
    if parent == NULL or size == NULL or ecnt == NULL or seen == NULL:
        free(parent); free(size); free(ecnt); free(seen)
        raise MemoryError
    cdef long long s
    cdef int e
    cdef unsigned long long state
    try:
        with nogil:
            for s in range(count):
                state = _stream(seed, <unsigned long long> (start + s))
                _reset(parent, size, ecnt, nv)
                for e in range(n_edges):
                    state += GOLDEN
                    if (_mix(state) >> 11) * INV53 < p:
                        _add_edge(parent, size, ecnt, us[e], vs[e])
                out[s] = _value(parent, size, ecnt, seen, nv, mode, &table[0])
    finally:
        free(parent); free(size); free(ecnt); free(seen)


def cascade_counts(const int[:] us, const int[:] vs, int nv, double mu, double p,
                   unsigned long long seed, long long start, long long count,
                   int[:] out):
    """Per-sample infected counts of the independent cascade.

    Draw order per sample: one uniform per vertex (nature), one per edge
    (transmission); the infected set is the union of retained-edge
    components containing a nature-infected vertex.
    """
    cdef int n_edges = us.shape[0]
    cdef int* parent = <int*> malloc(nv * sizeof(int))
    cdef int* size = <int*> malloc(nv * sizeof(int))
    cdef int* ecnt = <int*> malloc(nv * sizeof(int))
    cdef char* seeded = <char*> malloc(nv)
    cdef char* hit = <char*> malloc(nv)
    if parent == NULL or size == NULL or ecnt == NULL or seeded == NULL or hit == NULL:
        free(parent); free(size); free(ecnt); free(seeded); free(hit)
        raise MemoryError
    cdef long long s
    cdef int e, v, r, total
    cdef unsigned long long state
    try:
        with nogil:
            for s in range(count):
                state = _stream(seed, <unsigned long long> (start + s))
                for v in range(nv):
                    state += GOLDEN
                    seeded[v] = 1 if (_mix(state) >> 11) * INV53 < mu else 0
                _reset(parent, size, ecnt, nv)
                for e in range(n_edges):
                    state += GOLDEN
                    if (_mix(state) >> 11) * INV53 < p:
                        _add_edge(parent, size, ecnt, us[e], vs[e])
                for v in range(nv):
                    hit[v] = 0
                for v in range(nv):
                    if seeded[v]:
                        hit[_find(parent, v)] = 1
                total = 0
                for v in range(nv):
                    r = _find(parent, v)
                    if r == v and hit[r]:
                        total += size[r]
                out[s] = total
    finally:
        free(parent); free(size); free(ecnt); free(seeded); free(hit)


def threshold_counts(const int[:] us, const int[:] vs, int nv,
                     const double[:] cumprobs, unsigned long long seed,
                     long long start, long long count, int[:] out):
    """Per-sample infected counts under the general threshold dynamics."""
    cdef int n_edges = us.shape[0]
    cdef int n_levels = cumprobs.shape[0]
    # CSR adjacency over global vertices.
    cdef int* offs = <int*> calloc(nv + 1, sizeof(int))
    cdef int* flat = <int*> malloc(2 * n_edges * sizeof(int))
    cdef int* cursor = <int*> malloc(nv * sizeof(int))
    cdef int* thr = <int*> malloc(nv * sizeof(int))
    cdef char* infected = <char*> malloc(nv)
    cdef int* seen_count = <int*> malloc(nv * sizeof(int))
    cdef int* frontier = <int*> malloc(nv * sizeof(int))
    cdef int* nxt = <int*> malloc(nv * sizeof(int))
    if (offs == NULL or flat == NULL or cursor == NULL or thr == NULL
            or infected == NULL or seen_count == NULL or frontier == NULL or nxt == NULL):
        free(offs); free(flat); free(cursor); free(thr)
        free(infected); free(seen_count); free(frontier); free(nxt)
        raise MemoryError
    cdef long long s
    cdef int e, v, w, t, k, n_front, n_next, total
    cdef unsigned long long state
    cdef double u
    try:
        with nogil:
            for e in range(n_edges):
                offs[us[e] + 1] += 1
                offs[vs[e] + 1] += 1
            for v in range(nv):
                offs[v + 1] += offs[v]
                cursor[v] = offs[v]
            for e in range(n_edges):
                flat[cursor[us[e]]] = vs[e]
                cursor[us[e]] += 1
                flat[cursor[vs[e]]] = us[e]
                cursor[vs[e]] += 1
            for s in range(count):
                state = _stream(seed, <unsigned long long> (start + s))
                for v in range(nv):
                    state += GOLDEN
                    u = (_mix(state) >> 11) * INV53
                    t = 0
                    while t < n_levels and not u < cumprobs[t]:
                        t += 1
                    thr[v] = t if t < n_levels else C_NEVER
                n_front = 0
                total = 0
                for v in range(nv):
                    seen_count[v] = 0
                    if thr[v] == 0:
                        infected[v] = 1
                        frontier[n_front] = v
                        n_front += 1
                        total += 1
                    else:
                        infected[v] = 0
                while n_front > 0:
                    for k in range(n_front):
                        v = frontier[k]
                        for e in range(offs[v], offs[v + 1]):
                            seen_count[flat[e]] += 1
                    n_next = 0
                    for w in range(nv):
                        if not infected[w] and seen_count[w] >= thr[w]:
                            nxt[n_next] = w
                            n_next += 1
                    for k in range(n_next):
                        infected[nxt[k]] = 1
                        frontier[k] = nxt[k]
                    n_front = n_next
                    total += n_next
                out[s] = total
    finally:
        free(offs); free(flat); free(cursor); free(thr)
        free(infected); free(seen_count); free(frontier); free(nxt)


def subnet_best(const int[:] us, const int[:] vs, int nv,
                const long long[:] r_masks, int d, const double[:] table):
    """Scan all edge subsets keeping every R degree >= d; minimize the
    size-table functional.  Returns (best value, feasible count)."""
    cdef int n_edges = us.shape[0]
    cdef int n_r = r_masks.shape[0]
    cdef int* parent = <int*> malloc(nv * sizeof(int))
    cdef int* size = <int*> malloc(nv * sizeof(int))
    cdef int* ecnt = <int*> malloc(nv * sizeof(int))
    cdef char* seen = <char*> malloc(nv)
    if parent == NULL or size == NULL or ecnt == NULL or seen == NULL:
        free(parent); free(size); free(ecnt); free(seen)
        raise MemoryError
    cdef unsigned long long mask, top = 1ULL << n_edges
    cdef double best = float("inf")
    cdef long long feasible = 0
    cdef double val
    cdef int e, k
    cdef bint ok
    try:
        with nogil:
            mask = 0
            while mask < top:
                ok = True
                for k in range(n_r):
                    if __builtin_popcountll(mask & <unsigned long long> r_masks[k]) < d:
                        ok = False
                        break
                if ok:
                    feasible += 1
                    _reset(parent, size, ecnt, nv)
                    for e in range(n_edges):
                        if (mask >> e) & 1:
                            _add_edge(parent, size, ecnt, us[e], vs[e])
                    val = _value(parent, size, ecnt, seen, nv, 0, &table[0])
                    if val < best:
                        best = val
                mask += 1
    finally:
        free(parent); free(size); free(ecnt); free(seen)
    return best, feasible


def subnet_collect(const int[:] us, const int[:] vs, int nv,
                   const long long[:] r_masks, int d, const double[:] table,
                   double threshold, long long cap):
    """Feasible subset masks with functional value <= threshold, or None
    if more than ``cap`` qualify."""
    cdef int n_edges = us.shape[0]
    cdef int n_r = r_masks.shape[0]
    cdef int* parent = <int*> malloc(nv * sizeof(int))
    cdef int* size = <int*> malloc(nv * sizeof(int))
    cdef int* ecnt = <int*> malloc(nv * sizeof(int))
    cdef char* seen = <char*> malloc(nv)
    if parent == NULL or size == NULL or ecnt == NULL or seen == NULL:
        free(parent); free(size); free(ecnt); free(seen)
        raise MemoryError
    cdef unsigned long long mask, top = 1ULL << n_edges
    cdef int e, k
    cdef bint ok
    found = []
    try:
        mask = 0
        while mask < top:
            ok = True
            for k in range(n_r):
                if __builtin_popcountll(mask & <unsigned long long> r_masks[k]) < d:
                    ok = False
                    break
            if ok:
                _reset(parent, size, ecnt, nv)
                for e in range(n_edges):
                    if (mask >> e) & 1:
                        _add_edge(parent, size, ecnt, us[e], vs[e])
                if _value(parent, size, ecnt, seen, nv, 0, &table[0]) <= threshold:
                    if len(found) >= cap:
                        return None
                    found.append(mask)
            mask += 1
    finally:
        free(parent); free(size); free(ecnt); free(seen)
    return found
