"""Pure-Python kernels: the portable fallback for the compiled extension.

Every function here has a compiled twin in ``_kernels`` with identical
semantics AND identical floating-point behaviour: the same draw order, the
same summation order (components are always visited in order of their
minimum vertex), and the same SplitMix64 substream arithmetic.  Keep the
two in sync — backend equality is enforced by tests.

Sizes are small (vertex counts of a few dozen, edge counts <= 24), so the
code favours clarity over micro-optimization; the compiled backend is the
one that gets the throughput.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_SALT = 0x1F123BB5
_INV = 2.0**-53

SIZE_MODE = 0
EDGE_MODE = 1
NEVER = 0x7FFFFFFF  # threshold sentinel: vertex can't be infected by neighbors


def _mix(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _stream(seed, index):
    return _mix((seed & MASK64) ^ _mix((index * GOLDEN + _SALT) & MASK64))


class _UnionFind:
    """Union by size with per-root edge counts; rebuilt cheaply via reset."""

    __slots__ = ("parent", "size", "ecnt", "nv")

    def __init__(self, nv):
        self.nv = nv
        self.parent = list(range(nv))
        self.size = [1] * nv
        self.ecnt = [0] * nv

    def reset(self):
        for v in range(self.nv):
            self.parent[v] = v
            self.size[v] = 1
            self.ecnt[v] = 0

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def add_edge(self, u, v):
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            self.ecnt[ru] += 1
            return
        if self.size[ru] < self.size[rv]:
            ru, rv = rv, ru
        self.parent[rv] = ru
        self.size[ru] += self.size[rv]
        self.ecnt[ru] += self.ecnt[rv] + 1


def _value(uf, mode, table):
    """Sum of table[.] over components, visited by minimum vertex index."""
    val = 0.0
    seen = [False] * uf.nv
    for x in range(uf.nv):
        r = uf.find(x)
        if not seen[r]:
            seen[r] = True
            if mode == SIZE_MODE:
                val += table[uf.size[r]]
            else:
                val += table[uf.ecnt[r]]
    return val


def exact_scan(us, vs, nv, weights, mode, table, start, count):
    """Weighted sum of the component functional over edge subsets.

    Visits subset indices ``start .. start+count-1`` of a reflected
    Gray-code walk over all 2^E subsets; ``weights[k]`` is the probability
    of a subset with k edges.  Unions are incremental; an edge removal
    rebuilds the union-find by replaying the subset.  Accumulation is a
    compensated (Kahan) sum.
    """
    us = [int(u) for u in us]
    vs = [int(v) for v in vs]
    weights = [float(w) for w in weights]
    table = [float(t) for t in table]
    n_edges = len(us)
    uf = _UnionFind(nv)
    mask = start ^ (start >> 1)
    popcnt = mask.bit_count()

    def rebuild():
        uf.reset()
        for e in range(n_edges):
            if (mask >> e) & 1:
                uf.add_edge(us[e], vs[e])
        return _value(uf, mode, table)

    value = rebuild()
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
        bitval = (i + 1) & -(i + 1)
        e = bitval.bit_length() - 1
        if mask & bitval:
            mask ^= bitval
            popcnt -= 1
            value = rebuild()
        else:
            mask ^= bitval
            popcnt += 1
            ru, rv = uf.find(us[e]), uf.find(vs[e])
            if ru == rv:
                if mode == EDGE_MODE:
                    value -= table[uf.ecnt[ru]]
                    uf.ecnt[ru] += 1
                    value += table[uf.ecnt[ru]]
                else:
                    uf.ecnt[ru] += 1
            else:
                if mode == SIZE_MODE:
                    value -= table[uf.size[ru]]
                    value -= table[uf.size[rv]]
                    value += table[uf.size[ru] + uf.size[rv]]
                else:
                    value -= table[uf.ecnt[ru]]
                    value -= table[uf.ecnt[rv]]
                    value += table[uf.ecnt[ru] + uf.ecnt[rv] + 1]
                if uf.size[ru] < uf.size[rv]:
                    ru, rv = rv, ru
                uf.parent[rv] = ru
                uf.size[ru] += uf.size[rv]
                uf.ecnt[ru] += uf.ecnt[rv] + 1
        i += 1
    return acc


def perc_values(us, vs, nv, p, mode, table, seed, start, count, out):
    """Per-sample functional values of independently percolated graphs."""
    us = [int(u) for u in us]
    vs = [int(v) for v in vs]
    table = [float(t) for t in table]
    n_edges = len(us)
    uf = _UnionFind(nv)
    seed &= MASK64
    for s in range(count):
        state = _stream(seed, start + s)
        uf.reset()
        for e in range(n_edges):
            state = (state + GOLDEN) & MASK64
            if (_mix(state) >> 11) * _INV < p:
                uf.add_edge(us[e], vs[e])
        out[s] = _value(uf, mode, table)


def cascade_counts(us, vs, nv, mu, p, seed, start, count, out):
    """Per-sample infected counts of the independent cascade.

    Draw order per sample: one uniform per vertex (nature infection), then
    one per edge (transmission).  A vertex ends up infected exactly when
    its component under the retained edges holds a nature-infected vertex.
    """
    us = [int(u) for u in us]
    vs = [int(v) for v in vs]
    n_edges = len(us)
    uf = _UnionFind(nv)
    seeded = [False] * nv
    seed &= MASK64
    for s in range(count):
        state = _stream(seed, start + s)
        for v in range(nv):
            state = (state + GOLDEN) & MASK64
            seeded[v] = (_mix(state) >> 11) * _INV < mu
        uf.reset()
        for e in range(n_edges):
            state = (state + GOLDEN) & MASK64
            if (_mix(state) >> 11) * _INV < p:
                uf.add_edge(us[e], vs[e])
        hit = [False] * nv
        for v in range(nv):
            if seeded[v]:
                hit[uf.find(v)] = True
        total = 0
        for v in range(nv):
            r = uf.find(v)
            if r == v and hit[r]:
                total += uf.size[r]
        out[s] = total


def threshold_counts(us, vs, nv, cumprobs, seed, start, count, out):
    """Per-sample infected counts under the general threshold dynamics.

    Each vertex draws an integer threshold: the first index t with
    u < cumprobs[t], or NEVER if the uniform lands in the residual tail.
    Rounds are synchronous; a vertex activates once its infected-neighbor
    count reaches its threshold.
    """
    us = [int(u) for u in us]
    vs = [int(v) for v in vs]
    cumprobs = [float(c) for c in cumprobs]
    n_edges = len(us)
    n_levels = len(cumprobs)
    nbr = [[] for _ in range(nv)]
    for e in range(n_edges):
        nbr[us[e]].append(vs[e])
        nbr[vs[e]].append(us[e])
    thr = [0] * nv
    seed &= MASK64
    for s in range(count):
        state = _stream(seed, start + s)
        for v in range(nv):
            state = (state + GOLDEN) & MASK64
            u = (_mix(state) >> 11) * _INV
            t = 0
            while t < n_levels and not u < cumprobs[t]:
                t += 1
            thr[v] = t if t < n_levels else NEVER
        infected = [False] * nv
        seen_count = [0] * nv
        frontier = [v for v in range(nv) if thr[v] == 0]
        for v in frontier:
            infected[v] = True
        total = len(frontier)
        while frontier:
            for v in frontier:
                for w in nbr[v]:
                    seen_count[w] += 1
            frontier = [
                w for w in range(nv)
                if not infected[w] and seen_count[w] >= thr[w]
            ]
            for w in frontier:
                infected[w] = True
            total += len(frontier)
        out[s] = total


def subnet_best(us, vs, nv, r_masks, d, table):
    """Scan all edge subsets keeping every R degree >= d; minimize the
    size-table functional.  Returns (best value, feasible count)."""
    us = [int(u) for u in us]
    vs = [int(v) for v in vs]
    r_masks = [int(m) for m in r_masks]
    table = [float(t) for t in table]
    n_edges = len(us)
    uf = _UnionFind(nv)
    best = float("inf")
    feasible = 0
    for mask in range(1 << n_edges):
        ok = True
        for rm in r_masks:
            if (mask & rm).bit_count() < d:
                ok = False
                break
        if not ok:
            continue
        feasible += 1
        uf.reset()
        for e in range(n_edges):
            if (mask >> e) & 1:
                uf.add_edge(us[e], vs[e])
        val = _value(uf, SIZE_MODE, table)
        if val < best:
            best = val
    return best, feasible


def subnet_collect(us, vs, nv, r_masks, d, table, threshold, cap):
    """Feasible subset masks whose functional value is <= threshold.

    Returns the list of masks, or None if more than ``cap`` qualify.
    """
    us = [int(u) for u in us]
    vs = [int(v) for v in vs]
    r_masks = [int(m) for m in r_masks]
    table = [float(t) for t in table]
    n_edges = len(us)
    uf = _UnionFind(nv)
    found = []
    for mask in range(1 << n_edges):
        ok = True
        for rm in r_masks:
            if (mask & rm).bit_count() < d:
                ok = False
                break
        if not ok:
            continue
        uf.reset()
        for e in range(n_edges):
            if (mask >> e) & 1:
                uf.add_edge(us[e], vs[e])
        if _value(uf, SIZE_MODE, table) <= threshold:
            if len(found) >= cap:
                return None
            found.append(mask)
    return found
