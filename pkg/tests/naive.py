"""Independent brute-force oracles for the test suite.

Deliberately shares no code with the library: components come from BFS
over adjacency dicts (not union-find), expectations from a plain loop
over all edge subsets (no Gray code, no compensated sum), and threshold
values from exhaustive enumeration of threshold assignments.
"""

from __future__ import annotations

import itertools


def bfs_components(n_left, n_right, edges):
    """List of (global vertex set, edge count) per connected component."""
    nv = n_left + n_right
    adj = {v: [] for v in range(nv)}
    gedges = [(l, n_left + r) for l, r in edges]
    for u, w in gedges:
        adj[u].append(w)
        adj[w].append(u)
    seen = set()
    comps = []
    for v0 in range(nv):
        if v0 in seen:
            continue
        stack = [v0]
        seen.add(v0)
        members = {v0}
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    members.add(w)
                    stack.append(w)
        ecount = sum(1 for u, w in gedges if u in members)
        comps.append((members, ecount))
    return comps


def functional_value(n_left, n_right, edges, kind, mu=None):
    comps = bfs_components(n_left, n_right, edges)
    nv = n_left + n_right
    if kind == "escape_weight":
        return sum(len(c) * (1.0 - mu) ** len(c) for c, _ in comps)
    if kind == "isolated_count":
        return float(sum(1 for c, _ in comps if len(c) == 1))
    if kind == "susceptibility":
        return sum(len(c) ** 2 for c, _ in comps) / nv
    if kind == "sum_sq_sizes":
        return float(sum(len(c) ** 2 for c, _ in comps))
    if kind == "sum_sq_edges":
        return float(sum(e * e for _, e in comps))
    raise ValueError(kind)


def exact_expectation(g, p, kind, mu=None):
    """Plain sum over all 2^E subsets."""
    edges = list(g.edges)
    total = 0.0
    for bits in itertools.product((0, 1), repeat=len(edges)):
        sub = [e for e, b in zip(edges, bits) if b]
        k = sum(bits)
        weight = p**k * (1.0 - p) ** (len(edges) - k)
        total += weight * functional_value(g.n_left, g.n_right, sub, kind, mu)
    return total


def infected_fraction(g, mu, p):
    return 1.0 - exact_expectation(g, p, "escape_weight", mu) / (g.n_left + g.n_right)


def star_center_infection(k, mu, p):
    """P(the degree-k center is infected): brute force over leaf-edge subsets."""
    total = 0.0
    for mask in range(1 << k):
        alive = bin(mask).count("1")
        weight = p**alive * (1.0 - p) ** (k - alive)
        total += weight * (1.0 - (1.0 - mu) ** (1 + alive))
    return total


def star_leaf_infection(k, mu, p):
    """P(a fixed leaf of a k-star is infected): brute force over subsets."""
    total = 0.0
    for mask in range(1 << k):
        alive = bin(mask).count("1")
        weight = p**alive * (1.0 - p) ** (k - alive)
        size = 1 + alive if mask & 1 else 1  # bit 0 = the fixed leaf's own edge
        total += weight * (1.0 - (1.0 - mu) ** size)
    return total


def star_threshold_value(j, probs, residual):
    """Exhaustive threshold enumeration on the j-star with j-1 isolated
    L vertices (2j vertices total); practical for j <= 3."""
    outcomes = list(range(len(probs))) + [None]
    weights = list(probs) + [residual]
    nv = 2 * j
    # vertex 0 = center; 1..j-1 isolated; j..2j-1 leaves
    total = 0.0
    for assign in itertools.product(range(len(outcomes)), repeat=nv):
        w = 1.0
        for a in assign:
            w *= weights[a]
        if w == 0.0:
            continue
        thr = [outcomes[a] for a in assign]
        infected = [t == 0 for t in thr]
        changed = True
        while changed:
            changed = False
            for v in range(nv):
                if infected[v] or thr[v] is None:
                    continue
                if v == 0:
                    cnt = sum(1 for leaf in range(j, 2 * j) if infected[leaf])
                elif v >= j:
                    cnt = 1 if infected[0] else 0
                else:
                    cnt = 0
                if cnt >= thr[v]:
                    infected[v] = True
                    changed = True
        total += w * sum(infected) / nv
    return total


def triangle_decomposition(n, edges):
    """Whether (n, edges) partitions into vertex-disjoint triangles."""
    es = set(frozenset(e) for e in edges)

    def rec(uncov):
        if not uncov:
            return True
        v = min(uncov)
        for a, b in itertools.combinations(sorted(uncov - {v}), 2):
            if {frozenset((v, a)), frozenset((v, b)), frozenset((a, b))} <= es:
                if rec(uncov - {v, a, b}):
                    return True
        return False

    return n % 3 == 0 and rec(set(range(n)))
