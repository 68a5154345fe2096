"""Balanced bipartite graphs: construction, generators, component statistics,
canonical forms, and exhaustive non-isomorphic enumeration.

Vertices are indexed 0-based and independently on each side.  Where a single
index space is needed (samplers, kernels), L vertex ``i`` maps to global
index ``i`` and R vertex ``j`` to ``n_left + j``.

Isomorphism throughout this module means an independent relabelling of the
two sides: a pair of permutations ``(pi_L, pi_R)``.  The canonical form of a
graph is computed per connected component as the minimum adjacency
bit-matrix over all such relabellings (backtracking with degree pruning),
after which components are laid out in a fixed order.  Graphs are immutable
values; every operation returns a new graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, TextIO


@dataclass(frozen=True)
class BipartiteGraph:
    """A bipartite graph with explicit sides and a normalized edge tuple.

    ``edges`` is sorted and duplicate-free; use :func:`make_graph` to build
    a graph from untrusted input.
    """

    n_left: int
    n_right: int
    edges: tuple[tuple[int, int], ...]

    @property
    def n_vertices(self) -> int:
        return self.n_left + self.n_right

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def l_degrees(self) -> list[int]:
        degs = [0] * self.n_left
        for l, _ in self.edges:
            degs[l] += 1
        return degs

    def r_degrees(self) -> list[int]:
        degs = [0] * self.n_right
        for _, r in self.edges:
            degs[r] += 1
        return degs

    def global_edges(self) -> list[tuple[int, int]]:
        """Edges in the single 0..n_vertices-1 index space."""
        return [(l, self.n_left + r) for l, r in self.edges]

    def neighbors(self) -> tuple[list[list[int]], list[list[int]]]:
        """Adjacency lists (L side first), in R/L index terms."""
        ln = [[] for _ in range(self.n_left)]
        rn = [[] for _ in range(self.n_right)]
        for l, r in self.edges:
            ln[l].append(r)
            rn[r].append(l)
        return ln, rn


@dataclass(frozen=True)
class ComponentStats:
    """Sizes, edge counts, and isolated-vertex count of a graph's components.

    ``component_sizes`` and ``component_edge_counts`` are aligned and sorted
    by (size, edge count) descending.  A size-1 component has 0 edges.
    """

    component_sizes: tuple[int, ...]
    component_edge_counts: tuple[int, ...]
    isolated_count: int


def make_graph(n_left: int, n_right: int, edges: Iterable[tuple[int, int]]) -> BipartiteGraph:
    """Validate and normalize (sort, reject duplicates) an edge list."""
    if n_left < 0 or n_right < 0:
        raise ValueError("vertex counts must be non-negative")
    seen = set()
    for e in edges:
        l, r = e
        if not (0 <= l < n_left and 0 <= r < n_right):
            raise ValueError(f"edge {(l, r)} out of range for sides ({n_left}, {n_right})")
        if (l, r) in seen:
            raise ValueError(f"duplicate edge {(l, r)}")
        seen.add((l, r))
    return BipartiteGraph(n_left, n_right, tuple(sorted(seen)))


def validate(g: BipartiteGraph, d: int) -> bool:
    """True iff ``g`` is balanced and every R vertex has degree >= d."""
    if d < 0:
        raise ValueError("degree bound must be non-negative")
    if g.n_left != g.n_right:
        return False
    return all(deg >= d for deg in g.r_degrees())


# ---------------------------------------------------------------------------
# Canonical generators
# ---------------------------------------------------------------------------

def gen_matching(n: int) -> BipartiteGraph:
    """Perfect matching: n disjoint edges (i, i)."""
    if n < 1:
        raise ValueError("matching needs n >= 1")
    return BipartiteGraph(n, n, tuple((i, i) for i in range(n)))


def gen_star(k: int) -> BipartiteGraph:
    """A k-star (L vertex 0 joined to all R) plus k-1 isolated L vertices."""
    if k < 1:
        raise ValueError("star needs k >= 1")
    return BipartiteGraph(k, k, tuple((0, j) for j in range(k)))


def gen_kdd(n: int, d: int) -> BipartiteGraph:
    """n/d disjoint copies of the complete bipartite block K_{d,d}."""
    if d < 1:
        raise ValueError("block size d must be >= 1")
    if n % d != 0:
        raise ValueError(f"d={d} does not divide n={n}")
    edges = []
    for b in range(n // d):
        base = b * d
        for i in range(d):
            for j in range(d):
                edges.append((base + i, base + j))
    return BipartiteGraph(n, n, tuple(sorted(edges)))


def gen_kdn(n: int, d: int) -> BipartiteGraph:
    """d L hubs joined to every R vertex; the other n-d L vertices isolated."""
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got d={d}, n={n}")
    return BipartiteGraph(n, n, tuple((i, j) for i in range(d) for j in range(n)))


# ---------------------------------------------------------------------------
# Components
# ---------------------------------------------------------------------------

def _component_data(g: BipartiteGraph) -> tuple[list[int], dict[int, int], dict[int, int]]:
    """Union-find pass; returns (root per global vertex, sizes, edge counts)."""
    nv = g.n_vertices
    parent = list(range(nv))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    size = {v: 1 for v in range(nv)}
    ecnt = {v: 0 for v in range(nv)}
    for u, v in g.global_edges():
        ru, rv = find(u), find(v)
        if ru == rv:
            ecnt[ru] += 1
            continue
        if size[ru] < size[rv]:
            ru, rv = rv, ru
        parent[rv] = ru
        size[ru] += size.pop(rv)
        ecnt[ru] += ecnt.pop(rv) + 1
    roots = [find(v) for v in range(nv)]
    return roots, size, ecnt


def components(g: BipartiteGraph) -> ComponentStats:
    """Connected-component statistics of ``g``."""
    _, size, ecnt = _component_data(g)
    pairs = sorted(((size[r], ecnt[r]) for r in size), reverse=True)
    return ComponentStats(
        component_sizes=tuple(s for s, _ in pairs),
        component_edge_counts=tuple(e for _, e in pairs),
        isolated_count=sum(1 for s, _ in pairs if s == 1),
    )


# ---------------------------------------------------------------------------
# Isomorphism: canonical forms
# ---------------------------------------------------------------------------

def permuted(g: BipartiteGraph, l_perm: Sequence[int], r_perm: Sequence[int]) -> BipartiteGraph:
    """Relabel the two sides; ``l_perm[i]`` is the new index of L vertex i."""
    if sorted(l_perm) != list(range(g.n_left)) or sorted(r_perm) != list(range(g.n_right)):
        raise ValueError("permutations must cover each side exactly")
    return BipartiteGraph(
        g.n_left, g.n_right, tuple(sorted((l_perm[l], r_perm[r]) for l, r in g.edges))
    )


def _min_matrix(n_rows: int, n_cols: int, row_sets: list[frozenset[int]]) -> tuple[tuple[int, ...], ...]:
    """Minimum 0/1 adjacency matrix over row and column permutations.

    Rows are placed one at a time; at each depth only rows realizing the
    lexicographically smallest bit pattern are branched on (the pattern of a
    row is determined by how many 1s it puts into each block of
    currently-indistinguishable columns, with 0s packed first inside every
    block).  Choosing a row splits each column block into its 0-part and
    1-part, which encodes the remaining column freedom exactly.
    """
    best: list[tuple[int, ...]] | None = None

    def rec(blocks: list[list[int]], remaining: list[int], acc: list[tuple[int, ...]]) -> None:
        nonlocal best
        depth = len(acc)
        if not remaining:
            cand = tuple(acc)
            if best is None or cand < tuple(best):
                best = list(cand)
            return
        # Pattern each remaining row would produce against the current blocks.
        scored = []
        for row in remaining:
            ones = tuple(sum(1 for c in blk if c in row_sets[row]) for blk in blocks)
            pattern = tuple(
                bit for blk, o in zip(blocks, ones) for bit in (0,) * (len(blk) - o) + (1,) * o
            )
            scored.append((pattern, row))
        min_pattern = min(p for p, _ in scored)
        if best is not None:
            ref = best[depth]
            if min_pattern > ref:
                return
        # Tied rows with identical column sets lead to identical subtrees.
        seen_sets = set()
        for pattern, row in scored:
            if pattern != min_pattern or row_sets[row] in seen_sets:
                continue
            seen_sets.add(row_sets[row])
            new_blocks = []
            for blk in blocks:
                zeros = [c for c in blk if c not in row_sets[row]]
                ones_part = [c for c in blk if c in row_sets[row]]
                if zeros:
                    new_blocks.append(zeros)
                if ones_part:
                    new_blocks.append(ones_part)
            rest = [r for r in remaining if r != row]
            rec(new_blocks, rest, acc + [pattern])

    start_blocks = [list(range(n_cols))] if n_cols else []
    rec(start_blocks, list(range(n_rows)), [])
    assert best is not None
    return tuple(best)


def canonical_form(g: BipartiteGraph) -> BipartiteGraph:
    """The canonical representative of ``g``'s isomorphism class.

    Each connected component is reduced to its minimum adjacency matrix;
    components are then laid out largest-first by (L size, R size, edges,
    matrix).  Re-canonicalizing any relabelling of ``g`` returns the same
    graph.
    """
    roots, _, _ = _component_data(g)
    comp_members: dict[int, tuple[list[int], list[int]]] = {}
    for v, root in enumerate(roots):
        side = comp_members.setdefault(root, ([], []))
        if v < g.n_left:
            side[0].append(v)
        else:
            side[1].append(v - g.n_left)
    adj: dict[int, set[int]] = {l: set() for l in range(g.n_left)}
    for l, r in g.edges:
        adj[l].add(r)

    comps = []
    for ls, rs in comp_members.values():
        col_of = {r: i for i, r in enumerate(rs)}
        row_sets = [frozenset(col_of[r] for r in adj[l]) for l in ls]
        matrix = _min_matrix(len(ls), len(rs), row_sets)
        n_edges = sum(sum(row) for row in matrix)
        comps.append((len(ls), len(rs), n_edges, matrix))
    comps.sort(reverse=True)

    edges = []
    l_base = r_base = 0
    for nl, nr, _, matrix in comps:
        for i, row in enumerate(matrix):
            for j, bit in enumerate(row):
                if bit:
                    edges.append((l_base + i, r_base + j))
        l_base += nl
        r_base += nr
    return BipartiteGraph(g.n_left, g.n_right, tuple(sorted(edges)))


def enumerate_half_regular(n: int, d: int) -> Iterator[BipartiteGraph]:
    """All balanced bipartite graphs with every R degree exactly ``d``,
    one canonical representative per isomorphism class.

    Candidates are multisets of R-vertex neighborhoods (R vertices are
    interchangeable), prefiltered to non-increasing L degree sequences and
    deduplicated through :func:`canonical_form`.  Yields nothing when no
    such graph exists.
    """
    if n < 1 or d < 1 or d > n:
        return
    subsets = list(itertools.combinations(range(n), d))
    seen: set[BipartiteGraph] = set()
    for choice in itertools.combinations_with_replacement(subsets, n):
        degs = [0] * n
        for s in choice:
            for l in s:
                degs[l] += 1
        if any(degs[i] < degs[i + 1] for i in range(n - 1)):
            continue
        g = BipartiteGraph(
            n, n, tuple(sorted((l, r) for r, s in enumerate(choice) for l in s))
        )
        c = canonical_form(g)
        if c not in seen:
            seen.add(c)
            yield c


# ---------------------------------------------------------------------------
# Text format: line 1 "n_left n_right", then one "l r" pair per line.
# ---------------------------------------------------------------------------

def format_graph(g: BipartiteGraph) -> str:
    lines = [f"{g.n_left} {g.n_right}"]
    lines.extend(f"{l} {r}" for l, r in g.edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> BipartiteGraph:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line)
    if not rows:
        raise ValueError("empty graph file")
    head = rows[0].split()
    if len(head) != 2:
        raise ValueError(f"bad header {rows[0]!r}: expected 'n_left n_right'")
    n_left, n_right = int(head[0]), int(head[1])
    edges = []
    for line in rows[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return make_graph(n_left, n_right, edges)


def write_graph(g: BipartiteGraph, fp: TextIO) -> None:
    fp.write(format_graph(g))


def read_graph(fp: TextIO) -> BipartiteGraph:
    return parse_graph(fp.read())
