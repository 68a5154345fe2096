"""Extremal questions: which graphs minimize the infection objective.

Covers exhaustive search over half-regular isomorphism classes, the
phase diagram comparing disjoint K_{d,d} blocks against the hub graph
limit, the optimal-subnetwork problem (choose an edge subset keeping
every R degree >= d that minimizes the infected fraction) with exact and
local-search solvers, and the constructions that translate exact set
cover and clique decomposition into subnetwork instances.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import backend
from .errors import CapacityError, InfeasibleError
from .graphs import BipartiteGraph, canonical_form, enumerate_half_regular, gen_kdd, gen_kdn
from .infection import infected_fraction_exact, infected_fraction_mc, kdd_exact, kdn_limit
from .percolation import EXACT_EDGE_LIMIT, _edge_arrays, check_probability
from .rng import Stream, mix64

TIE_TOL = 1e-12
PHASE_TIE_TOL = 1e-9
SUBNET_EDGE_LIMIT = 20
DECOMP_VERTEX_LIMIT = 24
MAX_TIES = 4096

KDD = "KDD"
KDN = "KDN"
TIE = "TIE"


@dataclass(frozen=True)
class SearchResult:
    """Minimizers of a search (all within tie tolerance of ``value``)."""

    minimizers: tuple[BipartiteGraph, ...]
    value: float
    evaluated_count: int


@dataclass(frozen=True)
class PhaseDiagram:
    """Per-cell winner between the K_{d,d} blocks and the hub-graph limit.

    ``cells[i][j]`` classifies (mu_grid[i], p_grid[j]); ``deltas`` holds
    the signed differences kdd - kdn.
    """

    d: int
    mu_grid: tuple[float, ...]
    p_grid: tuple[float, ...]
    cells: tuple[tuple[str, ...], ...]
    deltas: tuple[tuple[float, ...], ...]


@dataclass(frozen=True)
class SubnetworkInstance:
    """A host graph plus the R-side degree requirement.

    ``certificate`` (when set by a reduction) is the isolated-vertex count
    the optimal subnetwork attains exactly when the source instance is a
    yes-instance.  Feasibility is checked by the solvers, not here, so
    that reductions may emit infeasible hosts.
    """

    graph: BipartiteGraph
    d: int
    certificate: float | None = None

    @property
    def feasible(self) -> bool:
        return all(deg >= self.d for deg in self.graph.r_degrees())


# ---------------------------------------------------------------------------
# Exhaustive half-regular search
# ---------------------------------------------------------------------------

def best_half_regular(
    n: int,
    d: int,
    mu: float,
    p: float,
    *,
    edge_limit: int = EXACT_EDGE_LIMIT,
    threads: int = 1,
) -> SearchResult:
    """Exhaustive minimum of the infected fraction over all half-d-regular
    isomorphism classes on 2n vertices (exact R degree d; adding edges
    never helps, so minimizers of the at-least-d model live here)."""
    if n * d > edge_limit:
        raise CapacityError(
            f"half-{d}-regular graphs on 2*{n} vertices have {n * d} edges, "
            f"over the exact limit of {edge_limit}"
        )
    evaluated = []
    for g in enumerate_half_regular(n, d):
        evaluated.append(
            (infected_fraction_exact(g, mu, p, edge_limit=edge_limit, threads=threads), g)
        )
    if not evaluated:
        raise ValueError(f"no half-{d}-regular graphs on 2*{n} vertices")
    best = min(v for v, _ in evaluated)
    minimizers = tuple(g for v, g in evaluated if v <= best + TIE_TOL)
    return SearchResult(minimizers=minimizers, value=best, evaluated_count=len(evaluated))


# ---------------------------------------------------------------------------
# Phase diagram
# ---------------------------------------------------------------------------

def phase_region(
    d: int,
    mu_grid: Sequence[float],
    p_grid: Sequence[float],
    tie_tol: float = PHASE_TIE_TOL,
    *,
    edge_limit: int = EXACT_EDGE_LIMIT,
) -> PhaseDiagram:
    """Classify each (mu, p) cell by comparing the exact K_{d,d} value
    against the large-n hub-graph limit."""
    if d * d > edge_limit:
        raise CapacityError(f"K_{{{d},{d}}} has {d * d} edges, over the limit of {edge_limit}")
    cells = []
    deltas = []
    for mu in mu_grid:
        row = []
        drow = []
        for p in p_grid:
            delta = kdd_exact(d, mu, p, edge_limit=edge_limit) - kdn_limit(d, mu, p)
            drow.append(delta)
            if abs(delta) <= tie_tol:
                row.append(TIE)
            elif delta < 0:
                row.append(KDD)
            else:
                row.append(KDN)
        cells.append(tuple(row))
        deltas.append(tuple(drow))
    return PhaseDiagram(
        d=d,
        mu_grid=tuple(float(m) for m in mu_grid),
        p_grid=tuple(float(p) for p in p_grid),
        cells=tuple(cells),
        deltas=tuple(deltas),
    )


def phase_boundary_mu(
    d: int,
    p: float,
    *,
    tol: float = 1e-12,
    edge_limit: int = EXACT_EDGE_LIMIT,
) -> float:
    """The mu where the K_{d,d} blocks stop beating the hub-graph limit,
    located by bisection (the difference is negative left of the boundary
    and positive right of it for every p > 0 at the d's of interest)."""
    check_probability(p)
    if p == 0.0:
        raise ValueError("no boundary at p = 0: the two values tie everywhere")

    def f(mu: float) -> float:
        return kdd_exact(d, mu, p, edge_limit=edge_limit) - kdn_limit(d, mu, p)

    lo, hi = 1e-9, 1.0 - 1e-7
    flo, fhi = f(lo), f(hi)
    if not (flo < 0.0 < fhi):
        raise ValueError(f"no sign change on [{lo}, {hi}] for d={d}, p={p}")
    while hi - lo > tol:
        mid = (lo + hi) / 2.0
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def phase_to_csv(diagram: PhaseDiagram) -> str:
    lines = ["mu,p,winner,delta"]
    for i, mu in enumerate(diagram.mu_grid):
        for j, p in enumerate(diagram.p_grid):
            lines.append(
                f"{mu:.12g},{p:.12g},{diagram.cells[i][j]},{diagram.deltas[i][j]:.12g}"
            )
    return "\n".join(lines) + "\n"


def parse_phase_csv(text: str) -> PhaseDiagram:
    rows = [line for line in text.splitlines() if line.strip()]
    if not rows or rows[0] != "mu,p,winner,delta":
        raise ValueError("not a phase-diagram CSV")
    entries = {}
    mus, ps = [], []
    for line in rows[1:]:
        mu_s, p_s, winner, delta_s = line.split(",")
        mu, p = float(mu_s), float(p_s)
        if mu not in mus:
            mus.append(mu)
        if p not in ps:
            ps.append(p)
        entries[(mu, p)] = (winner, float(delta_s))
    cells = tuple(tuple(entries[(mu, p)][0] for p in ps) for mu in mus)
    deltas = tuple(tuple(entries[(mu, p)][1] for p in ps) for mu in mus)
    return PhaseDiagram(d=0, mu_grid=tuple(mus), p_grid=tuple(ps), cells=cells, deltas=deltas)


# ---------------------------------------------------------------------------
# Optimal subnetwork
# ---------------------------------------------------------------------------

def _subnet_arrays(g: BipartiteGraph):
    us, vs = _edge_arrays(g)
    r_masks = np.zeros(g.n_right, dtype=np.int64)
    for bit, (_, r) in enumerate(g.edges):
        r_masks[r] |= 1 << bit
    return us, vs, r_masks


def _mask_graph(g: BipartiteGraph, mask: int) -> BipartiteGraph:
    edges = tuple(e for bit, e in enumerate(g.edges) if (mask >> bit) & 1)
    return BipartiteGraph(g.n_left, g.n_right, edges)


def _minimal_masks(masks: list[int]) -> list[int]:
    """Drop masks that strictly contain another kept mask."""
    kept: list[int] = []
    for m in sorted(masks, key=lambda x: (bin(x).count("1"), x)):
        if not any(k & m == k for k in kept):
            kept.append(m)
    return sorted(kept)


def best_subnetwork_exact(
    inst: SubnetworkInstance,
    mu: float,
    p: float,
    *,
    edge_limit: int = SUBNET_EDGE_LIMIT,
    exact_limit: int = EXACT_EDGE_LIMIT,
    max_ties: int = MAX_TIES,
) -> SearchResult:
    """Exhaustive minimum of the infected fraction over all edge subsets
    keeping every R degree >= d.

    Among tied subsets only the inclusion-minimal ones are reported (a
    tied superset carries redundant edges).  The p = 1 and p = 0 endpoints
    are evaluated by a compiled structural scan; for 0 < p < 1 every
    feasible subset is evaluated by the exact percolation engine, which is
    only practical for small edge counts.
    """
    check_probability(mu, "mu")
    check_probability(p)
    g = inst.graph
    if not inst.feasible:
        raise InfeasibleError(
            f"instance has an R vertex of degree below d={inst.d}"
        )
    if g.n_edges > edge_limit:
        raise CapacityError(
            f"subnetwork scan over {g.n_edges} edges exceeds the limit of {edge_limit}"
        )
    us, vs, r_masks = _subnet_arrays(g)
    nv = g.n_vertices

    if p in (0.0, 1.0):
        if p == 0.0:
            # Every feasible subnetwork has value mu; scan a zero table so
            # all feasible subsets tie and the minimal ones survive.
            table = np.zeros(nv + 1)
        else:
            q = 1.0 - mu
            table = np.array([-(s * q**s) for s in range(nv + 1)])
        best_raw, feasible = backend.kernels.subnet_best(us, vs, nv, r_masks, inst.d, table)
        masks = backend.kernels.subnet_collect(
            us, vs, nv, r_masks, inst.d, table, best_raw + TIE_TOL * nv, max_ties
        )
        if masks is None:
            raise CapacityError(f"more than {max_ties} tied minimizers")
        value = mu if p == 0.0 else 1.0 + best_raw / nv
        minimal = _minimal_masks([int(m) for m in masks])
        minimizers = tuple(_mask_graph(g, m) for m in minimal)
        return SearchResult(minimizers=minimizers, value=value, evaluated_count=int(feasible))

    rm = [int(m) for m in r_masks]
    best = math.inf
    ties: list[tuple[float, int]] = []
    feasible = 0
    for mask in range(1 << g.n_edges):
        if any((mask & m).bit_count() < inst.d for m in rm):
            continue
        feasible += 1
        val = infected_fraction_exact(_mask_graph(g, mask), mu, p, edge_limit=exact_limit)
        if val < best:
            best = val
            ties = [(v, m) for v, m in ties if v <= best + TIE_TOL]
        if val <= best + TIE_TOL:
            ties.append((val, mask))
            if len(ties) > max_ties:
                raise CapacityError(f"more than {max_ties} tied minimizers")
    minimal = _minimal_masks([m for _, m in ties])
    minimizers = tuple(_mask_graph(g, m) for m in minimal)
    return SearchResult(minimizers=minimizers, value=best, evaluated_count=feasible)


def best_subnetwork_local(
    inst: SubnetworkInstance,
    mu: float,
    p: float,
    iterations: int,
    seed: int,
    *,
    exact_limit: int = EXACT_EDGE_LIMIT,
    mc_samples: int = 2000,
) -> SearchResult:
    """Randomized local search over feasible edge subsets.

    Starts from a greedy truncation (each R vertex keeps its d edges to
    the L partners of lowest full-graph degree) and moves by dropping a
    removable edge or swapping one R vertex's edge for another edge of the
    host graph; lateral moves are accepted to walk plateaus.  Candidate
    values come from the exact engine when within capacity, otherwise from
    a fixed-seed Monte Carlo estimate.  Deterministic for a fixed seed.
    """
    check_probability(mu, "mu")
    check_probability(p)
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    g = inst.graph
    if not inst.feasible:
        raise InfeasibleError(f"instance has an R vertex of degree below d={inst.d}")

    l_deg = g.l_degrees()
    _, rn = g.neighbors()
    current = set()
    for r in range(g.n_right):
        partners = sorted(rn[r], key=lambda l: (l_deg[l], l))
        for l in partners[: inst.d]:
            current.add((l, r))

    eval_seed = mix64(seed ^ 0xB1E55ED)

    def evaluate(edge_set: set[tuple[int, int]]) -> float:
        sub = BipartiteGraph(g.n_left, g.n_right, tuple(sorted(edge_set)))
        if sub.n_edges <= exact_limit:
            return infected_fraction_exact(sub, mu, p, edge_limit=exact_limit)
        return infected_fraction_mc(sub, mu, p, mc_samples, eval_seed).mean

    cur_val = evaluate(current)
    best_edges, best_val = frozenset(current), cur_val
    rng = Stream(seed, 1)
    evaluated = 1
    for _ in range(iterations):
        r_deg = [0] * g.n_right
        for _, r in current:
            r_deg[r] += 1
        moves: list[tuple[str, tuple[int, int], tuple[int, int] | None]] = []
        for l, r in sorted(current):
            if r_deg[r] > inst.d:
                moves.append(("drop", (l, r), None))
            for l2 in rn[r]:
                if (l2, r) not in current:
                    moves.append(("swap", (l, r), (l2, r)))
        if not moves:
            break
        kind, old, new = moves[rng.randrange(len(moves))]
        candidate = set(current)
        candidate.discard(old)
        if kind == "swap":
            candidate.add(new)
        val = evaluate(candidate)
        evaluated += 1
        if val <= cur_val:
            current = candidate
            cur_val = val
            if val < best_val:
                best_edges, best_val = frozenset(candidate), val
    best_graph = BipartiteGraph(g.n_left, g.n_right, tuple(sorted(best_edges)))
    return SearchResult(minimizers=(best_graph,), value=best_val, evaluated_count=evaluated)


# ---------------------------------------------------------------------------
# Hardness-style constructions
# ---------------------------------------------------------------------------

def reduce_exact_cover(
    universe_size: int, sets: Sequence[Iterable[int]], k: int
) -> SubnetworkInstance:
    """Encode an exact-cover instance as a degree-1 subnetwork instance.

    L vertices are the sets, R vertices the universe elements; sets
    smaller than k are padded with fresh elements (growing the universe),
    so every L vertex has degree exactly k.  An optimal subnetwork
    isolates ``|sets| - universe/k`` L vertices exactly when the padded
    instance has an exact cover; that target is stored as the certificate.
    Elements contained in no set leave the instance infeasible.
    """
    if universe_size < 0 or k < 1:
        raise ValueError("need universe_size >= 0 and k >= 1")
    padded = []
    fresh = universe_size
    for i, s in enumerate(sets):
        members = sorted(set(s))
        if any(not 0 <= e < universe_size for e in members):
            raise ValueError(f"set {i} has elements outside the universe")
        if len(members) > k:
            raise ValueError(f"set {i} has {len(members)} elements, more than k={k}")
        while len(members) < k:
            members.append(fresh)
            fresh += 1
        padded.append(tuple(members))
    edges = tuple(sorted((i, e) for i, members in enumerate(padded) for e in members))
    graph = BipartiteGraph(len(padded), fresh, edges)
    certificate = len(padded) - fresh / k
    return SubnetworkInstance(graph=graph, d=1, certificate=certificate)


def padded_cover_sets(inst: SubnetworkInstance) -> list[tuple[int, ...]]:
    """Recover the padded set family from a cover-reduction instance."""
    ln, _ = inst.graph.neighbors()
    return [tuple(sorted(nbrs)) for nbrs in ln]


def reduce_clique_decomposition(
    adjacency: Iterable[tuple[int, int]], n_vertices: int, d: int
) -> SubnetworkInstance:
    """Encode a d-clique-decomposition question as a subnetwork instance.

    Builds the bipartite double cover with loops: both sides are copies of
    the source vertex set and (l_i, r_j) is an edge iff i = j or the
    source graph joins v_i and v_j.  A vertex-disjoint clique partition of
    the source lifts to a K_{d,d} block partition of this graph.
    """
    if d < 2:
        raise ValueError("clique decomposition needs d >= 2")
    if n_vertices < 0:
        raise ValueError("n_vertices must be >= 0")
    pairs = set()
    for i, j in adjacency:
        if i == j or not (0 <= i < n_vertices and 0 <= j < n_vertices):
            raise ValueError(f"bad adjacency pair ({i}, {j})")
        pairs.add((min(i, j), max(i, j)))
    edges = {(i, i) for i in range(n_vertices)}
    for i, j in pairs:
        edges.add((i, j))
        edges.add((j, i))
    graph = BipartiteGraph(n_vertices, n_vertices, tuple(sorted(edges)))
    return SubnetworkInstance(graph=graph, d=d, certificate=None)


def kdd_decomposition_exists(
    g: BipartiteGraph, d: int
) -> tuple[bool, tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] | None]:
    """Whether the vertex set partitions into complete K_{d,d} blocks.

    Returns (True, witness blocks) or (False, None); the witness pairs an
    L block with its R block.  Backtracking on the lowest uncovered L
    vertex; capped at DECOMP_VERTEX_LIMIT vertices.
    """
    if d < 1:
        raise ValueError("need d >= 1")
    if g.n_vertices > DECOMP_VERTEX_LIMIT:
        raise CapacityError(
            f"{g.n_vertices} vertices exceed the decomposition limit of {DECOMP_VERTEX_LIMIT}"
        )
    n = g.n_left
    if g.n_right != n or n % d != 0:
        return False, None
    ln, rn = g.neighbors()
    if any(len(nb) < d for nb in ln) or any(len(nb) < d for nb in rn):
        return False, None
    adj = [frozenset(nb) for nb in ln]

    blocks: list[tuple[tuple[int, ...], tuple[int, ...]]] = []

    def rec(uncov_l: set[int], uncov_r: set[int]) -> bool:
        if not uncov_l:
            return True
        l0 = min(uncov_l)
        for r_block in itertools.combinations(sorted(adj[l0] & uncov_r), d):
            rset = set(r_block)
            partners = [l for l in sorted(uncov_l) if l != l0 and rset <= adj[l]]
            for l_rest in itertools.combinations(partners, d - 1):
                l_block = (l0, *l_rest)
                blocks.append((l_block, r_block))
                if rec(uncov_l - set(l_block), uncov_r - rset):
                    return True
                blocks.pop()
        return False

    if rec(set(range(n)), set(range(n))):
        return True, tuple(blocks)
    return False, None


# ---------------------------------------------------------------------------
# Conjecture probing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConjectureReport:
    """Exhaustive check of the two conjectured optimal shapes at one (mu, p).

    The hub-graph candidate is probed under both readings of its isolated
    count: n-d isolated vertices (d hubs) and n-2 isolated vertices (two
    hubs, only a half-d-regular graph when d = 2).  A None entry means the
    candidate is not a feasible half-d-regular graph at this (n, d).
    """

    n: int
    d: int
    mu: float
    p: float
    value: float
    kdd_optimal: bool | None
    kdn_n_minus_d_optimal: bool
    kdn_n_minus_2_optimal: bool | None
    other_optimal: bool
    evaluated_count: int


def conjecture_check(
    n: int,
    d: int,
    mu: float,
    p: float,
    *,
    edge_limit: int = EXACT_EDGE_LIMIT,
    threads: int = 1,
) -> ConjectureReport:
    result = best_half_regular(n, d, mu, p, edge_limit=edge_limit, threads=threads)
    winners = {canonical_form(g) for g in result.minimizers}
    kdd_c = canonical_form(gen_kdd(n, d)) if n % d == 0 else None
    kdn_nd = canonical_form(gen_kdn(n, d))
    kdn_n2 = canonical_form(gen_kdn(n, 2)) if d == 2 else None
    named = {c for c in (kdd_c, kdn_nd, kdn_n2) if c is not None}
    return ConjectureReport(
        n=n,
        d=d,
        mu=mu,
        p=p,
        value=result.value,
        kdd_optimal=(kdd_c in winners) if kdd_c is not None else None,
        kdn_n_minus_d_optimal=kdn_nd in winners,
        kdn_n_minus_2_optimal=(kdn_n2 in winners) if kdn_n2 is not None else None,
        other_optimal=bool(winners - named),
        evaluated_count=result.evaluated_count,
    )
