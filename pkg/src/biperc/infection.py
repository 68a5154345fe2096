"""The two-parameter infection objective and its relatives.

Model: every vertex is independently infected "by nature" with probability
mu; each newly infected vertex then gets one chance to infect each
uninfected neighbor, independently with probability p (independent
cascade).  The expected infected fraction equals

    I(G) = 1 - (1/|V|) E[ sum_v (1-mu)^{|C(v)|} ]

where |C(v)| is v's component size after keeping each edge independently
with probability p.  This module evaluates I(G) exactly through the
percolation engine, simulates the cascade directly, and provides the
closed forms for star graphs, large-size limits, and the general
threshold variant where each vertex draws the number of infected
neighbors it takes to infect it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import CapacityError
from .graphs import BipartiteGraph, gen_kdd
from .percolation import (
    EXACT_EDGE_LIMIT,
    Estimate,
    _edge_arrays,
    _estimate_from,
    _run_sampler,
    check_probability,
    escape_weight,
    exact_expectation,
)
from .rng import MASK64, Stream

PROB_SUM_TOL = 1e-12


def infected_fraction_exact(
    g: BipartiteGraph,
    mu: float,
    p: float,
    *,
    edge_limit: int = EXACT_EDGE_LIMIT,
    threads: int = 1,
) -> float:
    """Exact expected infected fraction of ``g`` under (mu, p)."""
    check_probability(mu, "mu")
    esc = exact_expectation(g, p, escape_weight(mu), edge_limit=edge_limit, threads=threads)
    return 1.0 - esc / g.n_vertices


def cascade_sample(g: BipartiteGraph, mu: float, p: float, seed: int) -> frozenset[int]:
    """One cascade outcome: the infected set, as global vertex indices.

    Nature indicators (one per vertex) and transmission indicators (one
    per edge) are pre-drawn from the substream (seed, 0); infection then
    spreads in synchronous rounds, each newly infected vertex getting its
    one chance per uninfected neighbor.  At most one direction of an edge
    is ever consulted, so a single per-edge indicator is exact — and makes
    the outcome independent of processing order within a round.
    """
    check_probability(mu, "mu")
    check_probability(p)
    stream = Stream(seed, 0)
    nv = g.n_vertices
    seeded = [stream.next_double() < mu for _ in range(nv)]
    live = [stream.next_double() < p for _ in g.edges]

    nbr: list[list[int]] = [[] for _ in range(nv)]
    for (u, v), ok in zip(g.global_edges(), live):
        if ok:
            nbr[u].append(v)
            nbr[v].append(u)
    infected = set(v for v in range(nv) if seeded[v])
    frontier = list(infected)
    while frontier:
        nxt = []
        for u in frontier:
            for w in nbr[u]:
                if w not in infected:
                    infected.add(w)
                    nxt.append(w)
        frontier = nxt
    return frozenset(infected)


def infected_fraction_mc(
    g: BipartiteGraph,
    mu: float,
    p: float,
    samples: int,
    seed: int,
    *,
    threads: int = 1,
) -> Estimate:
    """Monte Carlo infected fraction over independent cascade draws."""
    check_probability(mu, "mu")
    check_probability(p)
    if samples < 2:
        raise ValueError("need samples >= 2")
    us, vs = _edge_arrays(g)
    counts = np.empty(samples, dtype=np.int32)
    _run_sampler(
        lambda lo, hi: backend.kernels.cascade_counts(
            us, vs, g.n_vertices, mu, p, seed & MASK64, lo, hi - lo, counts[lo:hi]
        ),
        samples,
        threads,
    )
    return _estimate_from(counts.astype(np.float64) / g.n_vertices)


# ---------------------------------------------------------------------------
# Closed forms for stars (one L center of degree j, plus isolated L fill)
# ---------------------------------------------------------------------------

def l_prob(j: int, mu: float, p: float) -> float:
    """Infection probability of an L vertex of degree j: 1-(1-mu)(1-mu p)^j."""
    if j < 0:
        raise ValueError("degree must be non-negative")
    check_probability(mu, "mu")
    check_probability(p)
    return 1.0 - (1.0 - mu) * (1.0 - mu * p) ** j


def r_prob(j: int, mu: float, p: float) -> float:
    """Infection probability of an R leaf whose center has degree j.

    mu + p - mu p - (1-mu)^2 p (1-mu p)^(j-1); j = 0 is contradictory (a
    leaf presumes its center has at least that one edge).
    """
    if j < 1:
        raise ValueError("a leaf's center has degree >= 1")
    check_probability(mu, "mu")
    check_probability(p)
    return mu + p - mu * p - (1.0 - mu) ** 2 * p * (1.0 - mu * p) ** (j - 1)


def star_expected_fraction(k: int, mu: float, p: float) -> float:
    """Expected infected fraction of a k-star with k-1 isolated L vertices:
    (L_k + (k-1) L_0 + k R_k) / (2k)."""
    if k < 1:
        raise ValueError("star size must be >= 1")
    return (l_prob(k, mu, p) + (k - 1) * l_prob(0, mu, p) + k * r_prob(k, mu, p)) / (2 * k)


def star_limit(mu: float, p: float) -> float:
    """Limit of the star fraction as the star grows: (mu + mu + p - mu p)/2.

    At mu = 0 the finite-star value is identically 0, so the limit is
    pinned to 0 by continuity (the formula's (1-mu p)^k term no longer
    vanishes there).
    """
    check_probability(mu, "mu")
    check_probability(p)
    if mu == 0.0:
        return 0.0
    return (mu + (mu + p - mu * p)) / 2.0


def delta_diagnostics(k: int, mu: float, p: float) -> tuple[float, float, float]:
    """The monotonicity diagnostics (D, Delta1, Delta2) for star size k.

    With y = 1 - mu p:
      D      = (E[I_k] - E[I_1]) / (1 - mu)
      Delta1 = (2/(1-mu)) (E[I_{k-1}] - E[I_k])
      Delta2 = (2/(1-mu)) (E[I_k] - E[I_{k+1}])
    evaluated through their closed forms.  Requires k >= 2 and mu < 1.
    """
    if k < 2:
        raise ValueError("diagnostics need k >= 2")
    check_probability(mu, "mu")
    check_probability(p)
    if mu == 1.0:
        raise ValueError("diagnostics are undefined at mu = 1")
    y = 1.0 - mu * p
    d_val = (1.0 - y**k) / (2 * k) + p / 2.0 - (1.0 - mu) * p * y ** (k - 1) / 2.0 - mu * p
    delta1 = (
        1.0 / (k - 1) - 1.0 / k + y**k / k - y ** (k - 1) / (k - 1)
        + (1.0 - mu) * p * y ** (k - 2) * (y - 1.0)
    )
    delta2 = (
        1.0 / k - 1.0 / (k + 1) + y ** (k + 1) / (k + 1) - y**k / k
        + (1.0 - mu) * p * y ** (k - 1) * (y - 1.0)
    )
    return d_val, delta1, delta2


def kdd_exact(
    d: int, mu: float, p: float, *, edge_limit: int = EXACT_EDGE_LIMIT, threads: int = 1
) -> float:
    """Infected fraction of a K_{d,d} block (hence of any disjoint union
    of such blocks, which behave independently)."""
    if d < 1:
        raise ValueError("block size d must be >= 1")
    return infected_fraction_exact(gen_kdd(d, d), mu, p, edge_limit=edge_limit, threads=threads)


def kdn_limit(d: int, mu: float, p: float) -> float:
    """Large-n infected fraction of d hubs joined to all n R vertices with
    n-d isolated L vertices: mu/2 + (1 - (1-mu)(1-p)^d)/2, and 0 at mu=0."""
    if d < 1:
        raise ValueError("need d >= 1")
    check_probability(mu, "mu")
    check_probability(p)
    if mu == 0.0:
        return 0.0
    return mu / 2.0 + (1.0 - (1.0 - mu) * (1.0 - p) ** d) / 2.0


# ---------------------------------------------------------------------------
# General threshold model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ThresholdDistribution:
    """Distribution of per-vertex integer thresholds.

    ``probs[i]`` is the probability of threshold i (0 = infected by
    nature); ``residual`` is the mass at infinity (never infectable by
    neighbors).  Probabilities must sum to 1.
    """

    probs: tuple[float, ...]
    residual: float = 0.0

    def __post_init__(self):
        if any(q < 0.0 for q in self.probs) or self.residual < 0.0:
            raise ValueError("threshold probabilities must be non-negative")
        total = math.fsum(self.probs) + self.residual
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ValueError(f"threshold probabilities sum to {total}, not 1")

    def cumulative(self) -> list[float]:
        out = []
        acc = 0.0
        for q in self.probs:
            acc += q
            out.append(acc)
        return out


def point_mass(threshold: int | None) -> ThresholdDistribution:
    """All vertices share one threshold; None means never-infectable."""
    if threshold is None:
        return ThresholdDistribution(probs=(), residual=1.0)
    probs = [0.0] * (threshold + 1)
    probs[threshold] = 1.0
    return ThresholdDistribution(probs=tuple(probs))


def cascade_as_threshold(mu: float, p: float, cutoff: int) -> ThresholdDistribution:
    """The threshold distribution equivalent to the (mu, p) cascade,
    truncated at ``cutoff``: mu_0 = mu, mu_i = (1-mu) p (1-p)^(i-1), with
    the tail mass beyond the cutoff moved to the residual."""
    check_probability(mu, "mu")
    check_probability(p)
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    probs = [mu]
    probs.extend((1.0 - mu) * p * (1.0 - p) ** (i - 1) for i in range(1, cutoff + 1))
    residual = (1.0 - mu) * (1.0 - p) ** cutoff
    return ThresholdDistribution(probs=tuple(probs), residual=residual)


def threshold_cascade_sample(
    g: BipartiteGraph, dist: ThresholdDistribution, seed: int
) -> frozenset[int]:
    """One threshold-dynamics outcome: the infected set (global indices).

    Thresholds are drawn per vertex from the substream (seed, 0);
    synchronous rounds then infect every vertex whose infected-neighbor
    count has reached its threshold, until a fixed point.
    """
    stream = Stream(seed, 0)
    nv = g.n_vertices
    cum = dist.cumulative()
    thresholds = []
    for _ in range(nv):
        u = stream.next_double()
        t = 0
        while t < len(cum) and not u < cum[t]:
            t += 1
        thresholds.append(t if t < len(cum) else None)

    nbr: list[list[int]] = [[] for _ in range(nv)]
    for u, v in g.global_edges():
        nbr[u].append(v)
        nbr[v].append(u)
    infected = [thresholds[v] == 0 for v in range(nv)]
    seen = [0] * nv
    frontier = [v for v in range(nv) if infected[v]]
    while frontier:
        for v in frontier:
            for w in nbr[v]:
                seen[w] += 1
        frontier = [
            w
            for w in range(nv)
            if not infected[w] and thresholds[w] is not None and seen[w] >= thresholds[w]
        ]
        for w in frontier:
            infected[w] = True
    return frozenset(v for v in range(nv) if infected[v])


def threshold_fraction_mc(
    g: BipartiteGraph,
    dist: ThresholdDistribution,
    samples: int,
    seed: int,
    *,
    threads: int = 1,
) -> Estimate:
    """Monte Carlo infected fraction under the threshold dynamics."""
    if samples < 2:
        raise ValueError("need samples >= 2")
    us, vs = _edge_arrays(g)
    cum = np.array(dist.cumulative(), dtype=np.float64)
    counts = np.empty(samples, dtype=np.int32)
    _run_sampler(
        lambda lo, hi: backend.kernels.threshold_counts(
            us, vs, g.n_vertices, cum, seed & MASK64, lo, hi - lo, counts[lo:hi]
        ),
        samples,
        threads,
    )
    return _estimate_from(counts.astype(np.float64) / g.n_vertices)


def star_threshold_exact(j: int, dist: ThresholdDistribution) -> float:
    """Exact expected infected fraction of a j-star with j-1 isolated L
    vertices under threshold dynamics.

    Conditioning on the number b of nature-infected leaves (binomial in
    j draws of probability mu_0): the center fires iff its threshold is
    at most b; a non-nature leaf fires iff it drew threshold 1 and the
    center fired; isolated vertices fire on threshold 0 only.
    """
    if j < 1:
        raise ValueError("star size must be >= 1")
    probs = dist.probs
    mu0 = probs[0] if probs else 0.0
    mu1 = probs[1] if len(probs) > 1 else 0.0
    cum = dist.cumulative()

    def center_fires(b: int) -> float:
        if not cum:
            return 0.0
        return cum[min(b, len(cum) - 1)]

    leaf_given_not_nature = mu1 / (1.0 - mu0) if mu0 < 1.0 else 0.0
    expected = 0.0
    for b in range(j + 1):
        w = math.comb(j, b) * mu0**b * (1.0 - mu0) ** (j - b)
        q = center_fires(b)
        leaves = b + q * (j - b) * leaf_given_not_nature
        expected += w * (q + leaves)
    expected += (j - 1) * mu0
    return expected / (2 * j)
