"""Independent p-edge percolation: exact expectations of component
functionals by weighted subset enumeration, and Monte Carlo estimation.

The exact engine sums ``p^|S| (1-p)^(E-|S|) * f(G[S])`` over all edge
subsets S, walking the subsets in Gray-code order with an incrementally
maintained union-find (rebuilt on edge-removal steps) and a compensated
accumulator.  Its cost is 2^E, so it is gated by an edge limit
(default 24).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import CapacityError
from .graphs import BipartiteGraph
from .rng import MASK64, Stream

EXACT_EDGE_LIMIT = 24

_KINDS = ("escape_weight", "isolated_count", "susceptibility", "sum_sq_sizes", "sum_sq_edges")


@dataclass(frozen=True)
class Functional:
    """A component functional of a (percolated) graph.

    kind:
      escape_weight   sum over vertices v of (1-mu)^|C(v)|
      isolated_count  number of size-1 components
      susceptibility  (1/|V|) sum over v of |C(v)|
      sum_sq_sizes    sum over components of |C|^2
      sum_sq_edges    sum over components of |E(C)|^2
    """

    kind: str
    mu: float | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown functional kind {self.kind!r}")
        if self.kind == "escape_weight":
            if self.mu is None or not 0.0 <= self.mu <= 1.0:
                raise ValueError("escape_weight needs mu in [0, 1]")
        elif self.mu is not None:
            raise ValueError(f"{self.kind} takes no mu parameter")


def escape_weight(mu: float) -> Functional:
    return Functional("escape_weight", mu)


ISOLATED_COUNT = Functional("isolated_count")
SUSCEPTIBILITY = Functional("susceptibility")
SUM_SQ_SIZES = Functional("sum_sq_sizes")
SUM_SQ_EDGES = Functional("sum_sq_edges")


@dataclass(frozen=True)
class Estimate:
    """A Monte Carlo estimate, or an exact value flagged as such."""

    mean: float
    std_error: float
    samples: int
    exact: bool = False

    def __post_init__(self):
        if self.std_error < 0.0:
            raise ValueError("std_error must be non-negative")
        if self.exact and self.std_error != 0.0:
            raise ValueError("exact estimates carry no standard error")

    @classmethod
    def exact_value(cls, value: float) -> "Estimate":
        return cls(mean=value, std_error=0.0, samples=0, exact=True)


def check_probability(p: float, name: str = "p") -> float:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name}={p} outside [0, 1]")
    return float(p)


# ---------------------------------------------------------------------------
# Kernel plumbing
# ---------------------------------------------------------------------------

def _edge_arrays(g: BipartiteGraph) -> tuple[np.ndarray, np.ndarray]:
    ge = g.global_edges()
    us = np.array([u for u, _ in ge], dtype=np.int32)
    vs = np.array([v for _, v in ge], dtype=np.int32)
    return us, vs


def _tables(g: BipartiteGraph, f: Functional) -> tuple[int, np.ndarray]:
    """(mode, lookup table) realizing ``f`` as a per-component sum."""
    nv = g.n_vertices
    if f.kind == "sum_sq_edges":
        table = np.array([float(m * m) for m in range(g.n_edges + 1)])
        return backend.kernels.EDGE_MODE, table
    if f.kind == "escape_weight":
        q = 1.0 - f.mu
        table = np.array([s * q**s for s in range(nv + 1)])
    elif f.kind == "isolated_count":
        table = np.zeros(nv + 1)
        if nv >= 1:
            table[1] = 1.0
    elif f.kind == "susceptibility":
        table = np.array([float(s * s) / nv for s in range(nv + 1)])
    else:  # sum_sq_sizes
        table = np.array([float(s * s) for s in range(nv + 1)])
    return backend.kernels.SIZE_MODE, table


def _split_ranges(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    ranges = []
    lo = 0
    for i in range(parts):
        hi = lo + step + (1 if i < extra else 0)
        ranges.append((lo, hi))
        lo = hi
    return ranges


def _gray_inverse(mask: int) -> int:
    index = 0
    while mask:
        index ^= mask
        mask >>= 1
    return index


def eval_functional(g: BipartiteGraph, f: Functional) -> float:
    """``f`` applied to the actual components of ``g`` (no randomness)."""
    us, vs = _edge_arrays(g)
    mode, table = _tables(g, f)
    weights = np.zeros(g.n_edges + 1)
    weights[g.n_edges] = 1.0
    # One-subset scan positioned at the full edge set.
    start = _gray_inverse((1 << g.n_edges) - 1)
    return backend.kernels.exact_scan(us, vs, g.n_vertices, weights, mode, table, start, 1)


def exact_expectation(
    g: BipartiteGraph,
    p: float,
    f: Functional,
    *,
    edge_limit: int = EXACT_EDGE_LIMIT,
    threads: int = 1,
) -> float:
    """Expectation of ``f`` under independent p-edge percolation, exactly.

    Sums over all 2^E edge subsets; E above ``edge_limit`` raises
    CapacityError.  ``threads`` partitions the subset space into contiguous
    Gray-index ranges whose partial sums are combined in order, so the
    result is independent of scheduling.
    """
    check_probability(p)
    n_edges = g.n_edges
    if n_edges > edge_limit:
        raise CapacityError(
            f"exact expectation over {n_edges} edges exceeds the limit of {edge_limit}"
        )
    if p == 0.0:
        return eval_functional(BipartiteGraph(g.n_left, g.n_right, ()), f)
    if p == 1.0:
        return eval_functional(g, f)
    us, vs = _edge_arrays(g)
    mode, table = _tables(g, f)
    weights = np.array([p**k * (1.0 - p) ** (n_edges - k) for k in range(n_edges + 1)])
    total = 1 << n_edges
    ranges = _split_ranges(total, threads)
    if len(ranges) == 1:
        return backend.kernels.exact_scan(us, vs, g.n_vertices, weights, mode, table, 0, total)
    with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
        futs = [
            pool.submit(
                backend.kernels.exact_scan,
                us, vs, g.n_vertices, weights, mode, table, lo, hi - lo,
            )
            for lo, hi in ranges
        ]
        return math.fsum(fut.result() for fut in futs)


def mc_expectation(
    g: BipartiteGraph,
    p: float,
    f: Functional,
    samples: int,
    seed: int,
    *,
    threads: int = 1,
) -> Estimate:
    """Monte Carlo estimate of the percolation expectation of ``f``.

    Sample i draws from the substream keyed by (seed, i), so the estimate
    is reproducible and independent of how samples are partitioned.
    """
    check_probability(p)
    if samples < 2:
        raise ValueError("need samples >= 2")
    us, vs = _edge_arrays(g)
    mode, table = _tables(g, f)
    out = np.empty(samples, dtype=np.float64)
    _run_sampler(
        lambda lo, hi: backend.kernels.perc_values(
            us, vs, g.n_vertices, p, mode, table, seed & MASK64, lo, hi - lo, out[lo:hi]
        ),
        samples,
        threads,
    )
    return _estimate_from(out)


def _run_sampler(run_range, samples: int, threads: int) -> None:
    ranges = _split_ranges(samples, threads)
    if len(ranges) == 1:
        run_range(0, samples)
        return
    with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
        for fut in [pool.submit(run_range, lo, hi) for lo, hi in ranges]:
            fut.result()


def _estimate_from(values: np.ndarray) -> Estimate:
    n = len(values)
    mean = float(np.mean(values))
    std_error = float(np.std(values, ddof=1) / math.sqrt(n))
    return Estimate(mean=mean, std_error=std_error, samples=n)


def percolate_sample(g: BipartiteGraph, p: float, seed: int) -> BipartiteGraph:
    """One percolated subgraph: each edge kept independently w.p. ``p``.

    Consumes the substream (seed, 0) in sorted-edge order, matching sample
    0 of :func:`mc_expectation` under the same seed.
    """
    check_probability(p)
    stream = Stream(seed, 0)
    kept = tuple(e for e in g.edges if stream.next_double() < p)
    return BipartiteGraph(g.n_left, g.n_right, kept)
