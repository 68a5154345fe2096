import math

import numpy as np
import pytest

import naive
from biperc.errors import CapacityError
from biperc.graphs import BipartiteGraph, gen_kdd, gen_matching, gen_star
from biperc.percolation import (
    ISOLATED_COUNT,
    SUM_SQ_EDGES,
    SUM_SQ_SIZES,
    SUSCEPTIBILITY,
    Estimate,
    Functional,
    escape_weight,
    eval_functional,
    exact_expectation,
    mc_expectation,
    percolate_sample,
)

ALL_FUNCTIONALS = [
    escape_weight(0.3),
    escape_weight(0.9),
    ISOLATED_COUNT,
    SUSCEPTIBILITY,
    SUM_SQ_SIZES,
    SUM_SQ_EDGES,
]


def _kind_mu(f):
    return (f.kind, f.mu) if f.kind == "escape_weight" else (f.kind, None)


def test_functional_validation():
    with pytest.raises(ValueError):
        Functional("nope")
    with pytest.raises(ValueError):
        escape_weight(1.5)
    with pytest.raises(ValueError):
        Functional("isolated_count", mu=0.3)


def test_estimate_validation():
    with pytest.raises(ValueError):
        Estimate(mean=0.0, std_error=-1.0, samples=2)
    with pytest.raises(ValueError):
        Estimate(mean=0.0, std_error=0.5, samples=0, exact=True)
    exact = Estimate.exact_value(0.25)
    assert exact.exact and exact.std_error == 0.0


def test_eval_functional_trivials():
    edgeless = BipartiteGraph(3, 3, ())
    assert eval_functional(edgeless, escape_weight(0.25)) == pytest.approx(6 * 0.75, abs=1e-15)
    assert eval_functional(gen_kdd(4, 2), SUM_SQ_SIZES) == 32.0
    assert eval_functional(gen_star(3), ISOLATED_COUNT) == 2.0
    assert eval_functional(gen_kdd(4, 2), SUM_SQ_EDGES) == 32.0


def test_exact_expectation_single_edge():
    g = gen_matching(1)
    assert exact_expectation(g, 0.25, ISOLATED_COUNT) == pytest.approx(1.5, abs=1e-15)
    for p in (0.0, 0.1, 0.5, 0.9, 1.0):
        assert exact_expectation(g, p, ISOLATED_COUNT) == pytest.approx(2 * (1 - p), abs=1e-12)
        assert exact_expectation(g, p, SUSCEPTIBILITY) == pytest.approx(1 + p, abs=1e-12)


def test_exact_expectation_p1_matches_eval():
    for _, g in _battery():
        for f in ALL_FUNCTIONALS:
            assert exact_expectation(g, 1.0, f) == eval_functional(g, f)


def _battery():
    from conftest import small_battery

    return small_battery()


@pytest.mark.parametrize("p", [0.0, 0.1, 0.5, 0.9, 1.0])
def test_oracle_agreement(p):
    for name, g in _battery():
        assert g.n_edges <= 10
        for f in ALL_FUNCTIONALS:
            kind, mu = _kind_mu(f)
            want = naive.exact_expectation(g, p, kind, mu)
            got = exact_expectation(g, p, f)
            assert got == pytest.approx(want, abs=1e-12), (name, f, p)


def test_eval_functional_matches_naive():
    for name, g in _battery():
        for f in ALL_FUNCTIONALS:
            kind, mu = _kind_mu(f)
            want = naive.functional_value(g.n_left, g.n_right, g.edges, kind, mu)
            assert eval_functional(g, f) == pytest.approx(want, abs=1e-12), (name, f)


def test_capacity_error_names_limit():
    g = gen_kdd(6, 3)  # 18 edges
    with pytest.raises(CapacityError, match="16"):
        exact_expectation(g, 0.5, ISOLATED_COUNT, edge_limit=16)
    # within a raised limit it runs
    exact_expectation(g, 0.5, ISOLATED_COUNT, edge_limit=18)


def test_threads_match_single():
    g = gen_kdd(4, 2)
    ref = exact_expectation(g, 0.37, SUSCEPTIBILITY)
    assert exact_expectation(g, 0.37, SUSCEPTIBILITY, threads=3) == pytest.approx(ref, abs=1e-13)
    e1 = mc_expectation(g, 0.37, ISOLATED_COUNT, 5000, seed=9)
    e4 = mc_expectation(g, 0.37, ISOLATED_COUNT, 5000, seed=9, threads=4)
    assert e1 == e4  # per-sample substreams: identical regardless of partition


def test_mc_trivial_endpoints():
    g = gen_kdd(2, 2)
    est0 = mc_expectation(g, 0.0, ISOLATED_COUNT, 100, seed=1)
    assert est0.mean == 4.0 and est0.std_error == 0.0 and not est0.exact
    est1 = mc_expectation(g, 1.0, SUSCEPTIBILITY, 100, seed=1)
    assert est1.mean == eval_functional(g, SUSCEPTIBILITY) and est1.std_error == 0.0


def test_mc_matches_exact_within_4se():
    g = gen_matching(1)
    est = mc_expectation(g, 0.25, ISOLATED_COUNT, 100_000, seed=77)
    assert abs(est.mean - 1.5) <= 4 * est.std_error
    assert est.samples == 100_000


def test_mc_determinism_and_validation():
    g = gen_star(3)
    a = mc_expectation(g, 0.6, SUSCEPTIBILITY, 2000, seed=5)
    b = mc_expectation(g, 0.6, SUSCEPTIBILITY, 2000, seed=5)
    assert a == b
    c = mc_expectation(g, 0.6, SUSCEPTIBILITY, 2000, seed=6)
    assert c != a
    with pytest.raises(ValueError):
        mc_expectation(g, 0.6, SUSCEPTIBILITY, 1, seed=5)


def test_mc_consistency_battery():
    """At least 99% of seeded trials fall within 4 standard errors."""
    cases = [
        (gen_matching(3), 0.4, ISOLATED_COUNT),
        (gen_star(3), 0.6, SUSCEPTIBILITY),
        (gen_kdd(2, 2), 0.5, SUM_SQ_SIZES),
        (gen_kdd(4, 2), 0.3, SUM_SQ_EDGES),
    ]
    hits = trials = 0
    for g, p, f in cases:
        exact = exact_expectation(g, p, f)
        for seed in range(50):
            est = mc_expectation(g, p, f, 4000, seed=seed)
            trials += 1
            if abs(est.mean - exact) <= 4 * est.std_error:
                hits += 1
    assert hits / trials >= 0.99


@pytest.mark.parametrize("fname,direction", [
    ("susceptibility", +1),
    ("sum_sq_sizes", +1),
    ("isolated_count", -1),
])
def test_monotonicity_in_p(fname, direction):
    f = {"susceptibility": SUSCEPTIBILITY, "sum_sq_sizes": SUM_SQ_SIZES,
         "isolated_count": ISOLATED_COUNT}[fname]
    grid = [i / 10 for i in range(11)]
    for _, g in _battery():
        values = [exact_expectation(g, p, f) for p in grid]
        for a, b in zip(values, values[1:]):
            if direction > 0:
                assert b >= a - 1e-12
            else:
                assert b <= a + 1e-12


def test_escape_weight_bounds():
    for _, g in _battery():
        nv = g.n_vertices
        for mu in (0.0, 0.3, 0.8, 1.0):
            for p in (0.2, 0.7):
                val = exact_expectation(g, p, escape_weight(mu))
                assert nv * (1 - mu) ** nv - 1e-12 <= val <= nv * (1 - mu) + 1e-12


def test_percolate_sample():
    g = gen_kdd(2, 2)
    assert percolate_sample(g, 1.0, seed=3) == g
    assert percolate_sample(g, 0.0, seed=3).n_edges == 0
    a = percolate_sample(g, 0.5, seed=11)
    assert a == percolate_sample(g, 0.5, seed=11)
    assert set(a.edges) <= set(g.edges)


def test_percolate_sample_matches_mc_substream():
    """The standalone sample is sample 0 of the Monte Carlo stream."""
    from biperc import backend

    g = gen_kdd(3, 3)
    p, seed = 0.47, 123
    sub = percolate_sample(g, p, seed)
    from biperc.percolation import _edge_arrays, _tables

    us, vs = _edge_arrays(g)
    mode, table = _tables(g, ISOLATED_COUNT)
    out = np.empty(1)
    backend.kernels.perc_values(us, vs, g.n_vertices, p, mode, table, seed, 0, 1, out)
    assert out[0] == eval_functional(sub, ISOLATED_COUNT)


def test_probability_validation():
    g = gen_matching(2)
    with pytest.raises(ValueError):
        exact_expectation(g, 1.5, ISOLATED_COUNT)
    with pytest.raises(ValueError):
        mc_expectation(g, -0.1, ISOLATED_COUNT, 10, seed=0)
