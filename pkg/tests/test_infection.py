import math

import pytest

import naive
from biperc.graphs import BipartiteGraph, gen_kdd, gen_kdn, gen_matching, gen_star, make_graph
from biperc.infection import (
    cascade_sample,
    delta_diagnostics,
    infected_fraction_exact,
    infected_fraction_mc,
    kdd_exact,
    kdn_limit,
    l_prob,
    r_prob,
    star_expected_fraction,
    star_limit,
)
from biperc.rng import Stream
from conftest import small_battery

GRID = [i / 10 for i in range(11)]


def test_exact_trivials():
    for _, g in small_battery():
        assert infected_fraction_exact(g, 0.35, 0.0) == pytest.approx(0.35, abs=1e-12)
        assert infected_fraction_exact(g, 1.0, 0.6) == pytest.approx(1.0, abs=1e-12)


def test_exact_single_edge_anchor():
    got = infected_fraction_exact(gen_matching(1), 0.5, 0.8)
    assert got == pytest.approx(0.7, abs=1e-15)
    mu, p = 0.5, 0.8
    assert got == pytest.approx(mu + mu * p - mu * mu * p, abs=1e-15)


def test_exact_matches_naive():
    for name, g in small_battery():
        for mu in (0.1, 0.55, 0.9):
            for p in (0.2, 0.7):
                want = naive.infected_fraction(g, mu, p)
                assert infected_fraction_exact(g, mu, p) == pytest.approx(want, abs=1e-12), name


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def test_l_r_prob_anchors():
    assert l_prob(0, 0.55, 0.4) == pytest.approx(0.55, abs=1e-15)
    assert l_prob(1, 0.55, 0.4) == pytest.approx(0.649, abs=1e-12)
    assert r_prob(1, 0.55, 0.4) == pytest.approx(0.649, abs=1e-12)
    assert r_prob(7, 1.0, 0.3) == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        r_prob(0, 0.5, 0.5)
    with pytest.raises(ValueError):
        l_prob(-1, 0.5, 0.5)


def test_l_r_prob_match_bruteforce():
    for k in range(1, 8):
        for mu in (0.0, 0.3, 0.55, 1.0):
            for p in (0.0, 0.4, 1.0):
                assert l_prob(k, mu, p) == pytest.approx(
                    naive.star_center_infection(k, mu, p), abs=1e-12
                )
                assert r_prob(k, mu, p) == pytest.approx(
                    naive.star_leaf_infection(k, mu, p), abs=1e-12
                )


def test_star_fraction_anchors():
    assert star_expected_fraction(1, 0.55, 0.4) == pytest.approx(0.649, abs=1e-12)
    assert star_expected_fraction(2, 0.55, 0.4) == pytest.approx(0.6524650, abs=1e-8)
    for k in range(1, 5):
        assert star_expected_fraction(k, 0.3, 0.0) == pytest.approx(0.3, abs=1e-15)


@pytest.mark.parametrize("k", range(1, 7))
def test_star_closed_form_equals_engine(k):
    for mu in GRID:
        for p in GRID:
            want = infected_fraction_exact(gen_star(k), mu, p)
            assert star_expected_fraction(k, mu, p) == pytest.approx(want, abs=1e-12)


def test_star_limit():
    assert star_limit(0.55, 0.4) == pytest.approx(0.64, abs=1e-15)
    # convergence is (1-mu)/(2k) + o(1/k): 2.25e-3 at k=100, below 1e-3 by k=450
    assert abs(star_expected_fraction(100, 0.55, 0.4) - 0.64) == pytest.approx(
        0.45 / 200, abs=1e-6
    )
    assert abs(star_expected_fraction(450, 0.55, 0.4) - 0.64) < 1e-3
    assert star_limit(0.42, 0.0) == pytest.approx(0.42, abs=1e-15)
    assert star_limit(1.0, 0.7) == pytest.approx(1.0, abs=1e-15)
    assert star_limit(0.0, 0.7) == 0.0


def test_delta_diagnostics():
    # Delta1 at k=2 collapses to p^2 mu (3mu/2 - 1)
    for mu in (0.2, 0.5, 2 / 3, 0.9):
        for p in (0.1, 0.4, 1.0):
            _, d1, _ = delta_diagnostics(2, mu, p)
            assert d1 == pytest.approx(p * p * mu * (1.5 * mu - 1.0), abs=1e-12)
    assert delta_diagnostics(2, 2 / 3, 0.8)[1] == pytest.approx(0.0, abs=1e-12)
    assert delta_diagnostics(2, 0.5, 0.4)[1] == pytest.approx(-0.02, abs=1e-12)
    with pytest.raises(ValueError):
        delta_diagnostics(1, 0.5, 0.5)
    with pytest.raises(ValueError):
        delta_diagnostics(3, 1.0, 0.5)


def test_delta_consistency_with_star_fractions():
    for k in (2, 3, 5, 8):
        for mu in (0.1, 0.5, 0.85):
            for p in (0.25, 0.6, 1.0):
                d, d1, d2 = delta_diagnostics(k, mu, p)
                scale = 2.0 / (1.0 - mu)
                e_km1 = star_expected_fraction(k - 1, mu, p)
                e_k = star_expected_fraction(k, mu, p)
                e_kp1 = star_expected_fraction(k + 1, mu, p)
                e_1 = star_expected_fraction(1, mu, p)
                assert d1 == pytest.approx(scale * (e_km1 - e_k), abs=1e-12)
                assert d2 == pytest.approx(scale * (e_k - e_kp1), abs=1e-12)
                assert d == pytest.approx((e_k - e_1) / (1.0 - mu), abs=1e-12)


def test_kdd_exact():
    assert kdd_exact(1, 0.5, 0.8) == pytest.approx(0.7, abs=1e-15)
    assert kdd_exact(1, 0.5, 1.0) == pytest.approx(0.75, abs=1e-15)
    for d in (1, 2, 3):
        assert kdd_exact(d, 0.4, 0.0) == pytest.approx(0.4, abs=1e-12)
    # a disjoint union of blocks has the same expected fraction as one block
    assert kdd_exact(2, 0.3, 0.6) == pytest.approx(
        infected_fraction_exact(gen_kdd(6, 2), 0.3, 0.6), abs=1e-12
    )


def test_kdn_limit_cases():
    for d in (1, 2, 4):
        assert kdn_limit(d, 0.5, 0.0) == pytest.approx(0.5, abs=1e-15)
        assert kdn_limit(d, 1.0, 0.3) == pytest.approx(1.0, abs=1e-15)
        assert kdn_limit(d, 0.0, 0.3) == 0.0
    # d=1, mu=1/2: coincides with the single-edge value for every p
    for p in GRID:
        assert kdn_limit(1, 0.5, p) == pytest.approx(kdd_exact(1, 0.5, p), abs=1e-12)


def test_kdn_limit_is_the_finite_size_limit():
    # finite values approach the limit ~ c/n once the hubs' escape
    # probability (1 - mu p)^n is negligible: extrapolate the last two
    for d, mu, p in [(1, 0.5, 0.8), (2, 0.5, 0.8), (2, 0.6, 0.7)]:
        lim = kdn_limit(d, mu, p)
        v10 = infected_fraction_exact(gen_kdn(10, d), mu, p)
        v12 = infected_fraction_exact(gen_kdn(12, d), mu, p)
        extrapolated = 6.0 * v12 - 5.0 * v10
        assert abs(extrapolated - lim) < 0.01
        assert abs(v12 - lim) < abs(v10 - lim) + 1e-12


# ---------------------------------------------------------------------------
# Cascade simulation
# ---------------------------------------------------------------------------

def test_cascade_trivials():
    g = gen_kdd(4, 2)
    assert cascade_sample(g, 0.0, 0.7, seed=1) == frozenset()
    assert cascade_sample(g, 1.0, 0.0, seed=1) == frozenset(range(8))
    a = cascade_sample(g, 0.5, 0.5, seed=42)
    assert a == cascade_sample(g, 0.5, 0.5, seed=42)


def test_cascade_order_independence():
    """Replaying the same pre-drawn indicators in scrambled processing
    order gives the same infected set."""
    for name, g in small_battery():
        for seed in range(8):
            stream = Stream(seed, 0)
            nv = g.n_vertices
            seeded = [stream.next_double() < 0.4 for _ in range(nv)]
            live = [stream.next_double() < 0.6 for _ in g.edges]
            want = cascade_sample(g, 0.4, 0.6, seed)

            order = Stream(seed + 1000, 0)
            infected = {v for v in range(nv) if seeded[v]}
            frontier = sorted(infected)
            nbr = [[] for _ in range(nv)]
            for (u, v), ok in zip(g.global_edges(), live):
                if ok:
                    nbr[u].append(v)
                    nbr[v].append(u)
            while frontier:
                # scramble the within-round processing order
                scrambled = list(frontier)
                for i in range(len(scrambled) - 1, 0, -1):
                    j = order.randrange(i + 1)
                    scrambled[i], scrambled[j] = scrambled[j], scrambled[i]
                nxt = []
                for u in scrambled:
                    for w in nbr[u]:
                        if w not in infected:
                            infected.add(w)
                            nxt.append(w)
                frontier = nxt
            assert frozenset(infected) == want, name


def test_cascade_sample_matches_kernel_count():
    import numpy as np

    from biperc import backend
    from biperc.percolation import _edge_arrays

    for name, g in small_battery():
        us, vs = _edge_arrays(g)
        for seed in (0, 7, 99):
            out = np.empty(1, dtype=np.int32)
            backend.kernels.cascade_counts(us, vs, g.n_vertices, 0.3, 0.6, seed, 0, 1, out)
            assert out[0] == len(cascade_sample(g, 0.3, 0.6, seed)), name


def test_mc_trivials():
    g = gen_kdd(2, 2)
    est = infected_fraction_mc(g, 1.0, 0.4, 500, seed=3)
    assert est.mean == 1.0 and est.std_error == 0.0
    est = infected_fraction_mc(g, 0.25, 0.0, 20_000, seed=3)
    assert abs(est.mean - 0.25) <= 4 * est.std_error
    with pytest.raises(ValueError):
        infected_fraction_mc(g, 0.5, 0.5, 1, seed=0)


def test_mc_matches_exact():
    g = gen_kdd(2, 2)
    exact = infected_fraction_exact(g, 0.3, 0.5)
    est = infected_fraction_mc(g, 0.3, 0.5, 100_000, seed=11)
    assert abs(est.mean - exact) <= 4 * est.std_error


def test_cascade_equals_percolation_battery():
    for name, g in small_battery():
        assert g.n_edges <= 12
        for mu, p in [(0.1, 0.5), (0.5, 0.9), (0.9, 0.1)]:
            exact = infected_fraction_exact(g, mu, p)
            est = infected_fraction_mc(g, mu, p, 40_000, seed=13)
            se = max(est.std_error, 1e-9)
            assert abs(est.mean - exact) <= 4 * se, (name, mu, p)


def test_edge_monotonicity():
    """Adding any single edge never decreases the infected fraction."""
    for name, g in small_battery():
        if g.n_edges > 9:
            continue
        base = infected_fraction_exact(g, 0.4, 0.6)
        present = set(g.edges)
        for l in range(g.n_left):
            for r in range(g.n_right):
                if (l, r) in present:
                    continue
                bigger = make_graph(g.n_left, g.n_right, list(g.edges) + [(l, r)])
                assert infected_fraction_exact(bigger, 0.4, 0.6) >= base - 1e-12, name


def test_parameter_monotonicity():
    for _, g in small_battery():
        values_mu = [infected_fraction_exact(g, mu, 0.6) for mu in GRID]
        assert all(b >= a - 1e-12 for a, b in zip(values_mu, values_mu[1:]))
        values_p = [infected_fraction_exact(g, 0.4, p) for p in GRID]
        assert all(b >= a - 1e-12 for a, b in zip(values_p, values_p[1:]))
