"""Independence number, fractional packing, the semidefinite relaxation,
and the three convex-body membership tests."""

import math
import random

import numpy as np
import pytest

from exgraph import bounds as bd
from exgraph import graph as gr
from oracles import (
    brute_independence,
    brute_maximal_cliques,
    cycle_alpha,
    cycle_alpha_star,
    cycle_theta,
    random_graph,
)

ROOT5 = math.sqrt(5.0)


def test_independence_number_matches_brute_force():
    rng = random.Random(101)
    for _ in range(20):
        n = rng.randint(2, 12)
        edges = random_graph(rng, n, 0.4)
        g = gr.from_edges(n, edges)
        alpha, witness = bd.independence_number(g)
        expect, _ = brute_independence(n, edges)
        assert alpha == expect
        assert len(witness) == alpha
        assert all(not g.has_edge(u, v) for u in witness for v in witness if u != v)


def test_maximal_cliques_match_brute_force():
    rng = random.Random(17)
    for _ in range(15):
        n = rng.randint(2, 10)
        edges = random_graph(rng, n, 0.5)
        g = gr.from_edges(n, edges)
        got = sorted(tuple(sorted(c)) for c in bd.maximal_cliques(g))
        assert got == brute_maximal_cliques(n, edges)


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8, 9, 11])
def test_cycle_invariants_closed_form(n):
    g = gr.cycle_graph(n)
    alpha, _ = bd.independence_number(g)
    assert alpha == cycle_alpha(n)
    assert bd.lovasz_theta(g) == pytest.approx(cycle_theta(n), abs=1e-6)
    assert bd.fractional_packing(g) == pytest.approx(cycle_alpha_star(n), abs=1e-9)


def test_frozen_named_graphs():
    pet = gr.petersen_graph()
    assert bd.independence_number(pet)[0] == 4
    assert bd.lovasz_theta(pet) == pytest.approx(4.0, abs=1e-5)
    assert bd.fractional_packing(pet) == pytest.approx(5.0, abs=1e-9)

    j52 = gr.johnson_graph(5, 2)
    assert bd.independence_number(j52)[0] == 2
    assert bd.fractional_packing(j52) == pytest.approx(2.5, abs=1e-9)
    assert bd.lovasz_theta(j52) == pytest.approx(2.5, abs=1e-5)

    assert bd.fractional_packing(gr.complete_graph(7)) == pytest.approx(1.0, abs=1e-9)
    assert bd.lovasz_theta(gr.empty_graph(6)) == pytest.approx(6.0, abs=1e-5)


def test_subset_intersection_family_values():
    g = gr.subset_intersection_graph(3, 1)
    assert g.n == 20
    assert bd.independence_number(g)[0] == 4
    assert bd.lovasz_theta(g) == pytest.approx(5.0, abs=1e-5)


def test_sandwich_on_random_graphs():
    rng = random.Random(29)
    for _ in range(8):
        n = rng.randint(3, 10)
        g = gr.from_edges(n, random_graph(rng, n, 0.45))
        rep = bd.bounds_report(g)
        assert rep.alpha <= rep.theta + 1e-5
        assert rep.theta <= rep.alpha_star + 1e-5
        assert rep.ratio == pytest.approx(rep.theta / rep.alpha)
        assert len(rep.witness_independent_set) == rep.alpha


def test_circulant_oracle_agrees_with_sdp():
    specs = [(5, (1,)), (7, (1,)), (8, (1, 4)), (10, (1, 2)), (10, (2, 5)), (9, (1, 3)), (12, (1, 6))]
    for n, offs in specs:
        lp_value = bd.theta_circulant_oracle(n, offs)
        sdp_value = bd.lovasz_theta(gr.circulant_graph(n, offs))
        assert abs(lp_value - sdp_value) < 1e-6, (n, offs)


def test_weighted_theta_scaling_and_special_cases():
    g = gr.cycle_graph(5)
    w = (0.3, 1.0, 0.7, 0.2, 0.9)
    base = bd.lovasz_theta(g, weights=w)
    scaled = bd.lovasz_theta(g, weights=tuple(2.5 * x for x in w))
    assert scaled == pytest.approx(2.5 * base, rel=2e-5)
    assert bd.lovasz_theta(g, weights=(1.0,) * 5) == pytest.approx(ROOT5, abs=1e-6)
    # complete graph: the weighted value is the largest weight
    k4 = gr.complete_graph(4)
    assert bd.lovasz_theta(k4, weights=(0.2, 1.4, 0.9, 0.1)) == pytest.approx(1.4, abs=1e-5)
    # empty graph: the sum
    e3 = gr.empty_graph(3)
    assert bd.lovasz_theta(e3, weights=(0.2, 0.3, 0.4)) == pytest.approx(0.9, abs=1e-5)


def test_weighted_theta_monotone_in_weights():
    g = gr.cycle_graph(7)
    rng = np.random.default_rng(4)
    w = rng.uniform(0.1, 1.0, size=7)
    bigger = w + rng.uniform(0.0, 0.5, size=7)
    assert bd.lovasz_theta(g, weights=tuple(w)) <= bd.lovasz_theta(g, weights=tuple(bigger)) + 2e-6


def test_weight_validation():
    g = gr.cycle_graph(5)
    with pytest.raises(ValueError):
        bd.lovasz_theta(g, weights=(1.0, -0.2, 1.0, 1.0, 1.0))
    with pytest.raises(ValueError):
        bd.lovasz_theta(g, weights=(1.0, 1.0))


def test_theta_matrix_is_a_valid_primal_point():
    g = gr.cycle_graph(5)
    value, x = bd.lovasz_theta_matrix(g)
    assert value == pytest.approx(ROOT5, abs=1e-6)
    assert abs(np.trace(x) - 1.0) < 1e-5
    assert np.linalg.eigvalsh(x)[0] > -1e-6
    for i, j in g.edges():
        assert abs(x[i, j]) < 1e-4


def test_stab_membership_accepts_indicators_and_mixtures():
    g = gr.cycle_graph(5)
    ind = np.zeros(5)
    ind[[0, 2]] = 1.0
    ok, cert = bd.stab_membership(g, ind)
    assert ok
    assert sum(cert["weights"].values()) == pytest.approx(1.0, abs=1e-7)
    mix = 0.5 * ind + 0.5 * np.array([0.0, 1.0, 0.0, 0.0, 1.0])
    ok, cert = bd.stab_membership(g, mix)
    assert ok
    # reconstruct the point from the returned decomposition
    rebuilt = np.zeros(5)
    for members, weight in cert["weights"].items():
        for v in members:
            rebuilt[v] += weight
    np.testing.assert_allclose(rebuilt, mix, atol=1e-7)


def test_stab_separation_certificate_is_valid():
    g = gr.cycle_graph(5)
    p = np.full(5, 0.6)
    ok, cert = bd.stab_membership(g, p)
    assert not ok
    a = np.array(cert["a"])
    beta = cert["beta"]
    assert float(a @ p) > beta + 1e-9
    # the functional must hold on every independent set of the oracle
    _, _ = brute_independence(5, g.edges())
    for mask in range(1 << 5):
        members = [v for v in range(5) if mask >> v & 1]
        if any(g.has_edge(u, v) for u in members for v in members if u < v):
            continue
        assert sum(a[v] for v in members) <= beta + 1e-7


def test_th_membership_boundary_cases():
    g = gr.cycle_graph(5)
    inside, theta = bd.th_membership(g, np.full(5, 1.0 / ROOT5))
    assert inside
    assert theta == pytest.approx(1.0, abs=1e-5)
    outside, theta = bd.th_membership(g, np.full(5, 0.5))
    assert not outside
    assert theta == pytest.approx(ROOT5 / 2, abs=1e-5)
    neg, theta = bd.th_membership(g, [0.2, -0.1, 0.2, 0.2, 0.2])
    assert not neg and theta is None


def test_qstab_membership_and_certificates():
    g = gr.cycle_graph(5)
    ok, cert = bd.qstab_membership(g, np.full(5, 0.5))
    assert ok and cert is None
    ok, cert = bd.qstab_membership(g, np.full(5, 0.61))
    assert not ok
    assert cert["kind"] == "clique"
    assert cert["total"] == pytest.approx(1.22)
    assert len(cert["clique"]) == 2
    ok, cert = bd.qstab_membership(g, [-0.2, 0.1, 0.1, 0.1, 0.1])
    assert not ok and cert["kind"] == "negative" and cert["vertex"] == 0


def test_membership_chain_stab_th_qstab():
    rng = np.random.default_rng(88)
    for g in (gr.cycle_graph(5), gr.complete_graph(3), gr.path_graph(4)):
        masks = [
            [v for v in range(g.n) if m >> v & 1]
            for m in range(1 << g.n)
            if not any(g.has_edge(u, v) for u in range(g.n) for v in range(g.n) if m >> u & 1 and m >> v & 1 and u < v)
        ]
        for _ in range(5):
            weights = rng.dirichlet(np.ones(len(masks)))
            p = np.zeros(g.n)
            for w, members in zip(weights, masks):
                for v in members:
                    p[v] += w
            assert bd.stab_membership(g, p)[0]
            assert bd.th_membership(g, p)[0]
            assert bd.qstab_membership(g, p)[0]


def test_stab_size_cap():
    with pytest.raises(ValueError):
        bd.stab_membership(gr.empty_graph(40), np.zeros(40))
