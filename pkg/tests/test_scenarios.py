"""Measurement scenarios, nondisturbance, global sections, and the cyclic
inequality family."""

import itertools
import math

import pytest

from exgraph import graph as gr
from exgraph.scenarios import (
    EmpiricalModel,
    Scenario,
    check_nondisturbance,
    evaluate_inequality,
    has_global_section,
    inequality_exclusivity_graph,
    model_from_json_dict,
    ncycle_inequalities,
    ncycle_inequality,
    ncycle_scenario,
    pentagon_extremal_model,
    pentagon_inequality,
    triangle_overlap_model,
)


def test_scenario_validation():
    with pytest.raises(ValueError):
        Scenario(("A", "A"), (0, 1), ())
    with pytest.raises(ValueError):
        Scenario(("A", "B"), (), (("A",),))
    with pytest.raises(ValueError):
        Scenario(("A", "B"), (0, 1), (("A", "C"),))
    with pytest.raises(ValueError):
        Scenario(("A", "B"), (0, 1), (("A", "B"), ("A", "B")))


def test_model_validation_catches_bad_tables():
    scn = ncycle_scenario(3)
    tables = {ctx: {(1, 1): 0.5, (-1, -1): 0.5} for ctx in scn.contexts}
    EmpiricalModel(scn, tables).validate()
    broken = dict(tables)
    broken[scn.contexts[0]] = {(1, 1): 0.7, (-1, -1): 0.5}
    with pytest.raises(ValueError):
        EmpiricalModel(scn, broken).validate()
    broken[scn.contexts[0]] = {(1, 1, 1): 1.0}
    with pytest.raises(ValueError):
        EmpiricalModel(scn, broken).validate()


def test_model_json_roundtrip():
    model = triangle_overlap_model()
    again = model_from_json_dict(model.to_json_dict())
    for ctx in model.scenario.contexts:
        for outcome in itertools.product((1, -1), repeat=2):
            assert again.prob(ctx, outcome) == pytest.approx(model.prob(ctx, outcome))


def test_marginal_sums():
    model = pentagon_extremal_model()
    ctx = model.scenario.contexts[0]
    marg = model.marginal(ctx, (ctx[0],))
    assert sum(marg.values()) == pytest.approx(1.0)
    assert marg[(1,)] == pytest.approx(0.5)


def test_stock_models_are_nondisturbing():
    for model in (triangle_overlap_model(), pentagon_extremal_model()):
        ok, failures = check_nondisturbance(model)
        assert ok and not failures


def test_nondisturbance_detects_signaling():
    scn = ncycle_scenario(3)
    tables = {ctx: {(1, 1): 0.5, (-1, -1): 0.5} for ctx in scn.contexts}
    # skew one marginal of M0 in the first context only
    tables[scn.contexts[0]] = {(1, 1): 0.8, (-1, -1): 0.2}
    model = EmpiricalModel(scn, tables)
    ok, failures = check_nondisturbance(model)
    assert not ok
    assert any("M0" in f["shared"] for f in failures)
    assert all(f["max_difference"] > 1e-9 for f in failures)


def test_triangle_has_no_global_section_with_valid_farkas_certificate():
    model = triangle_overlap_model()
    ok, cert = has_global_section(model)
    assert not ok
    assert cert["margin"] > 1e-7
    # replay the certificate: nonpositive on every deterministic assignment,
    # positive on the model
    scn = model.scenario
    coeffs = cert["coefficients"]
    for atom in itertools.product(scn.outcomes, repeat=len(scn.measurements)):
        lookup = dict(zip(scn.measurements, atom))
        total = cert["constant"]
        for ctx_key, table in coeffs.items():
            ctx = tuple(ctx_key.split(","))
            hit = ",".join(str(lookup[m]) for m in ctx)
            total += table.get(hit, 0.0)
        assert total <= 1e-7
    value = cert["constant"]
    for ctx_key, table in coeffs.items():
        ctx = tuple(ctx_key.split(","))
        for out_key, y in table.items():
            outcome = tuple(int(t) for t in out_key.split(","))
            value += y * model.prob(ctx, outcome)
    assert value > 1e-7


def test_global_section_distribution_reproduces_tables():
    scn = ncycle_scenario(4)
    tables = {ctx: {o: 0.25 for o in itertools.product((1, -1), repeat=2)} for ctx in scn.contexts}
    model = EmpiricalModel(scn, tables)
    ok, cert = has_global_section(model)
    assert ok
    dist = cert["distribution"]
    assert sum(dist.values()) == pytest.approx(1.0, abs=1e-6)
    for ctx in scn.contexts:
        for outcome in itertools.product((1, -1), repeat=2):
            mass = sum(
                w
                for atoms, w in dist.items()
                if all(dict(atoms)[m] == o for m, o in zip(ctx, outcome))
            )
            assert mass == pytest.approx(model.prob(ctx, outcome), abs=1e-6)


def test_cycle_inequality_counts_and_constraints():
    for n in (3, 4, 5):
        ineqs = ncycle_inequalities(n)
        assert len(ineqs) == 2 ** (n - 1)
        assert len({i.name for i in ineqs}) == len(ineqs)
        for ineq in ineqs:
            assert sum(1 for g in ineq.gamma if g == -1) % 2 == 1
            assert len(ineq.events) == 2 * n
            assert ineq.bound == n - 2
            assert ineq.prob_bound == n - 1
    with pytest.raises(ValueError):
        ncycle_inequality(5, (1, 1, 1, -1, -1))
    with pytest.raises(ValueError):
        ncycle_inequality(4, (1, 1, 1))


def test_correlation_and_probability_forms_are_affinely_linked():
    model = pentagon_extremal_model()
    ineq = pentagon_inequality()
    s = evaluate_inequality(model, ineq, form="probability")
    c = evaluate_inequality(model, ineq, form="correlation")
    assert c == pytest.approx(ineq.scale * s + ineq.offset)
    with pytest.raises(ValueError):
        evaluate_inequality(model, ineq, form="expectation")


def test_extremal_pentagon_box_saturates_the_nondisturbing_maximum():
    model = pentagon_extremal_model()
    value = evaluate_inequality(model, pentagon_inequality())
    assert value == pytest.approx(5.0, abs=1e-9)
    ok, _ = check_nondisturbance(model)
    assert ok
    ok, _ = has_global_section(model)
    assert not ok


def test_classical_bound_holds_for_deterministic_assignments():
    # every deterministic outcome assignment obeys each five-cycle
    # inequality, and at least one saturates it
    scn = ncycle_scenario(5)
    for ineq in ncycle_inequalities(5):
        best = -math.inf
        for atom in itertools.product((1, -1), repeat=5):
            tables = {}
            for i, ctx in enumerate(scn.contexts):
                j = (i + 1) % 5
                tables[ctx] = {(atom[i], atom[j]): 1.0}
            value = evaluate_inequality(EmpiricalModel(scn, tables), ineq)
            assert value <= ineq.bound + 1e-12
            best = max(best, value)
        assert best == pytest.approx(ineq.bound)


def test_event_graph_of_the_odd_cycle_is_the_prism():
    scn = ncycle_scenario(5)
    ineq = ncycle_inequality(5, (-1,) * 5)
    g = inequality_exclusivity_graph(ineq, scn)
    assert g.n == 10
    assert gr.is_isomorphic(g, gr.prism_graph(5))


def test_event_graph_of_the_even_cycle_is_the_moebius_ladder():
    scn = ncycle_scenario(4)
    ineq = ncycle_inequality(4, (-1, -1, -1, 1))
    g = inequality_exclusivity_graph(ineq, scn)
    assert g.n == 8
    assert gr.is_isomorphic(g, gr.moebius_ladder(8))
