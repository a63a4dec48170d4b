"""Quantum-side checks: orthogonal representations, cyclic-scenario
realizations, the singlet box, and the hidden-variable sampler."""

import math

import numpy as np
import pytest

from exgraph import graph as gr
from exgraph.quantum import (
    bell_qubit_hv_expectation,
    kcbs_orthorep,
    ncycle_quantum_realization,
    orthorep_from_json_dict,
    paulis,
    singlet_box,
    singlet_chsh,
    verify_orthorep,
)
from exgraph.scenarios import check_nondisturbance, evaluate_inequality, has_global_section
from exgraph.boxes import chsh_value, is_local, is_nosignaling

ROOT5 = math.sqrt(5.0)


def _odd_value(n):
    c = math.cos(math.pi / n)
    return n * (3 * c - 1) / (1 + c)


def test_pauli_algebra():
    sx, sy, sz = paulis()
    for s in (sx, sy, sz):
        np.testing.assert_allclose(s @ s, np.eye(2), atol=1e-12)
    np.testing.assert_allclose(sx @ sy + sy @ sx, np.zeros((2, 2)), atol=1e-12)
    np.testing.assert_allclose(sx @ sy, 1j * sz, atol=1e-12)


def test_kcbs_umbrella_reaches_root5():
    rep = kcbs_orthorep()
    assert rep.dimension == 3
    ok, witness = verify_orthorep(gr.cycle_graph(5), rep)
    assert ok
    assert witness == pytest.approx(ROOT5, abs=1e-9)
    for v in rep.vectors:
        assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)


def test_orthorep_json_roundtrip():
    rep = kcbs_orthorep()
    again = orthorep_from_json_dict(rep.to_json_dict())
    assert again.witness_value() == pytest.approx(rep.witness_value(), abs=1e-12)
    ok, _ = verify_orthorep(gr.cycle_graph(5), again)
    assert ok


def test_verify_orthorep_rejects_wrong_length():
    with pytest.raises(ValueError):
        verify_orthorep(gr.cycle_graph(4), kcbs_orthorep())


def test_verify_orthorep_flags_nonorthogonal_edges():
    rep = kcbs_orthorep()
    ok, _ = verify_orthorep(gr.complete_graph(5), rep)
    assert not ok


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8, 9])
def test_cyclic_realizations_hit_the_quantum_value(n):
    real = ncycle_quantum_realization(n)
    expect = _odd_value(n) if n % 2 else n * math.cos(math.pi / n)
    assert real.value == pytest.approx(expect, abs=1e-12)
    ineq = real.inequality()
    assert real.value > ineq.bound + 0.1
    model = real.model()
    ok, _ = check_nondisturbance(model, tol=1e-7)
    assert ok
    assert evaluate_inequality(model, ineq) == pytest.approx(real.value, abs=1e-7)


def test_realization_event_projectors_match_the_model():
    real = ncycle_quantum_realization(5)
    born = sum(float(np.trace(real.rho @ e).real) for e in real.event_projectors)
    s = evaluate_inequality(real.model(), real.inequality(), form="probability")
    assert born == pytest.approx(s, abs=1e-7)


@pytest.mark.parametrize("n", [4, 5])
def test_quantum_models_admit_no_global_section(n):
    model = ncycle_quantum_realization(n).model()
    ok, cert = has_global_section(model)
    assert not ok
    assert cert["margin"] > 1e-7


def test_realization_rejects_tiny_n():
    with pytest.raises(ValueError):
        ncycle_quantum_realization(3)


def test_singlet_box_is_quantum_not_classical():
    box = singlet_box()
    ok, _ = is_nosignaling(box)
    assert ok
    local, _ = is_local(box)
    assert not local
    assert chsh_value(box) == pytest.approx(2 * math.sqrt(2), abs=1e-9)
    assert singlet_chsh() == pytest.approx(2 * math.sqrt(2), abs=1e-9)


def test_hv_sampler_is_seeded_and_converges():
    a_vec = (0.4, -0.2, 0.5)
    n_vec = np.array([1.0, 2.0, -1.0]) / math.sqrt(6.0)
    one = bell_qubit_hv_expectation(0.1, a_vec, n_vec, samples=5000, seed=12)
    two = bell_qubit_hv_expectation(0.1, a_vec, n_vec, samples=5000, seed=12)
    assert one == two
    exact = 0.1 + float(np.dot(a_vec, n_vec))
    norm_a = float(np.linalg.norm(a_vec))
    big = bell_qubit_hv_expectation(0.1, a_vec, n_vec, samples=200_000, seed=7)
    assert abs(big - exact) < 4 * norm_a / math.sqrt(200_000)


def test_hv_sampler_exact_when_observable_aligns_with_state():
    # with a parallel to n every hidden direction gives the + outcome
    val = bell_qubit_hv_expectation(0.3, (0.0, 0.0, 0.7), (0.0, 0.0, 1.0), samples=100, seed=1)
    assert val == pytest.approx(1.0, abs=1e-12)


def test_hv_sampler_validation():
    with pytest.raises(ValueError):
        bell_qubit_hv_expectation(0.0, (1.0, 0.0, 0.0), (1.0, 0.0, 0.0), samples=0, seed=1)
    with pytest.raises(ValueError):
        bell_qubit_hv_expectation(0.0, (1.0, 0.0, 0.0), (2.0, 0.0, 0.0), samples=10, seed=1)
    with pytest.raises(ValueError):
        bell_qubit_hv_expectation(0.0, (1.0, 0.0), (1.0, 0.0, 0.0), samples=10, seed=1)
