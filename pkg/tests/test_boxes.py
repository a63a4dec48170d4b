"""Bell boxes: no-signaling, locality LP, CHSH/GYNI functionals, and the
communication protocols built on top of noisy PR boxes."""

import itertools
import math

import numpy as np
import pytest

from exgraph.boxes import (
    BellScenario,
    Box,
    box_from_json_dict,
    chsh_value,
    correlator,
    deterministic_box,
    gyni_value,
    ip_one_bit_protocol,
    is_local,
    is_nosignaling,
    local_orthogonality_two_pr,
    nested_ic,
    pr_box,
    product_box,
    uniform_box,
    van_dam_ic,
)
from oracles import inner_product_mod2


def test_scenario_and_box_validation():
    with pytest.raises(ValueError):
        BellScenario((2, 2), (2,))
    with pytest.raises(ValueError):
        BellScenario((0, 2), (2, 2))
    scn = BellScenario((2, 2), (2, 2))
    with pytest.raises(ValueError):
        Box(scn, np.zeros((2, 2, 2)))
    bad = Box(scn, np.full((2, 2, 2, 2), 0.3))
    with pytest.raises(ValueError):
        bad.validate()


def test_pr_box_is_nosignaling_nonlocal_and_maximal():
    box = pr_box()
    box.validate()
    ok, cert = is_nosignaling(box)
    assert ok and cert is None
    local, cert = is_local(box)
    assert not local
    assert cert["margin"] > 1e-7
    assert chsh_value(box) == pytest.approx(4.0, abs=1e-12)


def test_nonlocality_certificate_replays():
    box = pr_box()
    _, cert = is_local(box)
    value = cert["constant"]
    for xk, inner in cert["coefficients"].items():
        x = tuple(int(t) for t in xk.split(","))
        for ak, y in inner.items():
            a = tuple(int(t) for t in ak.split(","))
            value += y * box.prob(x, a)
    assert value > 1e-7
    # and it is nonpositive on every deterministic strategy
    for sa, sb in itertools.product(itertools.product(range(2), repeat=2), repeat=2):
        det = deterministic_box(box.scenario, (sa, sb))
        total = cert["constant"]
        for xk, inner in cert["coefficients"].items():
            x = tuple(int(t) for t in xk.split(","))
            for ak, y in inner.items():
                a = tuple(int(t) for t in ak.split(","))
                total += y * det.prob(x, a)
        assert total <= 1e-7


@pytest.mark.parametrize("e", [0.0, 0.5, 1 / math.sqrt(2), 1.0])
def test_chsh_is_linear_in_the_mixing_weight(e):
    assert chsh_value(pr_box(2, e)) == pytest.approx(4 * e, abs=1e-12)


def test_noise_mixtures_cross_the_local_boundary():
    local, _ = is_local(pr_box(2, 0.5))
    assert local
    local, _ = is_local(pr_box(2, 1 / math.sqrt(2)))
    assert not local


def test_pr_correlators():
    box = pr_box(2, 0.7)
    for x, y in itertools.product(range(2), repeat=2):
        expect = 0.7 * (-1 if x and y else 1)
        assert correlator(box, x, y) == pytest.approx(expect, abs=1e-12)


def test_signaling_box_is_caught():
    scn = BellScenario((2, 2), (2, 2))
    table = np.zeros((2, 2, 2, 2))
    for x, y in itertools.product(range(2), repeat=2):
        table[x, y, y, 0] = 1.0  # Alice outputs Bob's setting
    ok, cert = is_nosignaling(Box(scn, table))
    assert not ok
    assert cert


def test_deterministic_and_uniform_boxes_are_local():
    scn = BellScenario((2, 2), (2, 2))
    det = deterministic_box(scn, ((0, 1), (1, 0)))
    local, model = is_local(det)
    assert local
    assert sum(model["weights"].values()) == pytest.approx(1.0, abs=1e-7)
    assert abs(chsh_value(det)) <= 2 + 1e-12
    local, _ = is_local(uniform_box(scn))
    assert local


def test_product_box_composes_independent_parts():
    left = pr_box()
    right = deterministic_box(BellScenario((2,), (2,)), ((1, 0),))
    joint = product_box(left, right)
    assert joint.scenario.settings == (2, 2, 2)
    assert joint.scenario.outcomes == (2, 2, 2)
    for x, y in itertools.product(range(2), repeat=2):
        for a, b in itertools.product(range(2), repeat=2):
            assert joint.prob((x, y, 0), (a, b, 1)) == pytest.approx(left.prob((x, y), (a, b)))
            assert joint.prob((x, y, 1), (a, b, 0)) == pytest.approx(left.prob((x, y), (a, b)))
            assert joint.prob((x, y, 0), (a, b, 0)) == pytest.approx(0.0)


def test_box_json_roundtrip_with_scalar_and_per_party_fields():
    box = pr_box(3, 0.4)
    data = box.to_json_dict()
    assert data["settings"] == [3, 2]
    assert data["outcomes"] == 3
    again = box_from_json_dict(data)
    np.testing.assert_allclose(again.table, box.table, atol=1e-12)
    with pytest.raises(ValueError):
        box_from_json_dict({"parties": 2, "settings": [2, 2, 2], "outcomes": 2, "table": {}})


def test_gyni_local_maximum_is_one_in_sum_form():
    scn = BellScenario((2, 2, 2), (2, 2, 2))
    best = 0.0
    for strat in itertools.product(itertools.product(range(2), repeat=2), repeat=3):
        best = max(best, gyni_value(deterministic_box(scn, strat)))
    assert best == pytest.approx(1.0, abs=1e-12)
    assert gyni_value(uniform_box(scn)) == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(ValueError):
        gyni_value(pr_box())


def test_local_orthogonality_sum_hits_five_quarters():
    assert local_orthogonality_two_pr() == pytest.approx(1.25, abs=1e-12)
    noisy = local_orthogonality_two_pr(pr_box(2, 0.0))
    assert noisy == pytest.approx(5 / 16, abs=1e-12)


def test_van_dam_protocol_with_a_perfect_box():
    res = van_dam_ic(seed=11, trials=2000)
    assert res.success == 1.0
    assert res.mutual_information == pytest.approx(2.0, abs=1e-12)
    assert res.message_bits == 1 and res.trials == 2000


def test_van_dam_protocol_with_noise():
    e = 0.8
    res = van_dam_ic(seed=3, trials=4000, e=e)
    assert abs(res.success - (1 + e) / 2) < 0.03
    assert res.mutual_information < 2.0
    with pytest.raises(ValueError):
        van_dam_ic(seed=1, trials=0)


def test_nested_protocol_closed_form():
    for d in (2, 3, 5):
        for e in (0.0, 0.3, 1 / math.sqrt(2), 0.9, 1.0):
            for levels in (1, 2, 4, 6):
                res = nested_ic(d, e, levels)
                expect = ((d - 1) * e**levels + 1) / d
                assert res.success == pytest.approx(expect, abs=1e-12)
                assert res.ic_violation_condition == (2 * e * e > 1)
    assert nested_ic(2, 1.0, 6).success == 1.0
    for bad in ((1, 0.5, 2), (2, 1.5, 2), (2, 0.5, 0)):
        with pytest.raises(ValueError):
            nested_ic(*bad)


def test_ip_protocol_matches_the_arithmetic_oracle():
    rng = np.random.default_rng(19)
    for _ in range(200):
        n = int(rng.integers(1, 24))
        x = rng.integers(0, 2, size=n).tolist()
        y = rng.integers(0, 2, size=n).tolist()
        res = ip_one_bit_protocol(x, y, seed=int(rng.integers(0, 1 << 30)))
        assert res.bits_communicated == 1
        assert res.result == inner_product_mod2(x, y)


def test_ip_protocol_validation():
    with pytest.raises(ValueError):
        ip_one_bit_protocol([0, 1], [1], seed=0)
    with pytest.raises(ValueError):
        ip_one_bit_protocol([0, 2], [1, 0], seed=0)
