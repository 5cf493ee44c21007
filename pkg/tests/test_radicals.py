import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from wreathkit.acceptance import wy_var2_class_oracle
from wreathkit.groups import cyclic, perm_id, subgroup, symmetric, whole
from wreathkit.radicals import (IntSubgroup, MissingOracle, conj_closure, finite_instance, grigorchuk_instance,
                                membership, predict_B, predict_W, predict_W_partitioned, radical_conditions_trivial,
                                replay_escape, shift_instance, wy_var2_instance)
from wreathkit.walls import cyclic_action

WY = wy_var2_instance()
WYW = WY.wreath()


def test_wy_var2_predictions():
    for d in (predict_W(WY), predict_B(WY)):
        assert d.lamp_part.is_whole()
        assert d.finite_orbits and not d.infinite_orbits
        assert d.top_part.is_trivial()
        assert not d.is_trivial()


def test_membership():
    dW = predict_W(WY)
    f = WYW.make({(3, 1): 1, (7, 4): 4}, 0)
    assert membership(f, dW, WYW.hset)
    assert not membership(WYW.make({(3, 1): 1}, 2), dW, WYW.hset)
    assert membership(WYW.identity(), dW, WYW.hset)


def test_infinite_orbit_with_core_free_A_is_trivial():
    si = shift_instance()
    assert predict_W(si).is_trivial() and radical_conditions_trivial(si)


def test_A_equal_B_keeps_the_lamps():
    S3 = symmetric(3)
    inst = shift_instance(S3, whole(S3))
    d = predict_W(inst)
    assert d.core_part.is_whole() and not d.is_trivial()
    W = inst.wreath()
    assert membership(W.make({0: 3, 5: 2}, 0), d, W.hset)
    assert not membership(W.top(1), d, W.hset)


def test_core_of_normal_A():
    S3 = symmetric(3)
    A3 = subgroup(S3, {0, perm_id(S3, (1, 2, 0)), perm_id(S3, (2, 0, 1))})
    inst = shift_instance(S3, A3)
    assert predict_W(inst).core_part == A3
    assert not radical_conditions_trivial(inst)


def test_partitioned_power_meets_the_cores():
    S3 = symmetric(3)
    t1 = subgroup(S3, {0, perm_id(S3, (1, 0, 2))})
    A3 = subgroup(S3, {0, perm_id(S3, (1, 2, 0)), perm_id(S3, (2, 0, 1))})
    d = predict_W_partitioned(S3, [A3, whole(S3)], IntSubgroup(0))
    assert d.core_part == A3
    assert predict_W_partitioned(S3, [A3, t1], IntSubgroup(0)).is_trivial()


def test_missing_oracle():
    inst = grigorchuk_instance(level=8, radius=3)
    assert predict_W(inst).is_trivial()
    with pytest.raises(MissingOracle):
        predict_B(inst)


def test_int_subgroups():
    assert 6 in IntSubgroup(3) and 4 not in IntSubgroup(3)
    assert (IntSubgroup(2) & IntSubgroup(3)) == IntSubgroup(6)
    assert (IntSubgroup(0) & IntSubgroup(1)).is_trivial()
    assert str(IntSubgroup(1)) == "Z"


def test_pure_lamp_class_is_bounded():
    f = WYW.make({(2, 1): 1}, 0)
    v = conj_closure(f, WYW)
    assert v.kind == "Bounded"
    assert {WYW.canonical(u) for u in v.orbit} == wy_var2_class_oracle(WYW, f)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_closure_is_sound_against_the_prediction(seed):
    rng = random.Random(seed)
    dW = predict_W(WY)
    pts = WYW.hset.points()
    lamp = {x: rng.randrange(1, 6) for x in rng.sample(pts, rng.randint(1, 2))}
    v = conj_closure(WYW.make(lamp, 0), WYW)
    assert v.kind == "Bounded"
    assert all(membership(u, dW, WYW.hset) for u in v.orbit)
    g = WYW.make(lamp, rng.choice([-3, -1, 1, 2, 5]))
    v = conj_closure(g, WYW)
    assert v.kind == "Escaped" and replay_escape(WYW, g, v.witness)
    assert not membership(g, dW, WYW.hset)


def test_escape_on_an_infinite_orbit():
    si = shift_instance()
    W = si.wreath()
    g = W.make({0: perm_id(W.B, (1, 2, 0))}, 0)
    v = conj_closure(g, W)
    assert v.kind == "Escaped" and v.note == "translate"
    assert replay_escape(W, g, v.witness)
    bad = dict(v.witness, points=[v.witness["points"][0]] * 2)
    assert not replay_escape(W, g, bad)


def test_verdict_json():
    g = WYW.make({}, 1)
    v = conj_closure(g, WYW)
    body = json.loads(v.to_json(WYW))
    assert body["kind"] == "Escaped"
    pts = [tuple(x) for x in body["witness"]["points"]]
    assert len(pts) == len(set(pts)) >= 2
    assert json.loads(conj_closure(WYW.make({(5, 0): 1}, 0), WYW).to_json(WYW))["orbit"]


def test_budget_exhaustion():
    v = conj_closure(WYW.make({(5, 1): 1, (8, 2): 2}, 0), WYW, budget=3)
    assert v.kind == "BudgetExhausted"


def test_finite_instance_is_whole():
    S3 = symmetric(3)
    A = subgroup(S3, {0, perm_id(S3, (1, 0, 2))})
    inst = finite_instance(S3, A, cyclic_action(4))
    W = inst.wreath()
    d = predict_W(inst)
    rng = random.Random(0)
    for _ in range(10):
        g = W.random_element(rng, 3)
        assert membership(g, d, W.hset)
        assert conj_closure(g, W).kind == "Bounded"


def test_finite_instance_with_trivial_lamps():
    inst = finite_instance(cyclic(1), whole(cyclic(1)), cyclic_action(3))
    assert predict_W(inst).lamp_part.is_trivial()
