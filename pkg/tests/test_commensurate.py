import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from wreathkit.commensurate import (CommAction, CommensurationViolated, PWPair, default_ell1, envelope_two_sided,
                                    f_q_laurent, hr_to_laurent, natural_action, nf_set, nf_set_direct, prufer_window,
                                    pw_act, pw_length, pw_length_direct, random_hr_pair, same_series, second_length,
                                    sublevel_set, symmetrize, uniform_commensuration_check, window_growth)
from wreathkit.epsets import EPSet
from wreathkit.groups import cyclic
from wreathkit.wreath import ShiftLine, WreathProduct

W = WreathProduct(cyclic(2), ShiftLine(-64, 64))
ACT = natural_action()
SYM = symmetrize(ACT)


def lamp_elem(rng, support=4, top=None):
    pts = rng.sample(range(-12, 13), rng.randint(0, support))
    return W.make({x: 1 for x in pts}, rng.randint(-6, 6) if top is None else top)


def test_ell0():
    assert ACT.ell0(0) == 0 and ACT.ell0(1) == 1
    assert all(ACT.ell0(k) == abs(k) for k in range(-9, 10))


def test_W_set():
    for y in range(-5, 6):
        Wy = ACT.W_set((y, 0))
        assert Wy.in_range(-20, 20) == list(range(-20, y + 1))
    empty = CommAction((EPSet.empty(),))
    assert empty.W_set((3, 0)).is_empty()
    everything = CommAction((EPSet.full(),))
    assert everything.W_set((3, 0)) == EPSet.full()


def test_commensuration_is_enforced():
    with pytest.raises(CommensurationViolated):
        CommAction((EPSet.periodic([0], 2),))


def test_pw_act_examples():
    z = PWPair((2, 0))
    assert pw_act(W.identity(), z, ACT, W) == z
    # 0 lies in W_2 = (-oo, 2], so the lamp at 0 is invisible from y = 2
    assert pw_act(W.delta(0, 1), z, ACT, W) == z
    # but visible from y = -3
    assert pw_act(W.delta(0, 1), PWPair((-3, 0)), ACT, W) == PWPair((-3, 0), ((0, 1),))


@settings(max_examples=300)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_pw_act_is_an_action(seed, sym):
    rng = random.Random(seed)
    act = SYM if sym else ACT
    g1, g2 = lamp_elem(rng), lamp_elem(rng)
    y = (rng.randint(-20, 20), rng.randrange(act.layers))
    Wy = act.W_set(y)
    z = PWPair(y, tuple(sorted((x, 1) for x in rng.sample(range(-12, 13), 3) if x not in Wy)))
    assert pw_act(W.compose(g1, g2), z, act, W) == pw_act(g1, pw_act(g2, z, act, W), act, W)
    h = W.top(rng.randint(-5, 5))
    f = W.make(lamp_elem(rng).as_dict(), 0)
    lhs = pw_act(h, pw_act(f, pw_act(W.inverse(h), z, act, W), act, W), act, W)
    assert lhs == pw_act(W.conj(h, f), z, act, W)


def test_pw_length_examples():
    assert pw_length(W.identity(), ACT, W) == 0
    assert pw_length(W.top(1), ACT, W) == 1
    assert nf_set(W.delta(1, 1), ACT, W) == [(0, 0)]


@settings(max_examples=150)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_pw_length_matches_direct_count(seed, sym):
    rng = random.Random(seed)
    act = SYM if sym else ACT
    g = lamp_elem(rng)
    assert pw_length(g, act, W) == pw_length_direct(g, act, W)
    assert pw_length(g, act, W) >= act.ell0(g.top)


@settings(max_examples=150)
@given(st.integers(0, 2**32 - 1))
def test_nf_set_identity(seed):
    rng = random.Random(seed)
    f = lamp_elem(rng, top=0)
    for act in (ACT, SYM):
        assert nf_set(f, act, W) == nf_set_direct(f, act, W)


@settings(max_examples=150)
@given(st.integers(0, 2**32 - 1))
def test_half_length_bound_after_symmetrizing(seed):
    rng = random.Random(seed)
    f = lamp_elem(rng, top=0)
    L = pw_length(f, SYM, W)
    assert all(2 * L >= SYM.ell0(x) for x in W.supp_A(f))


def test_symmetrize():
    assert ACT.halves(1) == (1, 0)
    assert SYM.halves(1) == (1, 1)
    for h in range(-6, 7):
        a, b = SYM.halves(h)
        assert a == b and SYM.ell0(h) == 2 * ACT.ell0(h)
    twice = symmetrize(SYM)
    assert twice.halves(3)[0] == twice.halves(3)[1]


def test_second_length():
    ell1 = [0, 1]
    assert second_length(W.identity(), ell1) == 0
    f = W.make({0: 1, 5: 1}, 0)
    assert second_length(f, ell1) == 2
    for h in range(-3, 4):
        assert second_length(W.compose(f, W.top(h)), ell1) == 2
    assert default_ell1(W.B, W.A) == [0, 2]


def brute_sublevel(act, k, R):
    ell1 = default_ell1(W.B, W.A)
    out = set()
    for h in range(-R, R + 1):
        for size in range(k // 2 + 1):
            for S in itertools.combinations(range(-R, R + 1), size):
                g = W.make({x: 1 for x in S}, h)
                if pw_length(g, act, W) + second_length(g, ell1) <= k:
                    out.add(W.canonical(g))
    return out


@pytest.mark.parametrize("k", range(5))
def test_sublevel_sets_match_exhaustive_search(k):
    s = sublevel_set(SYM, W, k, search_radius=10)
    assert {W.canonical(g) for g in s.elements} == brute_sublevel(SYM, k, 10)


def test_sublevel_sets_are_finite_and_boxed():
    sizes = []
    for k in range(9):
        s = sublevel_set(SYM, W, k)
        assert not s.touches_search_boundary
        assert s.max_shift <= k
        lo, hi = s.support_hull
        assert -k <= lo and hi <= k
        sizes.append(len(s.elements))
    assert sizes == [1, 1, 4, 4, 12, 12, 30, 30, 69]


def test_half_restricted_identity_and_laurent_square():
    G = f_q_laurent(2)
    e = G.identity()
    assert G.compose(e, e) == e
    u = G.make({(0, 0): 1}, 1)
    uu = G.compose(u, u)
    assert uu == G.make({(0, 0): 1, (1, 0): 1}, 2)
    assert same_series(hr_to_laurent(uu, 2), hr_to_laurent(u, 2).compose(hr_to_laurent(u, 2)))


@settings(max_examples=200)
@given(st.integers(0, 2**32 - 1))
def test_half_restricted_matches_laurent_series(seed):
    rng = random.Random(seed)
    G = f_q_laurent(2)
    u, v = random_hr_pair(rng, G, 2)
    assert same_series(hr_to_laurent(G.compose(u, v), 2), hr_to_laurent(u, 2).compose(hr_to_laurent(v, 2)))


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1))
def test_half_restricted_group_axioms(seed):
    rng = random.Random(seed)
    G = f_q_laurent(3)
    (u, v), (w, _) = random_hr_pair(rng, G, 3), random_hr_pair(rng, G, 3)
    assert G.canonical(G.compose(G.compose(u, v), w)) == G.canonical(G.compose(u, G.compose(v, w)))
    known = G.make(dict(u.lamp), u.top)
    assert G.compose(known, G.inverse(known)) == G.identity()


def test_envelope_lamplighter_relations():
    E = envelope_two_sided(2)
    a = E.make({(0, 0): 1, (0, 1): 1})
    t = E.make({}, 1)
    ti = E.inverse(t)
    assert E.compose(a, a) == E.identity()
    for k in range(1, 6):
        conj = E.compose(E.compose(t if k > 0 else ti, a), ti)
        for _ in range(k - 1):
            conj = E.compose(E.compose(t, conj), ti)
        assert E.compose(a, conj) == E.compose(conj, a)
    assert E.compose(t, a) != E.compose(a, t)


def test_uniform_commensuration():
    N = EPSet.ray_up(0)
    inv = uniform_commensuration_check([(EPSet.full(),)], [1, -1])
    assert inv.sums == {1: 0, -1: 0} and inv.non_invariant == []
    rep = uniform_commensuration_check([(N,), (N.complement(),)], [1])
    assert rep.sums[1] == 2 and rep.non_invariant == [0, 1]
    single = uniform_commensuration_check([(N,)], [1, 2])
    assert single.sums == {1: 1, 2: 2}


def test_prufer_family_grows_with_the_window():
    rep = window_growth(prufer_window, [2, 3, 4, 5, 6])
    # every one of the J + 1 order blocks moves, so the count climbs with J
    assert rep.window_growing and rep.history == [3, 4, 5, 6, 7]
    assert rep.sums["2^-1"] == 4
