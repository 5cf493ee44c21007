import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wreathkit.groups import cyclic, perm_id, subgroup, symmetric
from wreathkit.walls import (AsymmetricInput, D_mu, Walling, WallingError, cnd_check, cut_weight, cuts,
                             cyclic_action, d_mu, dihedral_action, dirac_walling, distance_matrix, l1_distance,
                             l1_embed, orbit_walling, random_walling)
from wreathkit.wreath import WreathProduct


def test_cuts():
    F = 0b011
    assert not cuts(0b111, F)
    assert cuts(0b001, F)           # ground {1,2,3}: M={1}, F={1,2}
    assert not any(cuts(M, 0b010) for M in range(8))


def test_d_mu_unit_wall():
    w = Walling([1, 2, 3], [(0b001, 1)])
    assert d_mu(w, 1, 2) == 1 and d_mu(w, 2, 3) == 0 and d_mu(w, 2, 2) == 0


def test_doubling_weights():
    rng = random.Random(0)
    w = random_walling(rng, 6, 8)
    D, D2 = distance_matrix(w), distance_matrix(w.scaled(2))
    assert all(D2[i][j] == 2 * D[i][j] for i in range(6) for j in range(6))


def test_invalid_walls():
    with pytest.raises(WallingError):
        Walling([0, 1, 2], [(0b111, 1)])
    with pytest.raises(WallingError):
        Walling([0, 1, 2], [(0, 1)])
    with pytest.raises(WallingError):
        Walling([0, 1, 2], [(1, -1)])


def test_text_format():
    w = Walling.from_text("ground 3\n1 1\n1/2 0b110\n")
    assert w.walls == [(1, Fraction(1)), (6, Fraction(1, 2))]
    assert Walling.from_text(w.to_text()).walls == w.walls
    with pytest.raises(WallingError):
        Walling.from_text("ground 3\n1 7\n")


def test_l1_embed_examples():
    w = dirac_walling(3, 0b001)
    assert l1_embed(w) == {0: (1,), 1: (0,), 2: (0,)}
    empty = Walling(list(range(4)), [])
    assert all(v == () for v in l1_embed(empty).values())
    assert all(x == 0 for row in distance_matrix(empty) for x in row)


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(0, 10))
def test_l1_embedding_exact(seed, n, k):
    w = random_walling(random.Random(seed), max(n, 2), k)
    emb, D = l1_embed(w), distance_matrix(w)
    assert all(l1_distance(emb[x], emb[y]) == D[x][y] for x in w.ground for y in w.ground)


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1), st.integers(2, 8), st.integers(0, 12))
def test_pseudo_metric_and_cnd(seed, n, k):
    w = random_walling(random.Random(seed), n, k)
    D = distance_matrix(w)
    r = range(n)
    assert all(D[i][i] == 0 and D[i][j] == D[j][i] for i in r for j in r)
    assert all(D[i][k_] <= D[i][j] + D[j][k_] for i in r for j in r for k_ in r)
    assert cnd_check(D, 1e-9)


@settings(max_examples=60)
@given(st.integers(0, 2**32 - 1), st.integers(2, 7), st.integers(0, 10))
def test_monotone_cut_bound(seed, n, k):
    w = random_walling(random.Random(seed), n, k)
    D = distance_matrix(w)
    for F in range(1, 1 << n):
        mem = [i for i in range(n) if F >> i & 1]
        assert cut_weight(w, F) >= max(D[i][j] for i in mem for j in mem)


def test_cnd_examples():
    assert cnd_check([[0] * 3 for _ in range(3)])
    pts = np.arange(8.0)
    sq = (pts[:, None] - pts[None, :]) ** 2
    assert cnd_check(sq)
    neg = [[0, -1, -2], [-1, 0, -1], [-2, -1, 0]]
    assert not cnd_check(neg)
    with pytest.raises(AsymmetricInput):
        cnd_check([[0, 1], [2, 0]])


def test_D_mu_examples():
    W = WreathProduct(cyclic(2), cyclic_action(6))
    w = Walling(list(range(6)), [(0b000011, 1)])
    u = W.make({1: 1}, 3)
    assert D_mu(w, u, u, W) == 0
    # Supp(f) + {L, hL} = {1, 0, 3} is split by M = {0, 1}
    assert D_mu(w, W.identity(), u, W) == 1


def test_D_mu_uses_supp_A():
    S3 = symmetric(3)
    A = subgroup(S3, {0, perm_id(S3, (1, 0, 2))})
    W = WreathProduct(S3, cyclic_action(4), A)
    w = Walling(list(range(4)), [(0b0100, 1)])
    inside_A = W.make({2: perm_id(S3, (1, 0, 2))}, 0)
    outside_A = W.make({2: perm_id(S3, (1, 2, 0))}, 0)
    assert D_mu(w, W.identity(), inside_A, W) == 0
    assert D_mu(w, W.identity(), outside_A, W) == 1


@settings(max_examples=100)
@given(st.integers(0, 2**32 - 1))
def test_D_mu_left_invariance(seed):
    rng = random.Random(seed)
    action = dihedral_action(5)
    w = orbit_walling(action, [(0b00011, 1), (0b00101, Fraction(1, 3))])
    W = WreathProduct(cyclic(3), action)
    g, u1, u2 = (W.random_element(rng, 3) for _ in range(3))
    assert D_mu(w, W.compose(g, u1), W.compose(g, u2), W) == D_mu(w, u1, u2, W)


def test_orbit_walling_is_invariant():
    action = cyclic_action(6)
    w = orbit_walling(action, [(0b000111, 1)])
    for h in action.H.elements():
        perm = {x: action.act(h, x) for x in w.ground}
        assert w.permuted(perm).same_measure(w)
