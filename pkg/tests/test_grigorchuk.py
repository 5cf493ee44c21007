import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wreathkit import grigorchuk as gg
from wreathkit.acceptance import _oracle_generator_perms, naive_grigorchuk_balls

words = st.text(alphabet="abcd", max_size=12)


def oracle_perm(word: str, level: int) -> np.ndarray:
    gens = _oracle_generator_perms(level)
    p = np.arange(1 << level)
    for x in word:           # p := p o x, so the rightmost letter acts first
        p = p[gens[x]]
    return p


def test_act_examples():
    assert gg.act("", "0110") == "0110"
    for suffix in ("", "0", "1", "01", "110"):
        assert gg.act("a", "0" + suffix) == "1" + suffix
        assert gg.act("b", "0" + suffix) == "0" + gg.act("a", suffix)


def test_act_matches_oracle_at_level_3():
    for x in "abcd":
        p = oracle_perm(x, 3)
        for v in range(8):
            bits = format(v, "03b")
            assert gg.act(x, bits) == format(int(p[v]), "03b")


@settings(max_examples=300)
@given(words, words, st.integers(1, 10), st.data())
def test_act_is_a_homomorphism(u, v, level, data):
    x = data.draw(st.text(alphabet="01", min_size=level, max_size=level))
    assert gg.act(u + v, x) == gg.act(u, gg.act(v, x))


def test_identities():
    assert gg.is_identity("")
    for w in ("aa", "bb", "cc", "dd", "bcd"):
        assert gg.is_identity(w)
    assert not gg.is_identity("ab")
    assert gg.act("ab", "00") != "00"


def test_ab_has_order_16():
    p = oracle_perm("ab", 6)
    q, order = p.copy(), 1
    while not np.array_equal(q, np.arange(p.size)):
        q, order = q[p], order + 1
    assert order == 16
    assert gg.is_identity("ab" * 16) and not gg.is_identity("ab" * 8)


def test_word_problem_agrees_with_level_action():
    """Reduced words up to length 10 and all raw words up to length 6."""
    candidates = itertools.chain(gg.reduced_words(10), ("".join(w) for n in range(7)
                                                        for w in itertools.product("abcd", repeat=n)))
    for w in candidates:
        level = min(len(w) + 2, 12)
        trivial_on_level = bool(np.array_equal(oracle_perm(w, level), np.arange(1 << level)))
        assert gg.is_identity(w) == trivial_on_level, w


@settings(max_examples=300)
@given(words, words)
def test_portrait_is_a_complete_invariant(u, v):
    assert (gg.portrait(u) == gg.portrait(v)) == gg.is_identity(u + gg.inverse(v))


@settings(max_examples=200)
@given(words)
def test_reduce_preserves_the_element(w):
    r = gg.reduce(w)
    assert len(r) <= len(w)
    assert gg.is_identity(w + gg.inverse(r))


def test_ray_parse():
    assert gg.Ray.parse("1^inf").head(4) == "1111"
    r = gg.Ray.parse("(01)^inf prefix=110")
    assert r.head(7) == "1100101"
    assert str(r) == "(01)^inf prefix=110"
    with pytest.raises(ValueError):
        gg.Ray.parse("banana")


def test_schreier_ball_radius_zero():
    ball = gg.schreier_ball("1^inf", 0)
    assert len(ball.vertices) == 1
    assert all(u == v == 0 for u, v, _ in ball.edges)


def test_schreier_ball_matches_act_oracle():
    level = 16
    root = "1" * level
    frontier, seen = {root}, {root}
    for _ in range(2):
        frontier = {gg.act(x, p) for p in frontier for x in "abcd"} - seen
        seen |= frontier
    ball = gg.schreier_ball("1^inf", 2, level)
    assert set(ball.vertices) == seen
    assert all(ball.degree(i) <= 4 for i in range(len(ball.vertices)))


def test_level_exhaustion_is_reported():
    with pytest.raises(gg.LevelExhausted):
        gg.schreier_ball("0^inf", 6, level=2)


def test_end_count_is_reported():
    ball = gg.schreier_ball("1^inf", 16, 20)
    assert gg.end_count(ball) >= 1


def test_naive_ball_oracle_small_radii():
    assert naive_grigorchuk_balls(3, level=8) == [1, 5, 11, 23]
