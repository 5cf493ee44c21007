import pytest
from hypothesis import given, strategies as st

from wreathkit.epsets import EPSet, InfiniteSet, TailUndetermined

RANGE = range(-60, 61)


@st.composite
def epsets(draw, unknown=False):
    vals = st.sampled_from([True, False, None]) if unknown else st.booleans()
    lo = draw(st.integers(-8, 8))
    mid = draw(st.lists(vals, max_size=10))
    left = draw(st.lists(vals, min_size=1, max_size=4))
    right = draw(st.lists(vals, min_size=1, max_size=4))
    return EPSet(lo, lo + len(mid), mid, left, right)


def table(s):
    return [s.value(n) for n in RANGE]


def test_constructors():
    assert EPSet.empty().is_empty()
    assert EPSet.ray_up(0).in_range(-3, 3) == [0, 1, 2]
    assert EPSet.ray_down(0).in_range(-3, 3) == [-3, -2, -1]
    assert EPSet.finite([3, -1]).elements() == [-1, 3]
    assert EPSet.periodic([1], 3).in_range(0, 9) == [1, 4, 7]
    assert (EPSet.full() - EPSet.ray_up(0)) == EPSet.ray_down(0)


def test_counts():
    N = EPSet.ray_up(0)
    assert (N ^ N.shift(1)).count() == 1
    assert (N ^ N.shift(5)).count() == 5
    with pytest.raises(InfiniteSet):
        N.count()
    with pytest.raises(TailUndetermined):
        EPSet.unknown_from(4).count()
    with pytest.raises(TailUndetermined):
        _ = 7 in EPSet.unknown_from(4)
    assert 2 not in EPSet.unknown_from(4)


@given(epsets())
def test_normal_form_is_canonical(s):
    # the same set spelled with a wide window and tails of period 12
    rebuilt = EPSet(-70, 71, [s.value(n) for n in range(-70, 71)],
                    [s.left[r % len(s.left)] for r in range(12)],
                    [s.right[r % len(s.right)] for r in range(12)])
    assert rebuilt == s and hash(rebuilt) == hash(s)


@given(epsets(unknown=True), epsets(unknown=True))
def test_boolean_operations_pointwise(a, b):
    def kleene_and(x, y):
        return False if x is False or y is False else (None if x is None or y is None else True)

    def kleene_or(x, y):
        return True if x is True or y is True else (None if x is None or y is None else False)

    def kleene_not(x):
        return None if x is None else not x

    ta, tb = table(a), table(b)
    assert table(a & b) == [kleene_and(x, y) for x, y in zip(ta, tb)]
    assert table(a | b) == [kleene_or(x, y) for x, y in zip(ta, tb)]
    assert table(a.complement()) == [kleene_not(x) for x in ta]
    assert table(a - b) == [kleene_and(x, kleene_not(y)) for x, y in zip(ta, tb)]


@given(epsets(unknown=True), st.integers(-20, 20))
def test_shift_and_reflect(a, k):
    s, r = a.shift(k), a.reflect()
    for n in range(-40, 41):
        assert s.value(n) == a.value(n - k)
        assert r.value(n) == a.value(-n)


@given(epsets(), epsets())
def test_finite_symmetric_difference_count(a, b):
    d = a ^ b
    if d.is_finite():
        assert d.count() == sum(1 for n in range(-200, 201) if a.value(n) != b.value(n))
