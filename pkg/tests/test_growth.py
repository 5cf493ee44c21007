import pytest
from hypothesis import given, settings, strategies as st

from wreathkit.groups import cyclic, dihedral, generated_subgroup, symmetric
from wreathkit.growth import MemoryBudgetExceeded, TableTooShort, ball_sizes, growth_report
from wreathkit.wreath import ShiftLine, WreathProduct


def line_table(r):
    return ball_sizes([1, -1], lambda a, b: a + b, lambda a: a, r, 0)


def free_reduce(w):
    out = []
    for c in w:
        if out and out[-1] == c.swapcase():
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def free_table(r):
    return ball_sizes(list("aAbB"), lambda w, s: free_reduce(w + s), lambda w: w, r, "")


LAMP = WreathProduct(cyclic(2), ShiftLine(-16, 16))


def lamp_table(r, W=LAMP):
    return ball_sizes(W.standard_generators(), W.compose, W.canonical, r, W.identity())


def naive_lamp_balls(r):
    """Evaluate every word of length <= r as (frozenset of lit lamps, position)."""
    def step(state, s):
        lamps, pos = state
        if s == "a":
            return lamps ^ {pos}, pos
        return lamps, pos + (1 if s == "t" else -1)

    seen = {(frozenset(), 0)}
    layer = [(frozenset(), 0)]
    sizes = [1]
    for _ in range(r):
        layer = [step(st_, s) for st_ in layer for s in "atT"]
        seen.update(layer)
        sizes.append(len(seen))
    return sizes


def test_line():
    t = line_table(6)
    assert t.sizes == [1, 3, 5, 7, 9, 11, 13]
    rep = growth_report(t)
    assert rep.poly_degree == pytest.approx(1.0, abs=1e-9) and rep.poly_residual < 1e-9


def test_lamplighter_small_balls():
    t = lamp_table(2)
    assert t.sizes[1] == 4 and t.sizes[2] == 10


def test_lamplighter_matches_naive_oracle():
    assert lamp_table(8).sizes == naive_lamp_balls(8)


def test_sizes_are_cumulative_spheres():
    t = lamp_table(6)
    assert t.sizes[0] == 1
    assert all(t.sizes[n] == t.sizes[n - 1] + t.sphere_sizes[n] for n in range(1, 7))


def test_free_group_fit():
    t = free_table(7)
    assert t.sizes == [2 * 3**n - 1 for n in range(8)]
    assert growth_report(t).exp_base == pytest.approx(3.0, rel=0.1)


def test_lamplighter_prefers_exponential_fit():
    rep = growth_report(lamp_table(10, WreathProduct(cyclic(2), ShiftLine(-16, 16))))
    assert rep.exp_residual < rep.poly_residual and rep.better_fit == "exponential"


def test_table_too_short():
    with pytest.raises(TableTooShort):
        growth_report(line_table(3))


def test_budget():
    with pytest.raises(MemoryBudgetExceeded):
        ball_sizes(LAMP.standard_generators(), LAMP.compose, LAMP.canonical, 8, LAMP.identity(), budget_bytes=10_000)


def test_csv():
    text = line_table(2).to_csv()
    assert text.splitlines() == ["radius,ball,sphere", "0,1,1", "1,3,2", "2,5,2"]


@pytest.mark.parametrize("G", [cyclic(5), dihedral(4), symmetric(3)], ids=lambda G: G.name)
def test_finite_groups_saturate(G):
    gens = [g for g in G.elements() if g][:2]
    gens = sorted(set(gens) | {G.inv(g) for g in gens})
    t = ball_sizes(gens, G.mul, lambda g: g, 12, 0)
    assert max(t.sizes) <= G.order
    assert t.sizes[-1] == len(generated_subgroup(G, gens))


@settings(max_examples=30)
@given(st.randoms(use_true_random=False))
def test_generator_order_invariance_and_domination(rnd):
    G = symmetric(4)
    pool = [g for g in G.elements() if g]
    gens = rnd.sample(pool, 2)
    gens = sorted(set(gens) | {G.inv(g) for g in gens})
    shuffled = gens[:]
    rnd.shuffle(shuffled)
    a = ball_sizes(gens, G.mul, lambda g: g, 6, 0)
    b = ball_sizes(shuffled, G.mul, lambda g: g, 6, 0)
    assert a.sizes == b.sizes
    extra = rnd.choice(pool)
    more = sorted(set(gens) | {extra, G.inv(extra)})
    c = ball_sizes(more, G.mul, lambda g: g, 6, 0)
    assert all(x <= y for x, y in zip(a.sizes, c.sizes))
    assert max(c.sizes) <= G.order
