"""
Lamplighters: growth and Cayley balls
=====================================

Balls in C2 wr Z grow exponentially.  C4 wr Z and (C2 x C2) wr Z have
isomorphic balls with respect to their standard generators, even though
the groups are not isomorphic.
"""
from wreathkit.cayley import cayley_ball, graph_isomorphic, verify_isomorphism
from wreathkit.groups import cyclic, direct_product
from wreathkit.growth import ball_sizes, growth_report
from wreathkit.wreath import ShiftLine, WreathProduct

# %% ball sizes of the lamplighter
L = WreathProduct(cyclic(2), ShiftLine(-20, 20))
table = ball_sizes(L.standard_generators(), L.compose, L.canonical, 10, L.identity())
print(table.to_csv())

rep = growth_report(table)
print(f"exp base ~ {rep.exp_base:.3f}   residuals: poly {rep.poly_residual:.3f}, exp {rep.exp_residual:.3f}")

# %% two lamp groups of order four
W1 = WreathProduct(cyclic(4), ShiftLine(-8, 8))
W2 = WreathProduct(direct_product(cyclic(2), cyclic(2)), ShiftLine(-8, 8))
for r in (1, 2, 3, 4):
    g1 = cayley_ball(W1.standard_generators(), W1.compose, W1.canonical, r, W1.identity())
    g2 = cayley_ball(W2.standard_generators(), W2.compose, W2.canonical, r, W2.identity())
    ok, m = graph_isomorphic(g1, g2, rooted=True)
    print(f"r={r}: {g1.n} vertices, {len(g1.edges)} edges, isomorphic={ok}, "
          f"verified={ok and verify_isomorphism(g1, g2, m, rooted=True)}")
