"""
The first Grigorchuk group
==========================

Words in a, b, c, d act on binary strings.  Reduction plus the portrait
solves the word problem, and the ball sizes grow slower than any
exponential fit would like.
"""
from wreathkit import grigorchuk as gg
from wreathkit.growth import ball_sizes, growth_report

# %% the action on the tree
for w in ("a", "b", "ab", "dacab"):
    print(w, [gg.act(w, v) for v in ("000", "100", "011")])

# %% relations
for w in ("aa", "bb", "bcd", "adad", "abababababababab"):
    print(f"{w:>16}: {'identity' if gg.is_identity(w) else 'nontrivial'}")

# %% ball sizes and fits
table = ball_sizes(list(gg.LETTERS), lambda u, s: gg.reduce(u + s), gg.portrait, 9, "")
print(table.sizes)
rep = growth_report(table)
print(f"poly residual {rep.poly_residual:.4f}   exp residual {rep.exp_residual:.4f}")

# %% a Schreier ball around the ray 1^oo
ball = gg.schreier_ball("1^inf", 6, level=14)
print(len(ball.vertices), "vertices within distance 6;", "ends seen:", gg.end_count(ball))
