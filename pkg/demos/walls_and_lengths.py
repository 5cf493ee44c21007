"""
Walls, cut metrics and lengths from commensurated sets
======================================================

A finite walling gives a pseudo-metric that embeds in L1.  On Z with the
half-line N the commensurating action gives a proper length on C2 wr Z.
"""
import random

import numpy as np

from wreathkit.commensurate import natural_action, pw_length, sublevel_set, symmetrize
from wreathkit.groups import cyclic
from wreathkit.walls import cnd_check, distance_matrix, l1_embed, random_walling
from wreathkit.wreath import ShiftLine, WreathProduct

# %% a random walling on six points
w = random_walling(random.Random(1), 6, 8)
D = distance_matrix(w)
print(np.array([[float(x) for x in row] for row in D]))
emb = l1_embed(w)
print(np.array([[float(c) for c in emb[x]] for x in w.ground]))
print("conditionally negative definite:", cnd_check(D))

# %% lengths on the lamplighter
W = WreathProduct(cyclic(2), ShiftLine(-64, 64))
act = symmetrize(natural_action())
for g in (W.top(3), W.delta(0, 1), W.make({-2: 1, 4: 1}, 1)):
    print(g, "->", pw_length(g, act, W))

# %% sublevel sets stay finite
print([len(sublevel_set(act, W, k).elements) for k in range(9)])
