"""
Radicals and wreathed Coxeter groups
====================================

Predicted radicals against brute-force conjugacy closures, then the
permutation model of the Coxeter group on Z with entries 3 and 2.
"""
from wreathkit import coxeter as cx
from wreathkit.radicals import conj_closure, membership, predict_W, shift_instance, wy_var2_instance

# %% S3 over one cycle of each length up to 8
inst = wy_var2_instance()
W = inst.wreath()
d = predict_W(inst)
print(d.summary())
for g in (W.make({(3, 1): 1}, 0), W.make({(3, 1): 1}, 2)):
    v = conj_closure(g, W)
    print(v.kind, len(v.orbit) or v.witness["points"], "member:", membership(g, d, W.hset))

# %% a single infinite orbit kills the radical
print("trivial over Z:", predict_W(shift_instance()).is_trivial())

# %% rank two and the permutation model
print({m: cx.dihedral_order(m) for m in (2, 3, 4, 6, cx.INF)})
N = cx.neumann_matrix()
r = cx.relator(0, 1, 0, 0, N)
print(r.tokens, "->", cx.neumann_model(r).is_identity())
print("order of wtwT:", cx.model_order("wtwT"))
print("probes:", [cx.independence_probe(p, N) for p in range(1, 6)])
print(cx.compact_presented(N, raise_unstable=False))
