import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wreathkit.groups import (GroupError, compose, conjugacy_class, conjugacy_classes, core, cyclic, dihedral,
                              direct_product, is_normal, normal_closure, normal_subgroups, perm_id,
                              permutations_of, subgroup, symmetric, trivial, whole)

GROUPS = [cyclic(1), cyclic(4), cyclic(6), dihedral(3), dihedral(4), symmetric(3), symmetric(4),
          direct_product(cyclic(2), cyclic(2)), direct_product(cyclic(2), symmetric(3))]


def s3_elem(S3, *cycle_pairs):
    """Permutation of {0,1,2} given by transpositions/cycles in 1-based notation, rightmost applied first."""
    p = list(range(3))
    for cyc in reversed(cycle_pairs):
        q = list(range(3))
        pts = [c - 1 for c in cyc]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            q[a] = b
        p = [q[i] for i in p]
    return perm_id(S3, tuple(p))


def test_identity_and_cyclic_arithmetic():
    C4 = cyclic(4)
    assert all(compose(0, g, C4) == g for g in C4.elements())
    assert compose(1, 3, C4) == 0


def test_s3_product_matches_permutation_oracle():
    S3 = symmetric(3)
    perms = permutations_of(S3)
    t12, t23 = s3_elem(S3, (1, 2)), s3_elem(S3, (2, 3))
    # brute-force composition: apply (23) first, then (12)
    direct = tuple(perms[t12][perms[t23][i]] for i in range(3))
    assert perms[compose(t12, t23, S3)] == direct
    assert S3.label(compose(t12, t23, S3)) == "(123)"


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.name)
def test_group_law_exhaustive(G):
    els = list(G.elements())
    for g, h, k in itertools.product(els, repeat=3):
        assert G.mul(G.mul(g, h), k) == G.mul(g, G.mul(h, k))
    for g in els:
        assert G.mul(g, G.inv(g)) == 0 and G.mul(0, g) == g == G.mul(g, 0)


@given(st.integers(0, 23), st.integers(0, 23), st.integers(0, 23))
def test_associativity_s4_fuzz(a, b, c):
    S4 = GROUPS[6]
    assert S4.mul(S4.mul(a, b), c) == S4.mul(a, S4.mul(b, c))


def test_bad_table_rejected():
    with pytest.raises(GroupError):
        from wreathkit.groups import FiniteGroup
        FiniteGroup.from_table(np.array([[0, 1], [1, 1]]))


def _core_oracle(B, A):
    members = set(A.members)
    for b in B.elements():
        members &= {B.mul(B.mul(b, a), B.inv(b)) for a in A.members}
    return members


def test_core_examples():
    S3 = symmetric(3)
    t12 = s3_elem(S3, (1, 2))
    c123 = s3_elem(S3, (1, 2, 3))
    assert core(S3, whole(S3)).members == whole(S3).members
    assert core(S3, subgroup(S3, {0, t12})).is_trivial()
    A3 = subgroup(S3, {0, c123, S3.mul(c123, c123)})
    assert set(core(S3, A3).members) == set(A3.members)


@pytest.mark.parametrize("G", [symmetric(3), dihedral(4), symmetric(4)], ids=lambda G: G.name)
def test_core_is_largest_normal_subgroup_inside(G):
    from wreathkit.groups import subgroups
    normals = normal_subgroups(G)
    for A in subgroups(G):
        C = core(G, A)
        assert set(C.members) == _core_oracle(G, A)
        assert is_normal(G, C) and set(C.members) <= set(A.members)
        union = set().union(*(N.members for N in normals if set(N.members) <= set(A.members)))
        assert union <= set(C.members)


def test_normal_closure_examples():
    S3 = symmetric(3)
    c123 = s3_elem(S3, (1, 2, 3))
    assert normal_closure([], S3).is_trivial()
    assert len(normal_closure([c123], S3)) == 3
    assert normal_closure([s3_elem(S3, (1, 2))], S3).is_whole()


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.name)
def test_conjugacy_classes_partition(G):
    classes = conjugacy_classes(G)
    assert sum(len(c) for c in classes) == G.order
    assert set().union(*classes) == set(G.elements())
    for c in classes:
        assert G.order % len(c) == 0


def test_conjugacy_class_examples():
    S3 = symmetric(3)
    assert conjugacy_class(0, S3) == {0}
    assert len(conjugacy_class(s3_elem(S3, (1, 2)), S3)) == 3
    C6 = cyclic(6)
    assert all(conjugacy_class(g, C6) == {g} for g in C6.elements())


@settings(max_examples=50)
@given(st.integers(2, 8))
def test_dihedral_relations(k):
    D = dihedral(k)
    r, s = 1, k  # rotation by one step, the reflection x -> -x
    assert D.element_order(r) == k and D.element_order(s) == 2
    assert D.mul(D.mul(s, r), s) == D.inv(r)


def test_trivial_and_whole():
    G = symmetric(3)
    assert trivial(G).is_trivial() and whole(G).is_whole()
    assert (whole(G) & trivial(G)).is_trivial()
