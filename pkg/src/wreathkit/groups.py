"""Finite groups as explicit multiplication tables.

Elements are integer ids ``0 .. order-1``; id 0 is always the identity.
Groups are immutable once built, so they can be shared freely and element
ids can be used directly as hash keys by the enumeration code.

Products are written left to right: ``compose(g, h, G)`` is ``g*h``.  For
permutation groups ``g*h`` means "apply ``h`` first, then ``g``".
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np


class GroupError(ValueError):
    pass


class NotHomomorphism(GroupError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    inverse: np.ndarray
    labels: tuple = ()
    name: str = ""

    def __post_init__(self):
        self.table.setflags(write=False)
        self.inverse.setflags(write=False)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    @property
    def identity(self) -> int:
        return 0

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inv(self, g: int) -> int:
        return int(self.inverse[g])

    def label(self, g: int) -> str:
        return str(self.labels[g]) if self.labels else str(g)

    def elements(self) -> range:
        return range(self.order)

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        r = 0
        for _ in range(k):
            r = self.mul(r, g)
        return r

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul(x, g)
            k += 1
        return k

    def conj(self, b: int, g: int) -> int:
        """``b g b^-1``."""
        return self.mul(self.mul(b, g), self.inv(b))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def __repr__(self):
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    # -- construction -------------------------------------------------

    @classmethod
    def from_table(cls, table, labels: Sequence = (), name: str = "", check: bool = True) -> "FiniteGroup":
        t = np.asarray(table, dtype=np.int64)
        n = t.shape[0]
        if t.shape != (n, n):
            raise GroupError("table must be square")
        if check:
            _check_group_law(t)
        inv = np.empty(n, dtype=np.int64)
        for g in range(n):
            inv[g] = int(np.flatnonzero(t[g] == 0)[0])
        return cls(t, inv, tuple(labels), name)

    @classmethod
    def from_elements(cls, elements: Sequence[Hashable], mul: Callable, name: str = "",
                      labels: Sequence = ()) -> "FiniteGroup":
        """Build a table from an explicit list whose first entry is the identity."""
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        t = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                t[i, j] = index[mul(a, b)]
        return cls.from_table(t, labels or [str(e) for e in elements], name, check=False)


def _check_group_law(t: np.ndarray) -> None:
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise GroupError("table entries out of range")
    ar = np.arange(n)
    if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
        raise GroupError("id 0 is not a two-sided identity")
    for row in t:
        if len(set(row.tolist())) != n:
            raise GroupError("table is not a Latin square")
    # t[t[a,b],c] == t[a,t[b,c]], one slice of a at a time to bound memory
    for a in range(n):
        if not np.array_equal(t[t[a]], t[a][t]):
            raise GroupError("table is not associative")


# -- standard families -------------------------------------------------

def cyclic(k: int) -> FiniteGroup:
    ar = np.arange(k)
    return FiniteGroup.from_table((ar[:, None] + ar[None, :]) % k, [str(i) for i in range(k)], f"C{k}", check=False)


def dihedral(k: int) -> FiniteGroup:
    """Symmetries of the k-gon, order 2k.  Element ``(s, r)`` is ``x -> (-1)^s x + r``."""
    elems = [(s, r) for s in (0, 1) for r in range(k)]

    def mul(a, b):
        # (a o b)(x) = a(b(x))
        s1, r1 = a
        s2, r2 = b
        return ((s1 + s2) % 2, (r1 + (-1) ** s1 * r2) % k)

    labels = [f"r{r}" if s == 0 else f"s{r}" for s, r in elems]
    return FiniteGroup.from_elements(elems, mul, name=f"D{k}", labels=labels)


def perm_compose(p: Sequence[int], q: Sequence[int]) -> tuple:
    """``p*q``: apply q first."""
    return tuple(p[i] for i in q)


def cycle_string(p: Sequence[int]) -> str:
    """Cycle notation on the points 1..n."""
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j + 1)
            j = p[j]
        out.append("(" + "".join(map(str, c)) + ")")
    return "".join(out) or "e"


def symmetric(n: int) -> FiniteGroup:
    """The symmetric group on n points, elements in lexicographic order of their images."""
    if n > 6:
        raise GroupError("symmetric groups are tabulated only for n <= 6")
    perms = list(itertools.permutations(range(n)))
    G = FiniteGroup.from_elements(perms, perm_compose, name=f"S{n}", labels=[cycle_string(p) for p in perms])
    object.__setattr__(G, "_perms", perms)
    return G


def permutations_of(G: FiniteGroup) -> list:
    """The permutation tuples behind a group built by :func:`symmetric`."""
    return G._perms  # type: ignore[attr-defined]


def perm_id(G: FiniteGroup, p: Sequence[int]) -> int:
    cache = getattr(G, "_perm_index", None)
    if cache is None:
        cache = {q: i for i, q in enumerate(permutations_of(G))}
        object.__setattr__(G, "_perm_index", cache)
    return cache[tuple(p)]


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Element ``(g, h)`` has id ``g * |H| + h``."""
    n, m = G.order, H.order
    g = np.arange(n * m) // m
    h = np.arange(n * m) % m
    t = G.table[g[:, None], g[None, :]] * m + H.table[h[:, None], h[None, :]]
    labels = [f"({G.label(a)},{H.label(b)})" for a in range(n) for b in range(m)]
    return FiniteGroup.from_table(t, labels, f"{G.name}x{H.name}", check=False)


def left_regular_homomorphism(F: FiniteGroup) -> tuple[FiniteGroup, list[int]]:
    """F -> S_|F| by left multiplication; returns (S_n, image ids)."""
    S = symmetric(F.order)
    images = [perm_id(S, tuple(int(x) for x in F.table[g])) for g in range(F.order)]
    return S, images


# -- subgroups -----------------------------------------------------------

@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(compare=False, hash=False, repr=False)
    members: frozenset

    def __contains__(self, g) -> bool:
        return g in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def sorted(self) -> tuple:
        return tuple(sorted(self.members))

    def is_trivial(self) -> bool:
        return self.members == {0}

    def is_whole(self) -> bool:
        return len(self.members) == self.parent.order

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.members & other.members)

    def coset_rep(self, g: int) -> int:
        """Smallest id in the left coset ``g*self``."""
        G = self.parent
        return min(G.mul(g, a) for a in self.members)

    def left_cosets(self) -> list[frozenset]:
        G, seen, out = self.parent, set(), []
        for g in G.elements():
            if g in seen:
                continue
            c = frozenset(G.mul(g, a) for a in self.members)
            seen |= c
            out.append(c)
        return out


def subgroup(G: FiniteGroup, elements: Iterable[int], check: bool = True) -> Subgroup:
    S = frozenset(int(x) for x in elements) | {0}
    if check and not is_subgroup(G, S):
        raise GroupError("not a subgroup")
    return Subgroup(G, S)


def is_subgroup(G: FiniteGroup, S) -> bool:
    S = set(S)
    if 0 not in S:
        return False
    return all(G.mul(a, G.inv(b)) in S for a in S for b in S)


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    S = {0}
    frontier = [0]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = G.mul(x, s)
                if y not in S:
                    S.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, frozenset(S))


def whole(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, frozenset(G.elements()))


def trivial(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, frozenset({0}))


def compose(g: int, h: int, G: FiniteGroup) -> int:
    if not (0 <= g < G.order and 0 <= h < G.order):
        raise IndexError(f"element id out of range for {G!r}")
    return G.mul(g, h)


def conjugacy_class(g: int, G: FiniteGroup) -> frozenset:
    return frozenset(G.conj(b, g) for b in G.elements())


def conjugacy_classes(G: FiniteGroup) -> list[frozenset]:
    seen, out = set(), []
    for g in G.elements():
        if g not in seen:
            c = conjugacy_class(g, G)
            seen |= c
            out.append(c)
    return out


def is_normal(G: FiniteGroup, S: Subgroup) -> bool:
    return all(G.conj(b, a) in S.members for a in S.members for b in G.elements())


def core(B: FiniteGroup, A: Subgroup) -> Subgroup:
    """The largest normal subgroup of B contained in A (intersection of all conjugates)."""
    if not is_subgroup(B, A.members):
        raise GroupError("A is not a subgroup of B")
    members = set(A.members)
    for b in B.elements():
        members &= {B.conj(b, a) for a in A.members}
    return Subgroup(B, frozenset(members))


def normal_closure(S: Iterable[int], G: FiniteGroup) -> Subgroup:
    """Smallest normal subgroup containing S."""
    N = {0}
    todo = list(S)
    while todo:
        x = todo.pop()
        if x in N:
            continue
        # new element: close under conjugation and products with what we have
        new = {G.conj(b, x) for b in G.elements()} - N
        N |= new
        for y in list(N):
            for z in new:
                for p in (G.mul(y, z), G.mul(z, y)):
                    if p not in N:
                        todo.append(p)
    return Subgroup(G, frozenset(N))


def normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All normal subgroups, as joins of normal closures of single elements."""
    closures = {normal_closure([g], G).members for g in G.elements()}
    found = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        nxt = []
        for N in frontier:
            for C in closures:
                if C <= N:
                    continue
                J = normal_closure(N | C, G).members
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return sorted((Subgroup(G, m) for m in found), key=lambda s: (len(s), s.sorted()))


def subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All subgroups (joins of cyclic subgroups); fine for orders up to a few dozen."""
    cyc = {generated_subgroup(G, [g]).members for g in G.elements()}
    found = {frozenset({0})}
    frontier = [frozenset({0})]
    while frontier:
        nxt = []
        for S in frontier:
            for C in cyc:
                if C <= S:
                    continue
                J = generated_subgroup(G, S | C).members
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return sorted((Subgroup(G, m) for m in found), key=lambda s: (len(s), s.sorted()))


def is_homomorphism(u: Sequence[int], G1: FiniteGroup, G2: FiniteGroup) -> bool:
    u = np.asarray(u)
    return bool(np.array_equal(u[G1.table], G2.table[u[:, None], u[None, :]]))


def polycompact_radical(B: FiniteGroup) -> Subgroup:
    """W(B) for a finite (hence compact) group is the whole group."""
    return whole(B)


def bounded_radical(B: FiniteGroup) -> Subgroup:
    return whole(B)
