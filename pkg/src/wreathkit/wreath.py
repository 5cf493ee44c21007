"""Exact arithmetic in restricted wreath products ``B^(X) x| H``.

The restricted-support part of the semirestricted wreath product
``B wr^A_X H`` is dense and is the only part represented here: an element is
a finitely supported lamp map ``X -> B`` together with a top element of
``H``.  The compact tail ``A^X`` is never materialised.

``H`` and its action on ``X`` are supplied by an :class:`HSet`.  Every H-set
works inside a finite window of ``X``; arithmetic that would push a lamp out
of the window raises :class:`WindowEscape` instead of truncating.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Sequence

from .groups import FiniteGroup, GroupError, NotHomomorphism, Subgroup, is_homomorphism


class WindowEscape(RuntimeError):
    """A lamp was translated outside the declared window."""


class HSet:
    """A group H acting on a countable set X, observed through a finite window.

    Subclasses fix the representation of H elements and of points.  Points
    must be mutually comparable so that lamp maps can be stored sorted.
    """

    name = "H-set"

    def identity(self):
        raise NotImplementedError

    def mul(self, g, h):
        raise NotImplementedError

    def inv(self, g):
        raise NotImplementedError

    def act(self, h, x):
        raise NotImplementedError

    def key(self, h) -> Hashable:
        """Canonical hashable form of an H element."""
        return h

    def in_window(self, x) -> bool:
        raise NotImplementedError

    def points(self) -> list:
        raise NotImplementedError

    @property
    def basepoint(self):
        return self.points()[0]

    def generators(self) -> list:
        raise NotImplementedError

    def is_infinite_orbit(self, x) -> bool:
        raise NotImplementedError

    def coset(self, h):
        """The point ``hL``, L the stabiliser of the basepoint."""
        return self.act(h, self.basepoint)

    def moved_points(self, h) -> Iterator:
        """Points of X (possibly beyond the window) moved by h, each yielded once.

        Infinite iterators are allowed; callers slice them.
        """
        for x in self.points():
            if self.act(h, x) != x:
                yield x

    def moves_infinitely_many(self, h) -> bool | None:
        """Whether h moves infinitely many points of X; None when unknown."""
        return None

    def fixes_outside_window(self, h) -> bool:
        """Whether h fixes every point of X outside the window."""
        return False

    def translates(self, x) -> Iterator:
        """H elements g_1, g_2, ... with the points g_i x pairwise distinct (infinite orbits only)."""
        raise NotImplementedError

    def equal(self, g, h) -> bool:
        return self.key(g) == self.key(h)

    def random_element(self, rng: random.Random):
        raise NotImplementedError


class ShiftLine(HSet):
    """H = Z acting on X = Z by translation; window ``[lo, hi)``."""

    name = "Z on Z"

    def __init__(self, lo: int = -64, hi: int = 64):
        self.lo, self.hi = lo, hi

    def identity(self):
        return 0

    def mul(self, g, h):
        return g + h

    def inv(self, g):
        return -g

    def act(self, h, x):
        return x + h

    def in_window(self, x):
        return self.lo <= x < self.hi

    def points(self):
        return list(range(self.lo, self.hi))

    @property
    def basepoint(self):
        return 0

    def generators(self):
        return [1]

    def is_infinite_orbit(self, x):
        return True

    def moved_points(self, h):
        if h == 0:
            return iter(())
        return (s * k for k in itertools.count() for s in ((1, -1) if k else (1,)))

    def moves_infinitely_many(self, h):
        return h != 0

    def fixes_outside_window(self, h):
        return h == 0

    def translates(self, x):
        return itertools.count(1)

    def random_element(self, rng):
        return rng.randint(-3, 3)


class CycleUnion(HSet):
    """H = Z acting on a disjoint union of cycles, one of each length ``1..max_len``.

    Point ``(n, j)`` sits on the cycle of length n; the generator rotates
    every cycle by one step.  The intended infinite H-set has one cycle of
    every length, so the action is faithful and all orbits are finite; the
    window keeps the first ``max_len`` cycles.  Cycles are invariant, so
    arithmetic never leaves the window.
    """

    name = "Z on cycles"

    def __init__(self, max_len: int = 8):
        self.max_len = max_len

    def identity(self):
        return 0

    def mul(self, g, h):
        return g + h

    def inv(self, g):
        return -g

    def act(self, h, x):
        n, j = x
        return (n, (j + h) % n)

    def in_window(self, x):
        return 1 <= x[0] <= self.max_len and 0 <= x[1] < x[0]

    def points(self):
        return [(n, j) for n in range(1, self.max_len + 1) for j in range(n)]

    @property
    def basepoint(self):
        return (1, 0)

    def generators(self):
        return [1]

    def is_infinite_orbit(self, x):
        return False

    def moved_points(self, h):
        # every cycle whose length does not divide h, through the whole infinite family
        if h == 0:
            return iter(())
        return ((n, 0) for n in itertools.count(2) if h % n)

    def moves_infinitely_many(self, h):
        return h != 0

    def fixes_outside_window(self, h):
        return h == 0

    def random_element(self, rng):
        return rng.randint(-6, 6)


class FiniteAction(HSet):
    """A finite group H acting on a finite set through an action table ``act[h][x]``."""

    def __init__(self, H: FiniteGroup, action: Sequence[Sequence[int]], name: str = ""):
        self.H = H
        self.action = [tuple(int(v) for v in row) for row in action]
        self.npoints = len(self.action[0])
        self.name = name or f"{H.name} on {self.npoints} points"
        for g in H.elements():
            for h in H.elements():
                gh = H.mul(g, h)
                if any(self.action[gh][x] != self.action[g][self.action[h][x]] for x in range(self.npoints)):
                    raise GroupError("action table is not a left action")

    @classmethod
    def regular(cls, H: FiniteGroup) -> "FiniteAction":
        return cls(H, [[H.mul(h, x) for x in H.elements()] for h in H.elements()], f"{H.name} on itself")

    @classmethod
    def on_cosets(cls, H: FiniteGroup, L: Subgroup) -> "FiniteAction":
        """H acting on H/L; point 0 is the coset L."""
        cosets = sorted(L.left_cosets(), key=min)
        index = {}
        for i, c in enumerate(cosets):
            for g in c:
                index[g] = i
        reps = [min(c) for c in cosets]
        return cls(H, [[index[H.mul(h, r)] for r in reps] for h in H.elements()], f"{H.name} on {H.name}/L")

    def identity(self):
        return 0

    def mul(self, g, h):
        return self.H.mul(g, h)

    def inv(self, g):
        return self.H.inv(g)

    def act(self, h, x):
        return self.action[h][x]

    def in_window(self, x):
        return 0 <= x < self.npoints

    def points(self):
        return list(range(self.npoints))

    @property
    def basepoint(self):
        return 0

    def generators(self):
        return [g for g in self.H.elements() if g]

    def is_infinite_orbit(self, x):
        return False

    def moves_infinitely_many(self, h):
        return False

    def fixes_outside_window(self, h):
        return True

    def random_element(self, rng):
        return rng.randrange(self.H.order)


@dataclass(frozen=True)
class WreathElement:
    """Lamp map (sorted ``(point, b)`` pairs, identity values omitted) and top element."""

    lamp: tuple = ()
    top: Hashable = 0

    def value(self, x, identity: int = 0) -> int:
        for p, b in self.lamp:
            if p == x:
                return b
        return identity

    def support(self) -> list:
        return [p for p, _ in self.lamp]

    def as_dict(self) -> dict:
        return dict(self.lamp)


def _lamp_from_dict(d: dict) -> tuple:
    return tuple(sorted((x, b) for x, b in d.items() if b != 0))


class WreathProduct:
    """The restricted wreath product ``B wr_X H`` with a distinguished subgroup A of B.

    ``A`` only enters through :meth:`supp_A` and the quotient ``B/A``;
    the default is the trivial subgroup.
    """

    def __init__(self, B: FiniteGroup, hset: HSet, A: Subgroup | None = None):
        self.B = B
        self.hset = hset
        self.A = A if A is not None else Subgroup(B, frozenset({0}))

    def __repr__(self):
        return f"WreathProduct({self.B.name}, {self.hset.name})"

    # -- elements -------------------------------------------------------

    def identity(self) -> WreathElement:
        return WreathElement((), self.hset.identity())

    def delta(self, x, b: int) -> WreathElement:
        """The lamp ``delta_x(b)``: value b at x, identity elsewhere."""
        self._check_point(x)
        return WreathElement(((x, b),) if b else (), self.hset.identity())

    def lamp(self, values: dict) -> WreathElement:
        for x in values:
            self._check_point(x)
        return WreathElement(_lamp_from_dict(values), self.hset.identity())

    def top(self, h) -> WreathElement:
        return WreathElement((), h)

    def make(self, values: dict, h) -> WreathElement:
        for x in values:
            self._check_point(x)
        return WreathElement(_lamp_from_dict(values), h)

    def _check_point(self, x):
        if not self.hset.in_window(x):
            raise WindowEscape(f"point {x!r} outside window of {self.hset.name}")

    def canonical(self, u: WreathElement) -> Hashable:
        return (u.lamp, self.hset.key(u.top))

    def equal(self, u: WreathElement, v: WreathElement) -> bool:
        return self.canonical(u) == self.canonical(v)

    def is_identity(self, u: WreathElement) -> bool:
        return not u.lamp and self.hset.equal(u.top, self.hset.identity())

    # -- arithmetic -----------------------------------------------------

    def translate_lamp(self, h, lamp: Iterable) -> dict:
        """``(h.f)(x) = f(h^-1 x)``: the value at x moves to hx."""
        out = {}
        for x, b in lamp:
            y = self.hset.act(h, x)
            if not self.hset.in_window(y):
                raise WindowEscape(f"lamp at {x!r} translated to {y!r} outside the window")
            out[y] = b
        return out

    def compose(self, u: WreathElement, v: WreathElement) -> WreathElement:
        """``(f1, h1)(f2, h2) = (f1 * (h1.f2), h1 h2)``."""
        B = self.B
        vals = dict(u.lamp)
        for y, b in self.translate_lamp(u.top, v.lamp).items():
            vals[y] = B.mul(vals.get(y, 0), b)
        return WreathElement(_lamp_from_dict(vals), self.hset.mul(u.top, v.top))

    def inverse(self, u: WreathElement) -> WreathElement:
        """``(f, h)^-1 = (h^-1 . f^-1, h^-1)``."""
        hi = self.hset.inv(u.top)
        inv = [(x, self.B.inv(b)) for x, b in u.lamp]
        return WreathElement(_lamp_from_dict(self.translate_lamp(hi, inv)), hi)

    def product(self, *us: WreathElement) -> WreathElement:
        r = self.identity()
        for u in us:
            r = self.compose(r, u)
        return r

    def power(self, u: WreathElement, k: int) -> WreathElement:
        if k < 0:
            u, k = self.inverse(u), -k
        r = self.identity()
        for _ in range(k):
            r = self.compose(r, u)
        return r

    def conj(self, g: WreathElement, u: WreathElement) -> WreathElement:
        """``g u g^-1``."""
        return self.compose(self.compose(g, u), self.inverse(g))

    def commutator(self, u: WreathElement, v: WreathElement) -> WreathElement:
        """``[u, v] = u v u^-1 v^-1``."""
        return self.compose(self.compose(u, v), self.compose(self.inverse(u), self.inverse(v)))

    def commutator_with_delta(self, u: WreathElement, x, b: int) -> WreathElement:
        """``[fh, delta_x(b)]``."""
        self._check_point(x)
        self._check_point(self.hset.act(u.top, x))
        return self.commutator(u, self.delta(x, b))

    # -- supports --------------------------------------------------------

    def supp(self, u: WreathElement) -> set:
        return set(u.support())

    def supp_A(self, u: WreathElement, A: Subgroup | None = None) -> set:
        A = self.A if A is None else A
        return {x for x, b in u.lamp if b not in A.members}

    def lamp_generators(self, gens_B: Sequence[int] | None = None, at=None) -> list[WreathElement]:
        x = self.hset.basepoint if at is None else at
        gens_B = list(gens_B) if gens_B is not None else [b for b in self.B.elements() if b]
        return [self.delta(x, b) for b in gens_B]

    def standard_generators(self, gens_B: Sequence[int] | None = None) -> list[WreathElement]:
        """Lamp generators at the basepoint plus the H generators and their inverses."""
        gens = self.lamp_generators(gens_B)
        for h in self.hset.generators():
            gens.append(self.top(h))
            hi = self.hset.inv(h)
            if not self.hset.equal(hi, h):
                gens.append(self.top(hi))
        return gens

    def random_element(self, rng: random.Random, max_support: int = 4, region: Sequence | None = None) -> WreathElement:
        pts = list(region) if region is not None else self.hset.points()
        k = rng.randint(0, max_support)
        vals = {x: rng.randrange(1, self.B.order) for x in rng.sample(pts, min(k, len(pts)))} if self.B.order > 1 else {}
        return self.make(vals, self.hset.random_element(rng))


# -- module-level operations -------------------------------------------------

def wreath_compose(u: WreathElement, v: WreathElement, ctx: WreathProduct) -> WreathElement:
    return ctx.compose(u, v)


def wreath_inverse(u: WreathElement, ctx: WreathProduct) -> WreathElement:
    return ctx.inverse(u)


def supp_A(u: WreathElement, A: Subgroup) -> set:
    return {x for x, b in u.lamp if b not in A.members}


def commutator_with_delta(u: WreathElement, x, b: int, ctx: WreathProduct) -> WreathElement:
    return ctx.commutator_with_delta(u, x, b)


class ImageNotInA2(GroupError):
    pass


@dataclass(frozen=True)
class CopciVerdict:
    proper: bool
    cocompact: bool

    @property
    def copci(self) -> bool:
        return self.proper and self.cocompact


def copci_classify(u: Sequence[int], B1: FiniteGroup, B2: FiniteGroup, A1: Subgroup, A2: Subgroup) -> CopciVerdict:
    """Classify the map induced by ``u: B1 -> B2`` on semirestricted wreath products over an infinite X.

    Proper iff ``u^-1(A2) = A1``; cocompact image iff ``B1 -> B2/A2`` is onto.
    """
    if len(u) != B1.order or not is_homomorphism(u, B1, B2):
        raise NotHomomorphism("u is not a homomorphism B1 -> B2")
    if any(u[a] not in A2.members for a in A1.members):
        raise ImageNotInA2("u(A1) is not contained in A2")
    preimage = {g for g in B1.elements() if u[g] in A2.members}
    proper = preimage == set(A1.members)
    hit = {A2.coset_rep(u[g]) for g in B1.elements()}
    cocompact = len(hit) * len(A2) == B2.order
    return CopciVerdict(proper, cocompact)
