"""Commensurating actions, the PW length functions on wreath products,
and half-restricted wreath products with a Laurent-series check.

The test bed is H = Z.  It acts on ``Y = Z x {0..k-1}`` by translating every
layer, and on ``X = H/L = Z`` (L trivial) by translation.  A commensurated
subset M of Y is a list of eventually periodic sets, one per layer.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .epsets import EPSet, InfiniteSet, TailUndetermined
from .groups import FiniteGroup, Subgroup, trivial, whole
from .wreath import WindowEscape, WreathElement, WreathProduct


class CommensurationViolated(ValueError):
    pass


# -- commensurating actions of Z --------------------------------------------

@dataclass(frozen=True)
class CommAction:
    """Z acting on ``Z x layers`` by translation, commensurating ``M = (M_0, ..., M_{k-1})``."""

    M: tuple

    def __post_init__(self):
        object.__setattr__(self, "M", tuple(self.M))
        for i, m in enumerate(self.M):
            fin = (m ^ m.shift(1)).is_finite()
            if fin is None:
                raise TailUndetermined(f"layer {i}: cannot decide commensuration")
            if not fin:
                raise CommensurationViolated(f"layer {i}: M and M+1 differ on an infinite set")

    @property
    def layers(self) -> int:
        return len(self.M)

    def translate(self, h: int) -> tuple:
        return tuple(m.shift(h) for m in self.M)

    def ell0(self, h: int) -> int:
        """``#(M symdiff hM)``."""
        return sum((m ^ m.shift(h)).count() for m in self.M)

    def halves(self, h: int) -> tuple[int, int]:
        """``(#(M minus hM), #(hM minus M))``."""
        return (sum((m - m.shift(h)).count() for m in self.M),
                sum((m.shift(h) - m).count() for m in self.M))

    def W_set(self, y: tuple) -> EPSet:
        """``W_y = {x : y in xM}``, as a subset of X = Z."""
        n, layer = y
        return self.M[layer].reflect().shift(n)

    def in_M(self, y: tuple) -> bool:
        n, layer = y
        return n in self.M[layer]


def natural_action() -> CommAction:
    """Y = Z, M = N."""
    return CommAction((EPSet.ray_up(0),))


def symmetrize(act: CommAction) -> CommAction:
    """``Y x {0,1}`` with ``M x {0}`` joined to ``M^c x {1}``; afterwards the two halves of
    ``M symdiff hM`` have equal size for every h."""
    return CommAction(act.M + tuple(m.complement() for m in act.M))


# -- the PW action ------------------------------------------------------------

@dataclass(frozen=True)
class PWPair:
    """A point ``(y, p)``: y in Y, p a finitely supported map X -> B/A (sorted (x, coset rep))."""

    y: tuple
    p: tuple = ()


def _check_pair(z: PWPair, act: CommAction) -> None:
    W = act.W_set(z.y)
    if any(x in W for x, _ in z.p):
        raise ValueError(f"p is supported inside W_y for y={z.y}")


def pw_act(g: WreathElement, z: PWPair, act: CommAction, W: WreathProduct) -> PWPair:
    """``g = f h`` acts by ``h.(y, p) = (hy, h.p)`` and then ``f.(y, p) = (y, fbar|_{W_y^c} p)``."""
    h = g.top
    n, layer = z.y
    y = (n + h, layer)
    p = {}
    for x, c in z.p:
        x2 = W.hset.act(h, x)
        if not W.hset.in_window(x2):
            raise WindowEscape(f"p support {x} translated outside the window")
        p[x2] = c
    Wy = act.W_set(y)
    for x, b in g.lamp:
        if x in Wy:
            continue
        c = W.A.coset_rep(W.B.mul(b, p.get(x, 0)))
        if c:
            p[x] = c
        else:
            p.pop(x, None)
    return PWPair(y, tuple(sorted(p.items())))


def _c(act: CommAction, S: Sequence[int], h: int) -> int:
    # #(hM minus (M cap bigcap_{x in S} xM)), summed over layers
    total = 0
    for m in act.M:
        core = m
        for x in S:
            core = core & m.shift(x)
        total += (m.shift(h) - core).count()
    return total


def pw_length(g: WreathElement, act: CommAction, W: WreathProduct) -> int:
    """``#(N symdiff gN)`` for ``N = M x {1}``.

    ``gN minus N`` is in bijection with ``hM minus (M cap bigcap_{x in Supp_A f} xM)``
    and ``N minus gN = g(g^-1 N minus N)``.
    """
    gi = W.inverse(g)
    return _c(act, sorted(W.supp_A(g)), g.top) + _c(act, sorted(W.supp_A(gi)), gi.top)


def pw_length_direct(g: WreathElement, act: CommAction, W: WreathProduct, radius: int = 64) -> int:
    """Count ``N symdiff gN`` by pushing every point ``(m, 1)`` with ``|m| <= radius`` through
    :func:`pw_act`.  Exact when every point of M beyond the radius maps back into N, which
    holds for M eventually constant and supports well inside the radius."""
    def escapes(u):
        out = 0
        for layer, m in enumerate(act.M):
            for n in m.in_range(-radius, radius + 1):
                z = pw_act(u, PWPair((n, layer)), act, W)
                if z.p or not act.in_M(z.y):
                    out += 1
        return out
    return escapes(g) + escapes(W.inverse(g))


def nf_set(f: WreathElement, act: CommAction, W: WreathProduct) -> list:
    """``N minus f^-1 N`` for a pure lamp f, from the union of ``M minus xM`` over Supp_A f."""
    out = set()
    for layer, m in enumerate(act.M):
        for x in W.supp_A(f):
            out.update((n, layer) for n in (m - m.shift(x)).elements())
    return sorted(out)


def nf_set_direct(f: WreathElement, act: CommAction, W: WreathProduct, radius: int = 64) -> list:
    out = []
    for layer, m in enumerate(act.M):
        for n in m.in_range(-radius, radius + 1):
            z = pw_act(f, PWPair((n, layer)), act, W)
            if z.p or not act.in_M(z.y):
                out.append((n, layer))
    return sorted(out)


# -- the second action ----------------------------------------------------------

def default_ell1(B: FiniteGroup, A: Subgroup) -> list[int]:
    """``l1(b) = #(A symdiff bA)`` from B acting on itself, commensurating A."""
    return [0 if b in A.members else 2 * len(A) for b in B.elements()]


def second_length(g: WreathElement, ell1: Sequence[int]) -> int:
    """``l'(fh) = sum_x l1(f(x))``; independent of h."""
    if ell1[0] != 0:
        raise ValueError("ell1 must vanish at the identity")
    return sum(ell1[b] for _, b in g.lamp)


@dataclass
class Sublevel:
    k: int
    elements: list
    search_radius: int
    max_shift: int
    support_hull: tuple

    @property
    def touches_search_boundary(self) -> bool:
        lo, hi = self.support_hull
        return self.max_shift >= self.search_radius or -lo >= self.search_radius or hi >= self.search_radius


def sublevel_set(act: CommAction, W: WreathProduct, k: int, ell1: Sequence[int] | None = None,
                 search_radius: int | None = None) -> Sublevel:
    """All ``g`` with ``l(g) + l'(g) <= k``, shifts and lamp points inside ``[-R, R]``.

    For a fixed top, both lengths grow when points are added to the support,
    so a depth-first search over supports may prune.  Requires A trivial
    (otherwise the sublevel sets are compact but not finite).
    """
    if len(W.A) != 1:
        raise ValueError("sublevel sets are finite only for trivial A")
    ell1 = default_ell1(W.B, W.A) if ell1 is None else ell1
    R = 2 * k + 2 if search_radius is None else search_radius
    values = [b for b in W.B.elements() if b]
    found = []

    def cost(lamp: dict, h: int) -> int:
        g = W.make(lamp, h)
        return pw_length(g, act, W) + second_length(g, ell1)

    def grow(lamp: dict, h: int, start: int):
        found.append(W.make(lamp, h))
        for x in range(start, R + 1):
            for b in values:
                lamp[x] = b
                if cost(lamp, h) <= k:
                    grow(lamp, h, x + 1)
                del lamp[x]

    for h in range(-R, R + 1):
        if cost({}, h) <= k:
            grow({}, h, -R)
    pts = [x for g in found for x in g.support()]
    hull = (min(pts, default=0), max(pts, default=0))
    return Sublevel(k, found, R, max((abs(g.top) for g in found), default=0), hull)


# -- half-restricted and partitioned wreath products over Z ------------------------

@dataclass(frozen=True)
class HRElement:
    """Known lamp values (sorted ``((n, layer), b)``), undetermined positions per layer, top."""

    lamp: tuple = ()
    unknown: tuple = ()
    top: int = 0


class HalfRestricted:
    """``B^{X,M,A} x| Z`` on ``X = Z x layers``; blocks ``(M_i, A_i)`` partition X.

    Elements of the locally compact group are modelled to finite precision:
    each position carries a known value of B or is undetermined.  Undetermined
    positions may only sit where the block's ``A_i`` is all of B.
    """

    def __init__(self, B: FiniteGroup, blocks: Sequence[tuple[Sequence[EPSet], Subgroup]], layers: int = 1):
        self.B = B
        self.layers = layers
        self.blocks = [(tuple(ms), A) for ms, A in blocks]
        for ms, _ in self.blocks:
            if len(ms) != layers:
                raise ValueError("every block needs one set per layer")
        for layer in range(layers):
            cover = EPSet.empty()
            for ms, _ in self.blocks:
                if not (cover & ms[layer]).is_empty():
                    raise ValueError(f"blocks overlap on layer {layer}")
                cover = cover | ms[layer]
            if cover != EPSet.full():
                raise ValueError(f"blocks do not cover layer {layer}")
        rep = uniform_commensuration_check([ms for ms, _ in self.blocks], [1])
        if rep.sums[1] is None:
            raise CommensurationViolated("blocks are not uniformly commensurated by the shift")
        self.free = tuple(self._union(layer, lambda A: len(A) == B.order) for layer in range(layers))

    def _union(self, layer: int, pred) -> EPSet:
        s = EPSet.empty()
        for ms, A in self.blocks:
            if pred(A):
                s = s | ms[layer]
        return s

    def block_of(self, pos: tuple) -> int:
        n, layer = pos
        for i, (ms, _) in enumerate(self.blocks):
            if n in ms[layer]:
                return i
        raise AssertionError("blocks cover X")

    # -- elements -----------------------------------------------------------

    def _no_unknown(self) -> tuple:
        return tuple(EPSet.empty() for _ in range(self.layers))

    def make(self, values: dict, top: int = 0, unknown: Sequence[EPSet] | None = None) -> HRElement:
        unknown = self._no_unknown() if unknown is None else tuple(unknown)
        lamp = tuple(sorted((p, b) for p, b in values.items() if b and p[0] not in unknown[p[1]]))
        return HRElement(lamp, unknown, top)

    def identity(self) -> HRElement:
        return self.make({})

    def validate(self, u: HRElement) -> None:
        for layer in range(self.layers):
            if not (u.unknown[layer] - self.free[layer]).is_empty():
                raise CommensurationViolated(f"undetermined values outside the free blocks on layer {layer}")

    def compose(self, u: HRElement, v: HRElement) -> HRElement:
        """``(f1, h1)(f2, h2) = (f1 (h1.f2), h1 + h2)``."""
        vals = dict(u.lamp)
        for (n, layer), b in v.lamp:
            p = (n + u.top, layer)
            vals[p] = self.B.mul(vals.get(p, 0), b)
        unknown = tuple(a | b.shift(u.top) for a, b in zip(u.unknown, v.unknown))
        return self.make(vals, u.top + v.top, unknown)

    def inverse(self, u: HRElement) -> HRElement:
        vals = {(n - u.top, layer): self.B.inv(b) for (n, layer), b in u.lamp}
        return self.make(vals, -u.top, tuple(s.shift(-u.top) for s in u.unknown))

    def canonical(self, u: HRElement):
        return (u.lamp, tuple(s.key() for s in u.unknown), u.top)

    def coset_key(self, u: HRElement):
        """Image modulo the compact open subgroup (values in ``A_i`` on block i)."""
        if any(not s.is_empty() for s in u.unknown):
            self.validate(u)
        out = []
        for p, b in u.lamp:
            A = self.blocks[self.block_of(p)][1]
            c = A.coset_rep(b)
            if c:
                out.append((p, c))
        return (tuple(out), u.top)


def f_q_laurent(q: int) -> HalfRestricted:
    """``F_q wr_{(Z, N]} Z``: free on N, restricted on the negatives."""
    from .groups import cyclic
    B = cyclic(q)
    N = EPSet.ray_up(0)
    return HalfRestricted(B, [((N.complement(),), trivial(B)), ((N,), whole(B))])


def envelope_two_sided(q: int) -> HalfRestricted:
    """``X = Z x {1, 2}``: free on ``N x {1}`` and on the negatives of layer 2, restricted elsewhere."""
    from .groups import cyclic
    B = cyclic(q)
    N = EPSet.ray_up(0)
    free = (N, N.complement())
    rest = (N.complement(), N)
    return HalfRestricted(B, [(rest, trivial(B)), (free, whole(B))], layers=2)


@dataclass(frozen=True)
class LaurentAffine:
    """``x -> a + t^n x`` over F_p, with a known up to (excluding) degree ``prec``.

    ``coeffs[i]`` is the coefficient of ``t^(val + i)``; ``prec`` may be None
    for an exact Laurent polynomial.
    """

    val: int
    coeffs: np.ndarray
    prec: int | None
    n: int
    p: int = 2

    def compose(self, other: "LaurentAffine") -> "LaurentAffine":
        """``(a1, n1)(a2, n2) = (a1 + t^n1 a2, n1 + n2)``."""
        v2 = other.val + self.n
        p2 = None if other.prec is None else other.prec + self.n
        prec = p2 if self.prec is None else (self.prec if p2 is None else min(self.prec, p2))
        lo = min(self.val, v2)
        hi = max(self.val + len(self.coeffs), v2 + len(other.coeffs))
        if prec is not None:
            hi = min(hi, prec)
            lo = min(lo, hi)
        c = np.zeros(max(hi - lo, 0), dtype=np.int64)

        def add(v, arr):
            for i, x in enumerate(arr):
                d = v + i - lo
                if 0 <= d < len(c):
                    c[d] += x
        add(self.val, self.coeffs)
        add(v2, other.coeffs)
        return LaurentAffine(lo, c % self.p, prec, self.n + other.n, self.p)

    def terms(self) -> dict:
        return {self.val + i: int(x) for i, x in enumerate(self.coeffs) if x}


def hr_to_laurent(u: HRElement, p: int) -> LaurentAffine:
    """Read a one-layer element as a truncated series; undetermined set must be a ray ``[P, oo)``."""
    (unk,) = u.unknown
    if unk.is_empty():
        prec = None
    else:
        if unk.right != (True,) or unk.left != (False,) or unk.mid:
            raise ValueError("undetermined set is not an upward ray")
        prec = unk.lo
    terms = {n: b for (n, _), b in u.lamp}
    if not terms:
        return LaurentAffine(0 if prec is None else prec, np.zeros(0, dtype=np.int64), prec, u.top, p)
    lo, hi = min(terms), max(terms) + 1
    c = np.array([terms.get(n, 0) for n in range(lo, hi)], dtype=np.int64)
    return LaurentAffine(lo, c, prec, u.top, p)


def same_series(a: LaurentAffine, b: LaurentAffine) -> bool:
    return a.n == b.n and a.prec == b.prec and a.terms() == b.terms()


def random_hr_pair(rng: random.Random, G: HalfRestricted, q: int):
    def one():
        prec = rng.choice([None, rng.randint(2, 20)])
        lo = -rng.randint(0, 8)
        hi = prec if prec is not None else rng.randint(1, 12)
        vals = {(n, 0): rng.randrange(q) for n in range(lo, hi) if rng.random() < 0.5}
        unk = (EPSet.empty() if prec is None else EPSet.ray_up(prec),)
        return G.make(vals, rng.randint(-6, 6), unk)
    return one(), one()


# -- uniform commensuration --------------------------------------------------------

@dataclass
class CommensurationReport:
    sums: dict                       # generator -> sum_i #(M_i symdiff g M_i), None if infinite
    non_invariant: list              # block indices moved by some generator
    window_growing: bool | None = None
    history: list = field(default_factory=list)


def uniform_commensuration_check(partition, generators, window=None) -> CommensurationReport:
    """Per-generator ``sum_i #(M_i symdiff g M_i)`` and the blocks some generator moves.

    ``partition`` is either a list of blocks, each a tuple of :class:`EPSet`
    (one per layer, generators are integer shifts), or a callable
    ``J -> (blocks, generators)`` describing finite windows; then ``window``
    lists the window parameters and the report flags whether the number of
    non-invariant blocks keeps growing with the window.
    """
    if callable(partition):
        history = []
        for J in window:
            blocks, gens = partition(J)
            history.append(_finite_report(blocks, gens))
        counts = [len(r.non_invariant) for r in history]
        last = history[-1]
        growing = len(counts) > 1 and all(a < b for a, b in zip(counts, counts[1:]))
        return CommensurationReport(last.sums, last.non_invariant, growing, counts)
    sums, moved = {}, set()
    for g in generators:
        total = 0
        for i, block in enumerate(partition):
            for m in block:
                d = m ^ m.shift(g)
                try:
                    c = d.count()
                except InfiniteSet:
                    total = None
                    moved.add(i)
                    break
                if c:
                    moved.add(i)
                    total += c
            if total is None:
                break
        sums[g] = total
    return CommensurationReport(sums, sorted(moved), False)


def _finite_report(blocks: Sequence[set], gens: dict) -> CommensurationReport:
    sums, moved = {}, set()
    for name, perm in gens.items():
        total = 0
        for i, b in enumerate(blocks):
            c = len(set(b) ^ {perm[x] for x in b})
            if c:
                moved.add(i)
                total += c
        sums[name] = total
    return CommensurationReport(sums, sorted(moved))


def prufer_window(J: int):
    """``2^-J Z / Z`` inside ``Q_2 / Z_2``; point k stands for ``k / 2^J``.

    Blocks: ``M_0 = {0}`` and ``M_i`` the elements of order exactly ``2^i``.
    Generators: translations by ``2^-j`` for ``1 <= j <= J``.
    """
    n = 1 << J
    blocks = [set() for _ in range(J + 1)]
    for k in range(n):
        order = n // math.gcd(k, n) if k else 1
        blocks[order.bit_length() - 1].add(k)
    gens = {f"2^-{j}": {k: (k + (n >> j)) % n for k in range(n)} for j in range(1, J + 1)}
    return blocks, gens


def window_growth(partition: Callable, windows: Sequence[int]) -> CommensurationReport:
    return uniform_commensuration_check(partition, None, windows)
