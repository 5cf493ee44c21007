"""The first Grigorchuk group acting on the rooted binary tree.

Generators follow the recursion ``a = swap``, ``b = (a, c)``, ``c = (a, d)``,
``d = (1, b)``: on a string ``0x`` the letter ``b`` acts as ``0 a(x)``, on
``1x`` as ``1 c(x)``, and so on.  Words are strings over ``"abcd"`` and act
right to left, so ``act(uv, x) == act(u, act(v, x))``.

Boundary rays are eventually periodic bit sequences.  Orbit points of a ray
are stored as their length-``level`` prefixes, the tail being that of the
ray; a generator that would flip a bit beyond the working level raises
:class:`LevelExhausted`.
"""
from __future__ import annotations

import math
import random
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .wreath import HSet, WindowEscape

LETTERS = "abcd"
# first-level sections (on 0, on 1) of each generator
_SECTIONS = {"a": ("", ""), "b": ("a", "c"), "c": ("a", "d"), "d": ("", "b")}
_KLEIN = {("b", "c"): "d", ("c", "b"): "d", ("b", "d"): "c", ("d", "b"): "c",
          ("c", "d"): "b", ("d", "c"): "b"}
_ATOMS = {(0, "e", "e"): "e", (1, "e", "e"): "a", (0, "a", "c"): "b",
          (0, "a", "d"): "c", (0, "e", "b"): "d"}


class LevelExhausted(WindowEscape):
    """The working tree level is too shallow for this computation."""


class LevelCapExceeded(RuntimeError):
    pass


def reduce(word: str) -> str:
    """Free reduction using ``a^2 = b^2 = c^2 = d^2 = bcd = 1``.

    The result alternates between ``a`` and a letter of ``{b, c, d}``.
    """
    stack: list[str] = []
    for x in word:
        if x not in _SECTIONS:
            raise ValueError(f"not a generator: {x!r}")
        if stack:
            y = stack[-1]
            if y == x:
                stack.pop()
                continue
            if y != "a" and x != "a":
                stack[-1] = _KLEIN[(y, x)]
                continue
        stack.append(x)
    return "".join(stack)


def inverse(word: str) -> str:
    return reduce(word[::-1])


def sections(word: str) -> tuple[int, str, str]:
    """Return ``(swap, w|0, w|1)`` with ``w(i x) = (i xor swap) w|i(x)``."""
    secs = ([], [])
    for i in (0, 1):
        bit = i
        for x in reversed(word):
            secs[i].append(_SECTIONS[x][bit])
            if x == "a":
                bit ^= 1
    swap = word.count("a") % 2
    return swap, reduce("".join(reversed(secs[0]))), reduce("".join(reversed(secs[1])))


def _act_letter(x: str, bits: list, start: int = 0) -> None:
    # in-place action of one generator on bits[start:]
    n = len(bits)
    if x == "a":
        if start < n:
            bits[start] ^= 1
        return
    state = x
    i = start
    while i < n:
        if bits[i] == 0:
            if state != "d" and i + 1 < n:
                bits[i + 1] ^= 1
            return
        state = {"b": "c", "c": "d", "d": "b"}[state]
        i += 1


def act(word: str, vertex: str) -> str:
    """Image of a tree vertex (a ``0``/``1`` string) under a word."""
    bits = [int(c) for c in vertex]
    for x in reversed(word):
        _act_letter(x, bits)
    return "".join(map(str, bits))


@lru_cache(maxsize=None)
def _is_identity(r: str, depth: int, cap: int) -> bool:
    if depth > cap:
        raise LevelCapExceeded(f"word problem exceeded level cap {cap}")
    if not r:
        return True
    if len(r) == 1 or r.count("a") % 2:
        return False
    _, w0, w1 = sections(r)
    return _is_identity(w0, depth + 1, cap) and _is_identity(w1, depth + 1, cap)


def is_identity(word: str, level_cap: int = 64) -> bool:
    """Word problem by recursive section splitting.

    Reduced words of length n >= 2 have sections of length at most
    ``ceil(n/2)``, so the recursion terminates well before the cap.
    """
    return _is_identity(reduce(word), 0, level_cap)


@lru_cache(maxsize=None)
def _portrait(r: str):
    if len(r) <= 1:
        return r or "e"
    swap, w0, w1 = sections(r)
    t = (swap, _portrait(w0), _portrait(w1))
    return _ATOMS.get(t, t)


def portrait(word: str):
    """Canonical form of the group element: nested ``(swap, left, right)`` tuples.

    Subtrees equal to a generator collapse to its letter, which makes the
    form a complete invariant: two words give the same portrait iff they
    represent the same element.
    """
    return _portrait(reduce(word))


# -- finite level actions (independent of the section machinery) --------------

@lru_cache(maxsize=None)
def generator_permutation(x: str, level: int) -> np.ndarray:
    """Permutation of level-``level`` vertices; vertex index has bit i = i-th letter."""
    n = 1 << level
    out = np.empty(n, dtype=np.int32)
    for v in range(n):
        bits = [(v >> i) & 1 for i in range(level)]
        _act_letter(x, bits)
        out[v] = sum(b << i for i, b in enumerate(bits))
    out.setflags(write=False)
    return out


def level_permutation(word: str, level: int) -> np.ndarray:
    perm = np.arange(1 << level, dtype=np.int32)
    for x in reversed(word):
        perm = generator_permutation(x, level)[perm]
    return perm


def acts_trivially_on_level(word: str, level: int) -> bool:
    p = level_permutation(word, level)
    return bool(np.array_equal(p, np.arange(p.size)))


def permutation_order(perm: np.ndarray) -> int:
    seen = np.zeros(perm.size, dtype=bool)
    order = 1
    for i in range(perm.size):
        if seen[i]:
            continue
        j, k = i, 0
        while not seen[j]:
            seen[j] = True
            j = int(perm[j])
            k += 1
        order = math.lcm(order, k)
    return order


def reduced_words(max_len: int):
    """All reduced words of length <= max_len (one per reduced spelling)."""
    yield ""
    layer = list(LETTERS)
    for _ in range(max_len):
        yield from layer
        nxt = []
        for w in layer:
            if w[-1] == "a":
                nxt.extend(w + x for x in "bcd")
            else:
                nxt.append(w + "a")
        layer = nxt


# -- boundary rays and Schreier graphs ----------------------------------------

@dataclass(frozen=True)
class Ray:
    """Eventually periodic ray ``prefix + period^inf``."""

    prefix: str
    period: str

    def bit(self, i: int) -> int:
        if i < len(self.prefix):
            return int(self.prefix[i])
        return int(self.period[(i - len(self.prefix)) % len(self.period)])

    def head(self, n: int) -> str:
        return "".join(str(self.bit(i)) for i in range(n))

    @classmethod
    def parse(cls, text: str) -> "Ray":
        """Parse ``"1^inf"``, ``"(01)^inf"`` or ``"(01)^inf prefix=110"``."""
        m = re.fullmatch(r"\s*\(?([01]+)\)?\^inf(?:\s+prefix=([01]*))?\s*", text)
        if not m:
            raise ValueError(f"bad ray descriptor {text!r}")
        return cls(m.group(2) or "", m.group(1))

    def __str__(self):
        s = f"({self.period})^inf"
        return s + (f" prefix={self.prefix}" if self.prefix else "")


def act_on_ray_point(x: str, point: str, ray: Ray) -> str:
    """One generator on an orbit point stored as a level prefix with the ray's tail."""
    level = len(point)
    if x == "a":
        return ("1" if point[0] == "0" else "0") + point[1:]
    state = x
    horizon = level + len(ray.prefix) + len(ray.period) + 1
    i = 0
    while i < horizon:
        bit = int(point[i]) if i < level else ray.bit(i)
        if bit == 0:
            if state == "d":
                return point
            if i + 1 >= level:
                raise LevelExhausted(f"generator {x} changes bit {i + 1} beyond level {level}")
            j = i + 1
            return point[:j] + ("1" if point[j] == "0" else "0") + point[j + 1:]
        state = {"b": "c", "c": "d", "d": "b"}[state]
        i += 1
    # past the prefix, one full period of ones: no zero ever comes
    return point


def act_word_on_ray_point(word: str, point: str, ray: Ray) -> str:
    for x in reversed(word):
        point = act_on_ray_point(x, point, ray)
    return point


@dataclass
class SchreierBall:
    ray: Ray
    level: int
    radius: int
    vertices: list = field(default_factory=list)
    distance: list = field(default_factory=list)
    edges: list = field(default_factory=list)  # (i, j, letter); loops have i == j

    def degree(self, i: int) -> int:
        return sum(1 for u, v, _ in self.edges if u == i) + sum(1 for u, v, _ in self.edges if v == i and u != v)


def schreier_ball(ray: Ray | str, r: int, level: int = 16) -> SchreierBall:
    """Ball of radius r around the ray in the Schreier graph of its orbit."""
    if isinstance(ray, str):
        ray = Ray.parse(ray)
    root = ray.head(level)
    ball = SchreierBall(ray, level, r, [root], [0])
    index = {root: 0}
    queue = deque([root])
    seen_edges = set()
    while queue:
        p = queue.popleft()
        i = index[p]
        for x in LETTERS:
            q = act_on_ray_point(x, p, ray)
            if q not in index:
                if ball.distance[i] == r:
                    continue
                index[q] = len(ball.vertices)
                ball.vertices.append(q)
                ball.distance.append(ball.distance[i] + 1)
                queue.append(q)
            j = index[q]
            e = (min(i, j), max(i, j), x)
            if e not in seen_edges:
                seen_edges.add(e)
                ball.edges.append(e)
    return ball


def end_count(ball: SchreierBall) -> int:
    """Components of the ball minus the half-radius ball that reach the boundary sphere.

    An empirical proxy for the number of ends; it says nothing beyond the window.
    """
    r = ball.radius
    keep = {i for i, d in enumerate(ball.distance) if d > r // 2}
    adj = {i: set() for i in keep}
    for u, v, _ in ball.edges:
        if u in keep and v in keep and u != v:
            adj[u].add(v)
            adj[v].add(u)
    count, seen = 0, set()
    for s in sorted(keep):
        if s in seen:
            continue
        comp, stack = set(), [s]
        while stack:
            u = stack.pop()
            if u in comp:
                continue
            comp.add(u)
            stack.extend(adj[u] - comp)
        seen |= comp
        if any(ball.distance[u] == r for u in comp):
            count += 1
    return count


class GrigorchukOrbit(HSet):
    """The Grigorchuk group acting on the orbit of a boundary ray, i.e. on Gamma/Lambda
    for Lambda the ray stabiliser.

    H elements are reduced words; equality goes through :func:`portrait`.
    """

    def __init__(self, ray: Ray | str = "1^inf", level: int = 16, radius: int = 8):
        self.ray = Ray.parse(ray) if isinstance(ray, str) else ray
        self.level = level
        self.radius = radius
        self.name = f"Grigorchuk on orbit of {self.ray}"
        self._points = None

    def identity(self):
        return ""

    def mul(self, g, h):
        return reduce(g + h)

    def inv(self, g):
        return inverse(g)

    def key(self, h):
        return portrait(h)

    def act(self, h, x):
        return act_word_on_ray_point(h, x, self.ray)

    def in_window(self, x):
        return isinstance(x, str) and len(x) == self.level

    def points(self):
        if self._points is None:
            self._points = schreier_ball(self.ray, self.radius, self.level).vertices
        return self._points

    @property
    def basepoint(self):
        return self.ray.head(self.level)

    def generators(self):
        return list(LETTERS)

    def is_infinite_orbit(self, x):
        return True

    def random_element(self, rng: random.Random):
        return reduce("".join(rng.choice(LETTERS) for _ in range(rng.randint(0, 6))))

    def translates(self, x):
        """Words moving x to pairwise distinct orbit points, in breadth-first order."""
        seen = {x}
        queue = deque([(x, "")])
        while queue:
            p, w = queue.popleft()
            for letter in LETTERS:
                try:
                    q = act_on_ray_point(letter, p, self.ray)
                except LevelExhausted:
                    return
                if q not in seen:
                    seen.add(q)
                    word = reduce(letter + w)
                    yield word
                    queue.append((q, word))

    def moves_infinitely_many(self, h):
        # the orbit is dense in the boundary, so an element fixing all but
        # finitely many of its points fixes the whole boundary
        return not is_identity(h)

    def fixes_outside_window(self, h):
        return is_identity(h)
