"""Eventually periodic subsets of Z with three-valued membership.

A set is a finite window ``[lo, hi)`` of explicit membership values plus a
periodic pattern on each tail.  Tail patterns are indexed by ``n mod p``
(absolute residues), so shifting rotates them.  Membership values are
``True``, ``False`` or ``None`` (undetermined); undetermined values
propagate through Boolean operations with Kleene logic and any question
whose answer depends on them raises :class:`TailUndetermined`.
"""
from __future__ import annotations

import math
from typing import Iterable


class TailUndetermined(ValueError):
    """The answer depends on membership values the descriptor does not fix."""


class InfiniteSet(ValueError):
    pass


def _and(a, b):
    if a is False or b is False:
        return False
    if a is None or b is None:
        return None
    return True


def _or(a, b):
    if a is True or b is True:
        return True
    if a is None or b is None:
        return None
    return False


def _not(a):
    return None if a is None else not a


def _xor(a, b):
    if a is None or b is None:
        return None
    return a != b


def _min_period(pat: tuple) -> tuple:
    p = len(pat)
    for d in range(1, p + 1):
        if p % d == 0 and all(pat[i] == pat[i % d] for i in range(p)):
            return pat[:d]
    return pat


class EPSet:
    __slots__ = ("lo", "hi", "mid", "left", "right")

    def __init__(self, lo: int, hi: int, mid: Iterable, left: Iterable = (False,), right: Iterable = (False,)):
        mid = tuple(mid)
        left = _min_period(tuple(left))
        right = _min_period(tuple(right))
        if len(mid) != hi - lo or not left or not right:
            raise ValueError("window length mismatch or empty tail pattern")
        # absorb window cells that agree with the tails
        i, j = 0, len(mid)
        while i < j and mid[i] == left[(lo + i) % len(left)]:
            i += 1
        while j > i and mid[j - 1] == right[(lo + j - 1) % len(right)]:
            j -= 1
        lo, hi = lo + i, lo + j
        if lo == hi:
            # empty window: slide the boundary to its leftmost valid position
            p = math.lcm(len(left), len(right))
            if all(left[r % len(left)] == right[r % len(right)] for r in range(p)):
                lo = hi = 0
            else:
                while left[(lo - 1) % len(left)] == right[(lo - 1) % len(right)]:
                    lo = hi = lo - 1
        self.lo, self.hi = lo, hi
        self.mid = mid[i:j]
        self.left, self.right = left, right

    # -- constructors -----------------------------------------------------

    @classmethod
    def empty(cls) -> "EPSet":
        return cls(0, 0, ())

    @classmethod
    def full(cls) -> "EPSet":
        return cls(0, 0, (), (True,), (True,))

    @classmethod
    def finite(cls, pts: Iterable[int]) -> "EPSet":
        pts = set(pts)
        if not pts:
            return cls.empty()
        lo, hi = min(pts), max(pts) + 1
        return cls(lo, hi, (n in pts for n in range(lo, hi)))

    @classmethod
    def interval(cls, a: int, b: int) -> "EPSet":
        return cls.finite(range(a, b))

    @classmethod
    def ray_up(cls, a: int) -> "EPSet":
        """``[a, oo)``."""
        return cls(a, a, (), (False,), (True,))

    @classmethod
    def ray_down(cls, a: int) -> "EPSet":
        """``(-oo, a)``."""
        return cls(a, a, (), (True,), (False,))

    @classmethod
    def periodic(cls, residues: Iterable[int], p: int) -> "EPSet":
        pat = tuple(r in {x % p for x in residues} for r in range(p))
        return cls(0, 0, (), pat, pat)

    @classmethod
    def unknown_from(cls, a: int) -> "EPSet":
        """Known empty below a, undetermined from a on."""
        return cls(a, a, (), (False,), (None,))

    # -- membership --------------------------------------------------------

    def value(self, n: int):
        if n < self.lo:
            return self.left[n % len(self.left)]
        if n >= self.hi:
            return self.right[n % len(self.right)]
        return self.mid[n - self.lo]

    def __contains__(self, n: int) -> bool:
        v = self.value(n)
        if v is None:
            raise TailUndetermined(f"membership of {n} is undetermined")
        return v

    def key(self) -> tuple:
        return (self.lo, self.hi, self.mid, self.left, self.right)

    def __eq__(self, other):
        return isinstance(other, EPSet) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"EPSet(lo={self.lo}, hi={self.hi}, mid={self.mid}, left={self.left}, right={self.right})"

    # -- algebra -----------------------------------------------------------

    def _combine(self, other: "EPSet", op) -> "EPSet":
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        if lo >= hi:
            lo = hi = min(self.lo, other.lo)
        mid = [op(self.value(n), other.value(n)) for n in range(lo, hi)]
        pl = math.lcm(len(self.left), len(other.left))
        pr = math.lcm(len(self.right), len(other.right))
        left = [op(self.left[r % len(self.left)], other.left[r % len(other.left)]) for r in range(pl)]
        right = [op(self.right[r % len(self.right)], other.right[r % len(other.right)]) for r in range(pr)]
        return EPSet(lo, hi, mid, left, right)

    def __and__(self, other):
        return self._combine(other, _and)

    def __or__(self, other):
        return self._combine(other, _or)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: _and(a, _not(b)))

    def __xor__(self, other):
        return self._combine(other, _xor)

    def complement(self) -> "EPSet":
        return EPSet(self.lo, self.hi, map(_not, self.mid), map(_not, self.left), map(_not, self.right))

    def shift(self, k: int) -> "EPSet":
        """``{n + k : n in self}``."""
        pl, pr = len(self.left), len(self.right)
        return EPSet(self.lo + k, self.hi + k, self.mid,
                     (self.left[(r - k) % pl] for r in range(pl)),
                     (self.right[(r - k) % pr] for r in range(pr)))

    def reflect(self) -> "EPSet":
        """``{-n : n in self}``."""
        pl, pr = len(self.left), len(self.right)
        return EPSet(1 - self.hi, 1 - self.lo, reversed(self.mid),
                     (self.right[(-r) % pr] for r in range(pr)),
                     (self.left[(-r) % pl] for r in range(pl)))

    # -- size ----------------------------------------------------------------

    def is_finite(self):
        """True / False, or None when the tails are undetermined."""
        tails = self.left + self.right
        if any(v is True for v in tails):
            return False
        if any(v is None for v in tails):
            return None
        return True

    def is_empty(self) -> bool:
        return self.is_finite() is True and not any(v is not False for v in self.mid)

    def count(self) -> int:
        fin = self.is_finite()
        if fin is None or any(v is None for v in self.mid):
            raise TailUndetermined("cardinality depends on undetermined values")
        if not fin:
            raise InfiniteSet("set is infinite")
        return sum(1 for v in self.mid if v)

    def elements(self) -> list[int]:
        self.count()
        return [self.lo + i for i, v in enumerate(self.mid) if v]

    def in_range(self, a: int, b: int) -> list[int]:
        return [n for n in range(a, b) if n in self]
