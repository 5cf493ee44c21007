"""Finite wallings, cut kernels and their L1 / CND certificates.

A walling lives on a finite ground set (a window of H/L).  Walls are
bitmasks over the ground indices with non-negative rational weights.  A
wall M *cuts* a finite set F when F meets both M and its complement.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .wreath import FiniteAction, WindowEscape, WreathElement, WreathProduct


class WallingError(ValueError):
    pass


class AsymmetricInput(ValueError):
    pass


def cuts(M: int, F: int) -> bool:
    """Whether the wall M (bitmask) cuts the set F (bitmask)."""
    return bool(M & F) and bool(~M & F)


@dataclass
class Walling:
    ground: list
    walls: list = field(default_factory=list)  # (mask, Fraction)

    def __post_init__(self):
        self.ground = list(self.ground)
        self._index = {x: i for i, x in enumerate(self.ground)}
        if len(self._index) != len(self.ground):
            raise WallingError("repeated ground point")
        full = (1 << len(self.ground)) - 1
        walls = []
        for mask, weight in self.walls:
            weight = Fraction(weight)
            if not 0 < mask < full:
                raise WallingError(f"wall {mask:#x} is empty or the whole ground")
            if weight < 0:
                raise WallingError(f"negative weight {weight}")
            walls.append((int(mask), weight))
        self.walls = walls

    @property
    def n(self) -> int:
        return len(self.ground)

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise WindowEscape(f"point {x!r} is not in the walling's ground") from None

    def mask(self, points: Iterable) -> int:
        m = 0
        for x in points:
            m |= 1 << self.index(x)
        return m

    def members(self, mask: int) -> list:
        return [x for i, x in enumerate(self.ground) if mask >> i & 1]

    def scaled(self, c) -> "Walling":
        return Walling(self.ground, [(m, w * Fraction(c)) for m, w in self.walls])

    def permuted(self, perm: dict) -> "Walling":
        """Image walling under a bijection of the ground given as ``{x: perm(x)}``."""
        return Walling(self.ground, [(self.mask(perm[x] for x in self.members(m)), w) for m, w in self.walls])

    def same_measure(self, other: "Walling") -> bool:
        def tally(w):
            t: dict = {}
            for m, c in w.walls:
                t[m] = t.get(m, 0) + c
            return {m: c for m, c in t.items() if c}
        return self.ground == other.ground and tally(self) == tally(other)

    # file format: "ground n" then "weight bitmask" lines
    def to_text(self) -> str:
        lines = [f"ground {self.n}"] + [f"{w} {m}" for m, w in self.walls]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Walling":
        rows = [r.split() for r in text.splitlines() if r.strip() and not r.lstrip().startswith("#")]
        if not rows or rows[0][0] != "ground" or len(rows[0]) != 2:
            raise WallingError("line 1: expected 'ground n'")
        n = int(rows[0][1])
        walls = []
        for lineno, r in enumerate(rows[1:], start=2):
            if len(r) != 2:
                raise WallingError(f"line {lineno}: expected 'weight bitmask'")
            walls.append((int(r[1], 0), Fraction(r[0])))
        try:
            return cls(list(range(n)), walls)
        except WallingError as e:
            raise WallingError(f"{e} (walling file)") from None


def cut_weight(w: Walling, F) -> Fraction:
    """``mu{M : M cuts F}``; F is a bitmask or an iterable of ground points."""
    mask = F if isinstance(F, int) else w.mask(F)
    return sum((c for m, c in w.walls if cuts(m, mask)), Fraction(0))


def d_mu(w: Walling, x, y) -> Fraction:
    return cut_weight(w, (1 << w.index(x)) | (1 << w.index(y)))


def distance_matrix(w: Walling) -> list[list[Fraction]]:
    return [[d_mu(w, x, y) for y in w.ground] for x in w.ground]


def pointwise_quotient(W: WreathProduct, u1: WreathElement, u2: WreathElement) -> dict:
    """The lamp map ``x -> f1(x)^-1 f2(x)`` (identity values dropped)."""
    B = W.B
    f1, f2 = u1.as_dict(), u2.as_dict()
    out = {}
    for x in set(f1) | set(f2):
        v = B.mul(B.inv(f1.get(x, 0)), f2.get(x, 0))
        if v:
            out[x] = v
    return out


def D_mu(w: Walling, u1: WreathElement, u2: WreathElement, W: WreathProduct, A=None) -> Fraction:
    """Weight of the walls cutting ``Supp_A(f1^-1 f2) + {h1 L, h2 L}``."""
    A = W.A if A is None else A
    pts = {x for x, v in pointwise_quotient(W, u1, u2).items() if v not in A.members}
    pts.add(W.hset.coset(u1.top))
    pts.add(W.hset.coset(u2.top))
    return cut_weight(w, w.mask(pts))


def l1_embed(w: Walling) -> dict:
    """``x -> (weight_M [x in M])_M``; l1 distances reproduce d_mu exactly."""
    return {x: tuple(c if m >> i & 1 else Fraction(0) for m, c in w.walls) for i, x in enumerate(w.ground)}


def l1_distance(a: Sequence, b: Sequence) -> Fraction:
    return sum((abs(p - q) for p, q in zip(a, b)), Fraction(0))


def cnd_check(K, tol: float = 1e-9) -> bool:
    """Whether ``c^T K c <= tol`` for every zero-sum c (with ``|c| = 1``).

    K is compressed onto an orthonormal basis of the zero-sum hyperplane and
    its top eigenvalue is compared with ``tol``.
    """
    exact = isinstance(K, list)
    if exact:
        n = len(K)
        if any(len(row) != n for row in K):
            raise AsymmetricInput("kernel matrix is not square")
        if any(K[i][j] != K[j][i] for i in range(n) for j in range(i)):
            raise AsymmetricInput("kernel matrix is not symmetric")
    M = np.array(K, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise AsymmetricInput("kernel matrix is not square")
    if not exact and not np.allclose(M, M.T, rtol=0, atol=1e-12):
        raise AsymmetricInput("kernel matrix is not symmetric")
    n = M.shape[0]
    if n <= 1:
        return True
    # columns 1..n-1 of a QR of [1 | I] span the zero-sum hyperplane
    Q, _ = np.linalg.qr(np.column_stack([np.ones(n), np.eye(n)[:, : n - 1]]))
    V = Q[:, 1:]
    S = V.T @ M @ V
    return bool(np.linalg.eigvalsh((S + S.T) / 2).max() <= tol)


# -- corpora and invariant wallings ------------------------------------------

def random_walling(rng: random.Random, n: int, k: int, max_weight: int = 5) -> Walling:
    full = (1 << n) - 1
    walls = []
    for _ in range(k):
        m = rng.randint(1, full - 1)
        walls.append((m, Fraction(rng.randint(0, max_weight * 2), rng.randint(1, 2))))
    return Walling(list(range(n)), walls)


def dirac_walling(n: int, mask: int) -> Walling:
    return Walling(list(range(n)), [(mask, Fraction(1))])


def orbit_walling(action: FiniteAction, seeds: Sequence[tuple[int, Fraction]]) -> Walling:
    """H-invariant walling: every seed wall is spread evenly over its H-orbit."""
    pts = action.points()
    walls = []
    for seed, weight in seeds:
        orbit = sorted({sum(1 << action.act(h, x) for x in pts if seed >> x & 1) for h in action.H.elements()})
        for m in orbit:
            walls.append((m, Fraction(weight)))
    return Walling(pts, walls)


def cyclic_action(n: int) -> FiniteAction:
    from .groups import cyclic
    return FiniteAction(cyclic(n), [[(h + x) % n for x in range(n)] for h in range(n)], f"C{n} on {n} points")


def dihedral_action(n: int) -> FiniteAction:
    """D_n on the n-gon; group element ``(s, r)`` acts by ``x -> (-1)^s x + r``."""
    from .groups import dihedral
    D = dihedral(n)
    rows = []
    for g in D.elements():
        s, r = divmod(g, n)
        rows.append([((-x if s else x) + r) % n for x in range(n)])
    return FiniteAction(D, rows, f"D{n} on {n} points")


def all_masks_cut(n: int, F: int) -> Iterable[int]:
    """Every proper non-empty wall over n points cutting F (for exhaustive checks)."""
    full = (1 << n) - 1
    return (m for m in range(1, full) if cuts(m, F))


def pairs(points: Sequence) -> Iterable[tuple]:
    return itertools.combinations(points, 2)
