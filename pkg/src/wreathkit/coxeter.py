"""Coxeter matrices with a group action, rank-2 orders, relators, and the
permutation model of finitary permutations of Z extended by the shift."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .wreath import FiniteAction, WindowEscape

INF = math.inf


class InfiniteEntry(ValueError):
    pass


class OracleUnstable(RuntimeError):
    """New pair orbits keep appearing as the window grows."""


# -- matrices ------------------------------------------------------------------

@dataclass
class CoxeterMatrix:
    """``mu`` on a window of vertices.

    ``entry`` may be any function of two vertices (used for rule-defined
    matrices on Z); ``generators`` are maps on vertices used by the
    invariance check, partial maps returning None outside their domain.
    """

    points: list
    entry: Callable
    generators: list = field(default_factory=list)
    name: str = ""

    def __call__(self, s, t):
        return self.entry(s, t)

    @classmethod
    def from_rule(cls, phi: Callable[[int], float], lo: int = -16, hi: int = 16, name: str = "") -> "CoxeterMatrix":
        """``mu(i, j) = phi(|i - j|)`` off the diagonal, on the window ``[lo, hi)`` of Z with the shift."""
        def entry(i, j):
            return 1 if i == j else phi(abs(i - j))
        return cls(list(range(lo, hi)), entry, [lambda v: v + 1, lambda v: v - 1], name or "rule")

    @classmethod
    def explicit(cls, table: dict, points: Sequence, generators=(), name: str = "") -> "CoxeterMatrix":
        return cls(list(points), lambda s, t: table[(s, t)], list(generators), name or "explicit")

    @classmethod
    def on_action(cls, action: FiniteAction, entry: Callable, name: str = "") -> "CoxeterMatrix":
        gens = [(lambda v, h=h: action.act(h, v)) for h in action.generators()]
        return cls(action.points(), entry, gens, name or action.name)

    def with_entries(self, override: Callable, name: str = "") -> "CoxeterMatrix":
        """Same window and generators, ``override(s, t)`` replacing ``mu`` where not None."""
        base = self.entry

        def entry(s, t):
            v = override(s, t)
            return base(s, t) if v is None else v
        return CoxeterMatrix(self.points, entry, self.generators, name or self.name + "'")


def neumann_matrix(lo: int = -16, hi: int = 16) -> CoxeterMatrix:
    """``mu(i, j) = 3`` for ``|i - j| = 1`` and 2 otherwise."""
    return CoxeterMatrix.from_rule(lambda d: 3 if d == 1 else 2, lo, hi, "neumann")


@dataclass
class ValidationReport:
    symmetry: list = field(default_factory=list)
    diagonal: list = field(default_factory=list)
    off_diagonal: list = field(default_factory=list)
    invariance: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.symmetry or self.diagonal or self.off_diagonal or self.invariance)


def _valid_value(v) -> bool:
    return v == INF or (isinstance(v, (int, np.integer)) and v >= 2)


def validate(m: CoxeterMatrix) -> ValidationReport:
    rep = ValidationReport()
    pts = m.points
    window = set(pts)
    for s in pts:
        if m(s, s) != 1:
            rep.diagonal.append(s)
        for t in pts:
            if s == t:
                continue
            if m(s, t) != m(t, s):
                rep.symmetry.append((s, t))
            if not _valid_value(m(s, t)):
                rep.off_diagonal.append((s, t))
    for k, g in enumerate(m.generators):
        for s in pts:
            gs = g(s)
            if gs not in window:
                continue
            for t in pts:
                gt = g(t)
                if gt in window and m(gs, gt) != m(s, t):
                    rep.invariance.append((k, s, t))
    return rep


# -- rank two ---------------------------------------------------------------------

def _reflection_pair(two_c):
    if isinstance(two_c, int):
        s = np.array([[-1, two_c], [0, 1]], dtype=np.int64)
        t = np.array([[1, 0], [two_c, -1]], dtype=np.int64)
    else:
        s = np.array([[-1.0, two_c], [0.0, 1.0]])
        t = np.array([[1.0, 0.0], [two_c, -1.0]])
    return s, t


def geometric_product(m) -> np.ndarray:
    """``sigma_s sigma_t`` in the rank-2 geometric representation, ``B(e_s, e_t) = -cos(pi/m)``.

    Integer matrices when ``2 cos(pi/m)`` is an integer (m = 2, 3, oo).
    """
    if m == INF:
        two_c = 2
    elif m in (2, 3):
        two_c = {2: 0, 3: 1}[m]
    else:
        two_c = 2.0 * math.cos(math.pi / m)
    s, t = _reflection_pair(two_c)
    return s @ t


def dihedral_order(m, tol: float = 1e-6, cap: int = 10_000):
    """Order of ``sigma_s sigma_t``; ``INF`` for infinite order.

    A product with trace at least 2 that is not the identity is a nontrivial
    unipotent (trace exactly 2 at m = oo, decided in integers), hence of
    infinite order.  The trace is -2 at m = 2, so the test is one-sided.
    """
    P = geometric_product(m)
    I = np.eye(2, dtype=P.dtype)
    exact = P.dtype.kind == "i"

    def is_id(M):
        return np.array_equal(M, I) if exact else np.allclose(M, I, atol=tol)

    tr = np.trace(P)
    if (tr >= 2 if exact else tr >= 2 - 1e-12) and not is_id(P):
        return INF
    Q = P.copy()
    for k in range(1, cap + 1):
        if is_id(Q):
            return k
        Q = Q @ P
    return INF


# -- wreathed Coxeter elements ---------------------------------------------------

@dataclass(frozen=True)
class WreathedCoxElement:
    """``w_{v_1} ... w_{v_k} . top``."""

    word: tuple = ()
    top: object = 0
    tokens: str = ""


def reduce_word(word: Sequence) -> tuple:
    """Cancel adjacent equal letters (``w_v^2 = 1``)."""
    out: list = []
    for v in word:
        if out and out[-1] == v:
            out.pop()
        else:
            out.append(v)
    return tuple(out)


def _tpow(n: int) -> str:
    if n == 0:
        return ""
    return "t" * n if n > 0 else "T" * (-n)


def relator(g, h, i: int, j: int, m: CoxeterMatrix, action: Callable | None = None,
            reps: Sequence = (0,), identity=0) -> WreathedCoxElement:
    """``r_{g,h} = (g t_i g^-1 h t_j h^-1)^{mu(g v_i, h v_j)}`` as a word in the letters ``w_v``.

    ``action(g, v)`` defaults to translation on Z; ``reps`` are orbit representatives.
    Tokens spell the relator in ``w`` (= w at the first representative), ``t`` and ``T = t^-1``
    when H = Z acts simply transitively.
    """
    act = action or (lambda g, v: g + v)
    a, b = act(g, reps[i]), act(h, reps[j])
    mu = m(a, b)
    if mu == INF:
        raise InfiniteEntry(f"mu({a}, {b}) is infinite")
    tokens = ""
    if action is None and len(reps) == 1 and reps[0] == 0:
        unit = f"{_tpow(g)}w{_tpow(-g)}{_tpow(h)}w{_tpow(-h)}"
        tokens = f"({unit})^{mu}"
    return WreathedCoxElement((a, b) * int(mu), identity, tokens)


def r_n(n: int, m: CoxeterMatrix) -> WreathedCoxElement:
    """``(w t^n w t^-n)^{mu(0, n)}``."""
    return relator(0, n, 0, 0, m)


# -- the permutation model --------------------------------------------------------

@dataclass(frozen=True)
class NeumannPerm:
    """``u . t^shift`` with u a permutation of the window ``[lo, hi)`` (identity outside)."""

    lo: int
    images: tuple
    shift: int = 0

    def is_identity(self) -> bool:
        return self.shift == 0 and all(x == self.lo + i for i, x in enumerate(self.images))

    def __call__(self, x: int) -> int:
        y = x + self.shift
        i = y - self.lo
        return self.images[i] if 0 <= i < len(self.images) else y


def _right_mul_transposition(images: list, lo: int, v: int) -> None:
    # u -> u o (v v+1)
    i = v - lo
    if not (0 <= i and i + 1 < len(images)):
        raise WindowEscape(f"transposition ({v} {v + 1}) leaves the window")
    images[i], images[i + 1] = images[i + 1], images[i]


def neumann_model(w, window: tuple[int, int] = (-32, 32)) -> NeumannPerm:
    """Evaluate ``w_v -> (v v+1)``, ``t -> (n -> n+1)``.

    ``w`` is a :class:`WreathedCoxElement` (top an integer shift) or a token
    string over ``w``, ``t``, ``T``.  Normal form ``(u, k)`` with
    ``(u, k) w = (u o (k k+1), k)``.
    """
    lo, hi = window
    images = list(range(lo, hi))
    if isinstance(w, WreathedCoxElement):
        for v in w.word:
            _right_mul_transposition(images, lo, v)
        return NeumannPerm(lo, tuple(images), int(w.top))
    k = 0
    for c in w:
        if c == "w":
            _right_mul_transposition(images, lo, k)
        elif c == "t":
            k += 1
        elif c == "T":
            k -= 1
        elif c in " ()":
            continue
        else:
            raise ValueError(f"bad token {c!r}")
    return NeumannPerm(lo, tuple(images), k)


def expand_tokens(tokens: str) -> str:
    """Expand one outer power ``(...)^k``; plain strings pass through."""
    tokens = tokens.replace(" ", "")
    if tokens.startswith("(") and ")^" in tokens:
        body, k = tokens[1:].rsplit(")^", 1)
        return body * int(k)
    return tokens


def model_order(tokens: str, window: tuple[int, int] = (-32, 32), cap: int = 1000) -> int:
    """Order of a token word in the permutation model."""
    base = expand_tokens(tokens)
    for k in range(1, cap + 1):
        if neumann_model(base * k, window).is_identity():
            return k
    raise RuntimeError("order exceeds cap")


# -- presentations ---------------------------------------------------------------------

def independence_probe(p: int, m: CoxeterMatrix) -> bool:
    """Replace every ``mu(n, n+p)`` by oo and test that ``sigma_0 sigma_p`` has infinite order."""
    if m(0, p) == INF:
        raise InfiniteEntry(f"mu(0, {p}) is already infinite")
    lo, hi = min(m.points), max(m.points) + 1
    if not (lo <= 0 < hi and lo <= p < hi):
        grown = CoxeterMatrix(list(range(min(lo, p - 1), max(hi, p + 2))), m.entry, m.generators, m.name)
        return independence_probe(p, grown)
    mu2 = m.with_entries(lambda s, t: INF if abs(s - t) == abs(p) and s != t else None)
    if not validate(mu2).ok:
        return False
    return dihedral_order(mu2(0, p)) == INF


@dataclass
class PresentationReport:
    compactly_presented: bool | None
    orbit_counts: list
    windows: list
    note: str = ""


def pair_orbits_shift(m: CoxeterMatrix, radius: int) -> set:
    """Z-orbits of finite-entry pairs with ``|v - w| < radius``, named by the difference."""
    return {d for d in range(-radius + 1, radius) if m.entry(0, d) != INF}


def pair_orbits_finite(m: CoxeterMatrix, action: FiniteAction) -> int:
    pts = action.points()
    seen, count = set(), 0
    for s in pts:
        for t in pts:
            if (s, t) in seen or m(s, t) == INF:
                continue
            count += 1
            for h in action.H.elements():
                seen.add((action.act(h, s), action.act(h, t)))
    return count


def compact_presented(m: CoxeterMatrix, orbit_oracle: Callable[[int], int] | None = None,
                      windows: Sequence[int] = (8, 16, 32, 64, 128), finitely_many_vertex_orbits: bool = True,
                      stabilizers_compactly_generated: bool = True, H_compactly_presented: bool = True,
                      raise_unstable: bool = True) -> PresentationReport:
    """Count orbits of finite-entry pairs on growing windows.

    Stable counts over the last half of the windows give True (together with
    the declared side conditions); counts that grow at every step raise
    :class:`OracleUnstable` (or report None with ``raise_unstable=False``).
    """
    oracle = orbit_oracle or (lambda r: len(pair_orbits_shift(m, r)))
    counts = [oracle(r) for r in windows]
    side = finitely_many_vertex_orbits and stabilizers_compactly_generated and H_compactly_presented
    tail = counts[len(counts) // 2:]
    if len(set(tail)) == 1:
        return PresentationReport(side, counts, list(windows), "orbit count stable")
    if all(a < b for a, b in zip(counts, counts[1:])):
        if raise_unstable:
            raise OracleUnstable(f"pair-orbit counts keep growing: {counts}")
        return PresentationReport(None, counts, list(windows), "orbit count grows with the window")
    return PresentationReport(None, counts, list(windows), "orbit count undecided")
