"""Polycompact and bounded radicals of semirestricted wreath products.

``predict_W`` / ``predict_B`` assemble the closed formulas from declared
instance data; ``conj_closure`` probes a single element by brute force and
either closes its conjugacy class, certifies escape by an explicit witness,
or gives up.  The two routes share nothing beyond the wreath arithmetic.
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .groups import FiniteGroup, Subgroup, core, subgroup, whole
from .wreath import CycleUnion, HSet, ShiftLine, WindowEscape, WreathElement, WreathProduct


class MissingOracle(ValueError):
    pass


# -- top parts -----------------------------------------------------------------

@dataclass(frozen=True)
class IntSubgroup:
    """``mZ`` inside Z (m = 0 is the trivial subgroup)."""

    m: int

    def __contains__(self, h) -> bool:
        return h == 0 if self.m == 0 else h % self.m == 0

    def is_trivial(self) -> bool:
        return self.m == 0

    def __and__(self, other: "IntSubgroup") -> "IntSubgroup":
        import math
        if self.m == 0 or other.m == 0:
            return IntSubgroup(0)
        return IntSubgroup(math.lcm(self.m, other.m))

    def __str__(self):
        return "0" if self.m == 0 else ("Z" if self.m == 1 else f"{self.m}Z")


@dataclass(frozen=True)
class Predicate:
    """A subgroup of H given by a membership test, with declared triviality."""

    name: str
    test: Callable = field(compare=False)
    trivial: bool = False

    def __contains__(self, h) -> bool:
        return bool(self.test(h))

    def is_trivial(self) -> bool:
        return self.trivial

    def __and__(self, other):
        return Predicate(f"{self.name} & {other}", lambda h: h in self and h in other,
                         self.trivial or other.is_trivial())

    def __str__(self):
        return self.name


def _meet(P, Q):
    if isinstance(P, IntSubgroup) and isinstance(Q, IntSubgroup):
        return P & Q
    if isinstance(P, Subgroup) and isinstance(Q, Subgroup):
        return P & Q
    if isinstance(P, Predicate):
        return P & Q
    if isinstance(Q, Predicate):
        return Q & P
    raise TypeError("cannot intersect these subgroup descriptions")


def _is_trivial(P) -> bool:
    return P.is_trivial()


# -- instances and descriptors ------------------------------------------------------

@dataclass
class RadicalInstance:
    """``B wr^A_X H`` with declared data about H and its action.

    ``N`` is the kernel of the action, ``N1`` the preimage of the union of
    finite normal subgroups of H/N, ``N2`` the elements acting as finitely
    supported permutations; ``WH`` and ``BH`` the radicals of H.  B is a
    finite group, hence compact.
    """

    B: FiniteGroup
    A: Subgroup
    hset: HSet
    N: object = None
    N1: object = None
    N2: object = None
    WH: object = None
    BH: object = None
    name: str = ""

    def wreath(self) -> WreathProduct:
        return WreathProduct(self.B, self.hset, self.A)

    def has_finite_orbits(self) -> bool:
        return any(not self.hset.is_infinite_orbit(x) for x in self.hset.points())

    def has_infinite_orbits(self) -> bool:
        return any(self.hset.is_infinite_orbit(x) for x in self.hset.points())


@dataclass
class RadicalDescriptor:
    """``(core^{X_inf} x lamp^{X_fin}) x| top``; lamp maps are finitely supported here."""

    core_part: Subgroup
    lamp_part: Subgroup
    lamp_tail: Subgroup
    top_part: object
    Xi_kind: str
    finite_orbits: bool
    infinite_orbits: bool
    which: str = "W"

    def is_trivial(self) -> bool:
        lamps = (not self.infinite_orbits or self.core_part.is_trivial()) and \
                (not self.finite_orbits or self.lamp_part.is_trivial())
        return lamps and _is_trivial(self.top_part)

    def summary(self) -> dict:
        return {
            "radical": self.which,
            "core_part": sorted(self.core_part.members),
            "lamp_part": sorted(self.lamp_part.members),
            "lamp_tail": sorted(self.lamp_tail.members),
            "top_part": str(self.top_part),
            "Xi": self.Xi_kind,
            "trivial": self.is_trivial(),
        }


def _require(inst: RadicalInstance, *names):
    for n in names:
        if getattr(inst, n) is None:
            raise MissingOracle(f"instance {inst.name or '?'} declares no {n}")


def _predict(inst: RadicalInstance, which: str) -> RadicalDescriptor:
    B, A = inst.B, inst.A
    radical_H = inst.WH if which == "W" else inst.BH
    radical_B = whole(B)  # B is finite: every conjugacy class is finite, B itself is compact
    fin, inf = inst.has_finite_orbits(), inst.has_infinite_orbits()
    if A.is_whole():
        _require(inst, "WH" if which == "W" else "BH")
        return RadicalDescriptor(whole(B), whole(B), whole(B), radical_H, "H", fin, inf, which)
    _require(inst, "N1", "N2", "WH" if which == "W" else "BH")
    Xi = _meet(inst.N1, inst.N2)
    C = core(B, A)
    return RadicalDescriptor(C, radical_B, radical_B & C, _meet(radical_H, Xi), "N' & N''", fin, inf, which)


def predict_W(inst: RadicalInstance) -> RadicalDescriptor:
    return _predict(inst, "W")


def predict_B(inst: RadicalInstance) -> RadicalDescriptor:
    return _predict(inst, "B")


def predict_W_partitioned(B: FiniteGroup, As: Sequence[Subgroup], top) -> RadicalDescriptor:
    """Single infinite orbit, partitioned power: ``C^X x| (N & W(H))`` with C the meet of the cores.

    ``top`` is the declared ``N & W(H)``.
    """
    C = whole(B)
    for A in As:
        C = C & core(B, A)
    return RadicalDescriptor(C, C, C, top, "N", False, True, "W")


def membership(g: WreathElement, d: RadicalDescriptor, hset: HSet) -> bool:
    for x, b in g.lamp:
        part = d.core_part if hset.is_infinite_orbit(x) else d.lamp_part
        if b not in part.members:
            return False
    return g.top in d.top_part


def radical_conditions_trivial(inst: RadicalInstance) -> bool:
    """The three conditions for ``W(G) = 1``, read directly off the instance."""
    _require(inst, "N1", "N2", "WH")
    top_trivial = _is_trivial(_meet(inst.WH, _meet(inst.N1, inst.N2)))
    lamp_ok = not inst.has_finite_orbits() or inst.B.order == 1
    core_ok = core(inst.B, inst.A).is_trivial()
    return top_trivial and lamp_ok and core_ok


# -- brute-force conjugacy probes -------------------------------------------------

@dataclass
class ClosureVerdict:
    kind: str                      # "Bounded" | "Escaped" | "BudgetExhausted"
    orbit: list = field(default_factory=list)
    witness: dict | None = None
    note: str = ""

    def to_json(self, W: WreathProduct) -> str:
        def enc(u):
            return {"lamp": [[x, b] for x, b in u.lamp], "top": u.top}
        body = {"kind": self.kind, "note": self.note}
        if self.kind == "Bounded":
            body["orbit"] = [enc(u) for u in self.orbit]
        if self.witness is not None:
            body["witness"] = {
                "mechanism": self.witness["mechanism"],
                "prefix": [enc(u) for u in self.witness["prefix"]],
                "conjugators": [enc(u) for u in self.witness["conjugators"]],
                "points": self.witness["points"],
            }
        return json.dumps(body, sort_keys=True, default=str)


def replay_escape(W: WreathProduct, g: WreathElement, witness: dict) -> bool:
    """Recompute every witness conjugate and check that its Supp_A contains the claimed
    point, the points being pairwise distinct."""
    pts = witness["points"]
    if len(pts) < 2 or len(set(pts)) != len(pts):
        return False
    base = g
    for c in witness["prefix"]:
        base = W.conj(c, base)
    for c, x in zip(witness["conjugators"], pts):
        if x not in W.supp_A(W.conj(c, base)):
            return False
    return True


def _value_outside_A(B: FiniteGroup, A: Subgroup, v: int) -> int | None:
    # some b with b v not in A
    for b in B.elements():
        if B.mul(b, v) not in A.members:
            return b
    return None


def _translation_escape(W: WreathProduct, g: WreathElement, steps: int):
    hs = W.hset
    for x, _ in g.lamp:
        if not hs.is_infinite_orbit(x):
            continue
        # make x a Supp_A point, conjugating by delta_x(b) if needed
        for b in W.B.elements():
            prefix = [W.delta(x, b)] if b else []
            try:
                base = W.conj(prefix[0], g) if prefix else g
            except WindowEscape:
                continue
            if x in W.supp_A(base):
                break
        else:
            continue  # f(x) lies in the core of A
        conjugators, points = [], []
        for t in hs.translates(x):
            try:
                W.conj(W.top(t), base)
            except WindowEscape:
                break
            conjugators.append(W.top(t))
            points.append(hs.act(t, x))
            if len(points) >= steps:
                break
        if len(points) >= 2:
            return {"mechanism": "translate", "prefix": prefix, "conjugators": conjugators, "points": points}
    return None


def _delta_escape(W: WreathProduct, g: WreathElement, steps: int):
    hs = W.hset
    if not hs.moves_infinitely_many(g.top) or W.A.is_whole():
        return None
    conjugators, points = [], []
    limit = len(hs.points()) + 4 * steps
    for x in itertools.islice(hs.moved_points(g.top), limit):
        if not (hs.in_window(x) and hs.in_window(hs.act(g.top, x))):
            continue
        conjugators.append(W.delta(x, _value_outside_A(W.B, W.A, g.value(x))))
        points.append(x)
        if len(points) >= steps:
            break
    if len(points) >= 2:
        return {"mechanism": "delta", "prefix": [], "conjugators": conjugators, "points": points}
    return None


def conj_closure(g: WreathElement, W: WreathProduct, gens: Sequence[WreathElement] | None = None,
                 budget: int = 20_000, steps: int = 6) -> ClosureVerdict:
    """Bounded with the exact conjugacy class, Escaped with a replayable witness, or BudgetExhausted.

    Escape certificates: a Supp_A point on an infinite orbit pushed along
    distinct translates, or ``delta_x(b)`` probes at infinitely many moved
    points of the top.  Bounded needs the class to close under conjugation
    by ``gens`` and every top in it to fix the complement of the window.
    """
    for finder in (_translation_escape, _delta_escape):
        w = finder(W, g, steps)
        if w is not None and replay_escape(W, g, w):
            return ClosureVerdict("Escaped", witness=w, note=w["mechanism"])
    if gens is None:
        gens = []
        for x in W.hset.points():
            gens.extend(W.lamp_generators(at=x))
        for h in W.hset.generators():
            gens.append(W.top(h))
    gens = list(gens)
    gens += [W.inverse(s) for s in gens]
    seen = {W.canonical(g): g}
    queue = deque([g])
    while queue:
        u = queue.popleft()
        if not W.hset.fixes_outside_window(u.top):
            return ClosureVerdict("BudgetExhausted", note="a conjugate's top moves points beyond the window")
        for s in gens:
            try:
                v = W.conj(s, u)
            except WindowEscape:
                return ClosureVerdict("BudgetExhausted", note="conjugation left the window")
            k = W.canonical(v)
            if k not in seen:
                if len(seen) >= budget:
                    return ClosureVerdict("BudgetExhausted", note=f"class exceeds {budget} elements")
                seen[k] = v
                queue.append(v)
    return ClosureVerdict("Bounded", orbit=sorted(seen.values(), key=lambda u: repr(W.canonical(u))))


# -- standard instances -------------------------------------------------------------

def _s3_with_transposition():
    from .groups import perm_id, symmetric
    S3 = symmetric(3)
    return S3, subgroup(S3, {0, perm_id(S3, (1, 0, 2))})


def wy_var2_instance(max_len: int = 8) -> RadicalInstance:
    """S3 with a core-free subgroup of order 2, Z acting on one cycle of each length."""
    B, A = _s3_with_transposition()
    zero = IntSubgroup(0)
    return RadicalInstance(B, A, CycleUnion(max_len), N=zero, N1=zero, N2=zero, WH=zero, BH=IntSubgroup(1),
                           name="wy_var2")


def shift_instance(B: FiniteGroup | None = None, A: Subgroup | None = None, lo: int = -32, hi: int = 32) -> RadicalInstance:
    """Z acting on itself by translation: a single infinite orbit."""
    if B is None:
        B, A = _s3_with_transposition()
    zero = IntSubgroup(0)
    return RadicalInstance(B, A, ShiftLine(lo, hi), N=zero, N1=zero, N2=zero, WH=zero, BH=IntSubgroup(1),
                           name=f"{B.name} over Z")


def grigorchuk_instance(level: int = 12, radius: int = 6) -> RadicalInstance:
    """S3 with S2 over the Schreier orbit of a boundary ray of the Grigorchuk group.

    The action on the orbit is faithful and the group has no nontrivial finite
    normal subgroup, so N, N' and W(H) are trivial.
    """
    from . import grigorchuk as gg
    B, A = _s3_with_transposition()
    triv = Predicate("1", gg.is_identity, trivial=True)
    return RadicalInstance(B, A, gg.GrigorchukOrbit("1^inf", level, radius), N=triv, N1=triv,
                           N2=Predicate("finitary", gg.is_identity, trivial=True), WH=triv, BH=None,
                           name="S3 over Grigorchuk orbit")


def finite_instance(B: FiniteGroup, A: Subgroup, hset) -> RadicalInstance:
    """B, H and X all finite: every radical is the whole group."""
    H = hset.H
    allH = whole(H)
    return RadicalInstance(B, A, hset, N=None, N1=allH, N2=allH, WH=allH, BH=allH, name=f"{B.name} wr {hset.name}")
