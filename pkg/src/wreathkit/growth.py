"""Breadth-first ball enumeration and growth fits.

Any group works as long as it supplies a ``compose`` function and an
injective ``canonical`` form on the reachable elements; deduplication goes
through the canonical form only.
"""
from __future__ import annotations

import csv
import io
import os
import sys
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

import numpy as np


class MemoryBudgetExceeded(MemoryError):
    pass


class TableTooShort(ValueError):
    pass


@dataclass
class GrowthTable:
    sizes: list[int]
    sphere_sizes: list[int]
    generators: str = ""

    @property
    def radii(self) -> range:
        return range(len(self.sizes))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["radius", "ball", "sphere"])
        for n, (b, s) in enumerate(zip(self.sizes, self.sphere_sizes)):
            w.writerow([n, b, s])
        return buf.getvalue()


def default_budget_bytes() -> int | None:
    mb = os.environ.get("WREATHKIT_BUDGET_MB")
    return int(float(mb) * 2**20) if mb else None


def bfs_spheres(gens: Sequence, compose: Callable, canonical: Callable[..., Hashable], r: int,
                identity=None, budget_bytes: int | None = None):
    """Yield the spheres ``S_0, S_1, ..., S_r`` as lists of (element, key) pairs.

    ``compose(g, s)`` is right multiplication by a generator.  Spheres come
    out in discovery order, which is deterministic for a fixed ``gens`` order.
    """
    if budget_bytes is None:
        budget_bytes = default_budget_bytes()
    key0 = canonical(identity)
    seen = {key0}
    used = sys.getsizeof(key0)
    sphere = [(identity, key0)]
    yield sphere
    for _ in range(r):
        nxt = []
        for g, _k in sphere:
            for s in gens:
                h = compose(g, s)
                k = canonical(h)
                if k in seen:
                    continue
                seen.add(k)
                nxt.append((h, k))
                if budget_bytes is not None:
                    used += sys.getsizeof(k) + 64
                    if used > budget_bytes:
                        raise MemoryBudgetExceeded(f"ball enumeration exceeded {budget_bytes} bytes")
        sphere = nxt
        yield sphere


def ball_sizes(gens: Sequence, compose: Callable, canonical: Callable, r: int, identity,
               budget_bytes: int | None = None, description: str = "") -> GrowthTable:
    """Cumulative ball sizes ``|B_0|..|B_r|`` for the word metric of ``gens``.

    ``gens`` should be closed under inverses.
    """
    spheres = [len(s) for s in bfs_spheres(gens, compose, canonical, r, identity, budget_bytes)]
    return GrowthTable(list(np.cumsum(spheres).tolist()), spheres, description)


@dataclass
class GrowthReport:
    """Least-squares fits of ``log|B_n|``.

    ``poly_degree`` fits ``log|B_n| ~ alpha log(n + 1/2) + c`` (exact for the
    line, ``|B_n| = 2(n + 1/2)``);
    ``exp_base`` fits ``log|B_n| ~ n log(beta) + c``;
    ``stretched_exponent`` fits ``log log|B_n| ~ gamma log n + c`` on ``n >= 1``.
    Residuals are RMS in the fitted coordinates.  No growth type is claimed.
    """

    poly_degree: float
    poly_residual: float
    exp_base: float
    exp_residual: float
    stretched_exponent: float
    stretched_residual: float
    ratios: list = field(default_factory=list)

    @property
    def better_fit(self) -> str:
        return "exponential" if self.exp_residual < self.poly_residual else "polynomial"


def _lsq(x, y):
    A = np.vstack([x, np.ones_like(x)]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    return float(coef[0]), float(np.sqrt(np.mean(resid**2)))


def growth_report(t: GrowthTable) -> GrowthReport:
    if len(t.sizes) < 5:
        raise TableTooShort("need radii 0..4 at least")
    sizes = np.asarray(t.sizes, dtype=float)
    n = np.arange(len(sizes), dtype=float)
    logb = np.log(sizes)
    alpha, pres = _lsq(np.log(n + 0.5), logb)
    slope, eres = _lsq(n, logb)
    m = n >= 1
    ok = m & (sizes > 1)
    gamma, sres = _lsq(np.log(n[ok]), np.log(logb[ok]))
    ratios = (sizes[1:] / sizes[:-1]).tolist()
    return GrowthReport(alpha, pres, float(np.exp(slope)), eres, gamma, sres, ratios)
