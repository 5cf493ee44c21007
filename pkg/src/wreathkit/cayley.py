"""Cayley balls and exact graph isomorphism by individualization-refinement."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .growth import bfs_spheres


class SizeBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class BallGraph:
    """Simple undirected graph on ``0..n-1``; edges are sorted ``(u, v)`` with ``u < v``."""

    n: int
    edges: tuple
    root: int = 0

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency()]

    def to_text(self) -> str:
        lines = [f"{self.n} {len(self.edges)} {self.root}"]
        lines += [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BallGraph":
        rows = [r.split() for r in text.strip().splitlines()]
        n, m, root = map(int, rows[0])
        edges = tuple(sorted((min(int(a), int(b)), max(int(a), int(b))) for a, b in rows[1:]))
        if len(edges) != m:
            raise ValueError(f"header says {m} edges, found {len(edges)}")
        return cls(n, edges, root)

    @classmethod
    def from_edges(cls, n: int, edges, root: int = 0) -> "BallGraph":
        es = {(min(u, v), max(u, v)) for u, v in edges if u != v}
        return cls(n, tuple(sorted(es)), root)


def cayley_ball(gens: Sequence, compose: Callable, canonical: Callable, r: int, identity,
                budget_bytes: int | None = None) -> BallGraph:
    """The ball of radius r in the Cayley graph, root = identity = vertex 0.

    Edges ``{g, gs}`` for every generator s with both ends in the ball;
    loops and parallel edges are dropped.
    """
    index: dict = {}
    elems: list = []
    for sphere in bfs_spheres(gens, compose, canonical, r, identity, budget_bytes):
        for g, k in sphere:
            index[k] = len(elems)
            elems.append(g)
    edges = set()
    for i, g in enumerate(elems):
        for s in gens:
            j = index.get(canonical(compose(g, s)))
            if j is not None and j != i:
                edges.add((min(i, j), max(i, j)))
    return BallGraph(len(elems), tuple(sorted(edges)), 0)


# -- isomorphism ------------------------------------------------------------------

def _refine(adj: list[list[int]], colors: list[int]) -> list[int]:
    """Colour refinement to the coarsest equitable partition finer than ``colors``.

    New colours are ranks of sorted signatures, so names are comparable
    across the two halves of a disjoint union.
    """
    ncls = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(len(adj))]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        k = len(rank)
        colors = new
        if k == ncls:
            return colors
        ncls = k


def verify_isomorphism(g1: BallGraph, g2: BallGraph, mapping: Sequence[int], rooted: bool = False) -> bool:
    """Edge-by-edge check that ``mapping`` is an isomorphism g1 -> g2."""
    if g1.n != g2.n or len(mapping) != g1.n or sorted(mapping) != list(range(g2.n)):
        return False
    if rooted and mapping[g1.root] != g2.root:
        return False
    e2 = set(g2.edges)
    if len(g1.edges) != len(e2):
        return False
    return all((min(mapping[u], mapping[v]), max(mapping[u], mapping[v])) in e2 for u, v in g1.edges)


def graph_isomorphic(g1: BallGraph, g2: BallGraph, rooted: bool = False,
                     max_nodes: int = 200_000) -> tuple[bool, list[int] | None]:
    """Decide isomorphism; on success also return a verified witness ``mapping[v1] = v2``.

    Works on the disjoint union: refine, individualize a vertex of the first
    graph against each candidate of the second in the same cell, recurse.
    """
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return False, None
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False, None
    n = g1.n
    adj = [list(a) for a in g1.adjacency()] + [[u + n for u in a] for a in g2.adjacency()]
    colors = [0] * (2 * n)
    if rooted:
        colors[g1.root] = colors[g2.root + n] = 1
    budget = [max_nodes]

    def search(colors):
        budget[0] -= 1
        if budget[0] < 0:
            raise SizeBudgetExceeded("isomorphism search exceeded its node budget")
        colors = _refine(adj, colors)
        cells: dict[int, tuple[list, list]] = {}
        for v in range(2 * n):
            cells.setdefault(colors[v], ([], []))[v >= n].append(v)
        target = None
        for c, (left, right) in sorted(cells.items()):
            if len(left) != len(right):
                return None
            if len(left) > 1 and (target is None or len(left) < len(cells[target][0])):
                target = c
        if target is None:
            mapping = [0] * n
            for left, right in cells.values():
                mapping[left[0]] = right[0] - n
            return mapping if verify_isomorphism(g1, g2, mapping, rooted) else None
        left, right = cells[target]
        v = left[0]
        fresh = max(colors) + 1
        for w in right:
            trial = list(colors)
            trial[v] = trial[w] = fresh
            found = search(trial)
            if found is not None:
                return found
        return None

    mapping = search(colors)
    return (True, mapping) if mapping is not None else (False, None)


def brute_force_isomorphic(g1: BallGraph, g2: BallGraph, rooted: bool = False) -> bool:
    """Try every bijection; for tiny graphs only."""
    import itertools

    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return False
    return any(verify_isomorphism(g1, g2, p, rooted) for p in itertools.permutations(range(g2.n)))
