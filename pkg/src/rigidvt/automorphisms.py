"""Automorphism groups by individualisation and colour refinement.

The search builds a strong generating set along a base ``b_1..b_L`` (the
first path of the search tree). For each level ``i`` and each candidate
image ``w`` of ``b_i`` that is not yet reachable by the generators found
below that level, an exhaustive backtracking search decides whether some
automorphism fixes ``b_1..b_{i-1}`` and sends ``b_i`` to ``w``. Because every
candidate in the refined cell is decided, the orbit of ``b_i`` in the
pointwise stabiliser is complete at each level, so the generators found
generate the full group.
"""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError, ResourceError
from .graph import Edge, Graph, canonical_edge

MAX_VERTICES = 1000
NODE_BUDGET = 10**7


@dataclass(frozen=True)
class VertexPermutation:
    image: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise InputError("image is not a permutation")

    def __call__(self, v: int) -> int:
        return self.image[v]

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.image))

    def preserves(self, G: Graph) -> bool:
        edges = set(G.edges)
        return all(canonical_edge(self.image[u], self.image[v]) in edges for u, v in G.edges)


@dataclass(frozen=True)
class AutomorphismGenerators:
    generators: tuple[VertexPermutation, ...]
    base: tuple[int, ...] = ()
    # orbit length of each base point in the stabiliser of the earlier ones
    transversal_sizes: tuple[int, ...] = ()

    def group_order(self) -> int:
        order = 1
        for s in self.transversal_sizes:
            order *= s
        return order

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.used > self.limit:
            raise ResourceError(f"automorphism search exceeded {self.limit} nodes")


def _refine(adj: Sequence[frozenset[int]], colors: list[int]):
    """Colour refinement to a stable colouring.

    Returns the new colouring (colours are ranks ``0..c-1``, assigned by
    sorted signature, so the result is isomorphism-invariant) and a trace
    that two corresponding partitions must share.
    """
    trace = []
    ncolors = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(len(adj))]
        ordered = sorted(set(sigs))
        rank = {s: i for i, s in enumerate(ordered)}
        colors = [rank[s] for s in sigs]
        trace.append(tuple(sorted(Counter(sigs).items())))
        if len(ordered) == ncolors:
            return colors, tuple(trace)
        ncolors = len(ordered)


def _individualize(colors: list[int], v: int) -> list[int]:
    out = [2 * c for c in colors]
    out[v] += 1
    return out


def _target_cell(colors: list[int]) -> int | None:
    counts = Counter(colors)
    cells = [c for c, k in counts.items() if k > 1]
    return min(cells) if cells else None


class _Search:
    def __init__(self, G: Graph, budget: int):
        if G.n > MAX_VERTICES:
            raise ResourceError(f"automorphism search limited to {MAX_VERTICES} vertices, got {G.n}")
        self.G = G
        self.adj = G.adjacency
        self.edges = set(G.edges)
        self.budget = _Budget(budget)
        # first path: partitions P_0..P_L and base points
        colors, trace = _refine(self.adj, [0] * G.n)
        self.path = [(colors, trace)]
        self.base: list[int] = []
        while (cell := _target_cell(colors)) is not None:
            b = min(v for v in range(G.n) if colors[v] == cell)
            colors, trace = _refine(self.adj, _individualize(colors, b))
            self.base.append(b)
            self.path.append((colors, trace))

    def _is_automorphism(self, image: list[int]) -> bool:
        return all(canonical_edge(image[u], image[v]) in self.edges for u, v in self.G.edges)

    def find(self, level: int, w: int) -> list[int] | None:
        """An automorphism fixing base[:level] and sending base[level] to w."""
        # base[:level] are singleton cells of path[level], so starting side B
        # from the same colouring fixes them
        colors = self.path[level][0]
        if colors[w] != colors[self.base[level]]:
            return None
        return self._descend(level, colors, w)

    def _descend(self, level: int, colors_b: list[int], w: int) -> list[int] | None:
        self.budget.tick()
        colors_b, trace_b = _refine(self.adj, _individualize(colors_b, w))
        colors_a, trace_a = self.path[level + 1]
        if trace_a != trace_b:
            return None
        if level + 1 == len(self.base):
            # discrete on both sides: colour c on side A maps to colour c on side B
            where_b = {c: v for v, c in enumerate(colors_b)}
            image = [where_b[colors_a[v]] for v in range(self.G.n)]
            return image if self._is_automorphism(image) else None
        cell = colors_a[self.base[level + 1]]
        for y in (v for v in range(self.G.n) if colors_b[v] == cell):
            found = self._descend(level + 1, colors_b, y)
            if found is not None:
                return found
        return None


def _orbit(point: int, gens: Iterable[Sequence[int]]) -> set[int]:
    gens = list(gens)
    orbit = {point}
    frontier = [point]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = g[x]
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return orbit


@functools.lru_cache(maxsize=64)
def _generators_cached(G: Graph, budget: int) -> AutomorphismGenerators:
    search = _Search(G, budget)
    n = G.n
    gens: list[tuple[int, list[int]]] = []  # (level found, image)
    sizes = [0] * len(search.base)
    for level in reversed(range(len(search.base))):
        b = search.base[level]
        colors = search.path[level][0]
        cell = [v for v in range(n) if colors[v] == colors[b]]
        below = [g for lvl, g in gens]
        orbit = _orbit(b, below)
        for w in cell:
            if w in orbit:
                continue
            image = search.find(level, w)
            if image is not None:
                gens.append((level, image))
                below.append(image)
                orbit = _orbit(b, below)
        sizes[level] = len(orbit)
    perms = tuple(VertexPermutation(tuple(g)) for _, g in reversed(gens))
    return AutomorphismGenerators(perms, tuple(search.base), tuple(sizes))


def automorphism_generators(G: Graph, budget: int = NODE_BUDGET) -> AutomorphismGenerators:
    """A generating set of ``Aut(G)`` (empty for groups of order 1)."""
    return _generators_cached(G, budget)


def vertex_orbits(G: Graph, gens: AutomorphismGenerators | None = None) -> list[set[int]]:
    gens = automorphism_generators(G) if gens is None else gens
    images = [g.image for g in gens]
    seen: set[int] = set()
    orbits = []
    for v in G.vertices:
        if v not in seen:
            o = _orbit(v, images)
            seen |= o
            orbits.append(o)
    return orbits


def is_vertex_transitive(G: Graph, budget: int = NODE_BUDGET) -> bool:
    if G.n < 1:
        raise InputError("empty graph")
    gens = automorphism_generators(G, budget)
    return len(_orbit(0, [g.image for g in gens])) == G.n


def pair_orbit(G: Graph, u: int, v: int, gens: AutomorphismGenerators | None = None) -> set[Edge]:
    """Orbit of the unordered pair ``{u, v}`` under ``Aut(G)``."""
    G._check(u)
    G._check(v)
    if u == v:
        raise InputError("pair_orbit needs two distinct vertices")
    gens = automorphism_generators(G) if gens is None else gens
    images = [g.image for g in gens]
    start = canonical_edge(u, v)
    orbit = {start}
    frontier = [start]
    while frontier:
        a, b = frontier.pop()
        for g in images:
            e = canonical_edge(g[a], g[b])
            if e not in orbit:
                orbit.add(e)
                frontier.append(e)
    return orbit


def pair_orbits(G: Graph) -> list[set[Edge]]:
    """Partition of all vertex pairs into ``Aut(G)``-orbits."""
    gens = automorphism_generators(G)
    seen: set[Edge] = set()
    out = []
    for u in G.vertices:
        for v in range(u + 1, G.n):
            if (u, v) not in seen:
                o = pair_orbit(G, u, v, gens)
                seen |= o
                out.append(o)
    return out
