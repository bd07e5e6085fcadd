"""Simple undirected graphs on dense integer vertices, plus the structural
queries used by the rigidity code: neighbourhood cliques, vertex
connectivity and lexicographic products."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InputError, ResourceError

Edge = tuple[int, int]

MAX_CLIQUES = 10**6
MAX_PRODUCT_VERTICES = 10**5


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``edges`` is stored canonically: each pair as ``(small, large)`` and the
    tuple sorted, so two graphs with the same edge set compare equal.
    """

    n: int
    edges: tuple[Edge, ...]
    _adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        canon = set()
        for pair in edges:
            u, v = (int(x) for x in pair)
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            e = canonical_edge(u, v)
            if e in canon:
                raise InputError(f"duplicate edge {e}")
            canon.add(e)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[int]], n: int | None = None) -> "Graph":
        """Build a graph, tolerating repeated pairs (they are merged)."""
        uniq = {canonical_edge(*map(int, e)) for e in edges}
        if n is None:
            n = 1 + max((v for e in uniq for v in e), default=-1)
        return cls(n, uniq)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return self._adj

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InputError(f"vertex {v} out of range for n={self.n}")

    def neighbors(self, v: int) -> frozenset[int]:
        self._check(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return v in self._adj[u]

    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def add_edges(self, pairs: Iterable[Edge]) -> "Graph":
        return Graph.from_edges(itertools.chain(self.edges, pairs), self.n)

    def remove_edges(self, pairs: Iterable[Edge]) -> "Graph":
        drop = {canonical_edge(*e) for e in pairs}
        return Graph(self.n, (e for e in self.edges if e not in drop))

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return ``G[S]`` relabelled to ``0..|S|-1`` and the label map."""
        labels = sorted(set(vertices))
        index = {v: i for i, v in enumerate(labels)}
        sub = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(labels), sub), labels

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [], deque([s])
            while queue:
                u = queue.popleft()
                comp.append(u)
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def neighbors(G: Graph, v: int) -> frozenset[int]:
    return G.neighbors(v)


def is_clique(G: Graph, S: Iterable[int]) -> bool:
    S = list(S)
    for v in S:
        G._check(v)
    adj = G.adjacency
    return all(v in adj[u] for u, v in itertools.combinations(S, 2))


def _bron_kerbosch(adj: dict[int, set[int]], limit: int) -> list[frozenset[int]]:
    # Tomita pivoting; iterative to avoid recursion limits on dense inputs.
    out: list[frozenset[int]] = []
    stack = [(frozenset(), set(adj), set())]
    while stack:
        R, P, X = stack.pop()
        if not P and not X:
            out.append(R)
            if len(out) > limit:
                raise ResourceError(f"more than {limit} maximal cliques")
            continue
        pivot = max(P | X, key=lambda u: len(P & adj[u]))
        for v in list(P - adj[pivot]):
            stack.append((R | {v}, P & adj[v], X & adj[v]))
            P.remove(v)
            X.add(v)
    return out


def maximal_cliques(G: Graph, limit: int = MAX_CLIQUES) -> list[frozenset[int]]:
    adj = {v: set(G.adjacency[v]) for v in G.vertices}
    return _bron_kerbosch(adj, limit)


def maximal_neighborhood_cliques(G: Graph, v: int, limit: int = MAX_CLIQUES) -> list[frozenset[int]]:
    """Inclusion-maximal cliques of the graph induced on ``N(v)``.

    An empty neighbourhood has no cliques at all (not even the empty one).
    """
    nbrs = G.neighbors(v)
    if not nbrs:
        return []
    adj = {u: set(G.adjacency[u] & nbrs) for u in nbrs}
    cliques = _bron_kerbosch(adj, limit)
    return sorted(cliques, key=lambda c: sorted(c))


def clique_intersection_condition(G: Graph, d: int, limit: int = MAX_CLIQUES) -> bool:
    """True iff at every vertex, distinct maximal cliques of ``G[N(v)]``
    share at most ``d - 2`` vertices."""
    if d < 2:
        raise InputError(f"dimension must be >= 2, got {d}")
    for v in G.vertices:
        cliques = maximal_neighborhood_cliques(G, v, limit)
        for H1, H2 in itertools.combinations(cliques, 2):
            if len(H1 & H2) > d - 2:
                return False
    return True


def neighborhoods_all_cliques(G: Graph) -> bool:
    return all(is_clique(G, G.adjacency[v]) for v in G.vertices)


def components_are_complete(G: Graph) -> bool:
    return all(is_clique(G, comp) for comp in G.components())


# --- vertex connectivity -------------------------------------------------


def _local_cut(G: Graph, s: int, t: int, cap: int | None = None) -> tuple[int, set[int]]:
    """Max number of internally disjoint s-t paths (s, t non-adjacent) and a
    minimum separating vertex set, by unit-capacity flow on the split graph.

    Node ``v`` becomes ``2v`` (in) -> ``2v+1`` (out) with capacity 1, except for
    ``s`` and ``t`` whose internal arc is unbounded.
    """
    n = G.n
    # residual capacities, sparse
    res: dict[tuple[int, int], int] = {}
    out: list[list[int]] = [[] for _ in range(2 * n)]
    big = n + 1

    def arc(a: int, b: int, c: int) -> None:
        if (a, b) not in res:
            out[a].append(b)
            out[b].append(a)
            res[(a, b)] = 0
            res.setdefault((b, a), 0)
        res[(a, b)] += c

    for v in range(n):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in G.edges:
        arc(2 * u + 1, 2 * v, big)
        arc(2 * v + 1, 2 * u, big)

    src, snk = 2 * s + 1, 2 * t
    flow = 0
    while cap is None or flow < cap:
        parent = {src: src}
        queue = deque([src])
        while queue and snk not in parent:
            a = queue.popleft()
            for b in out[a]:
                if b not in parent and res[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if snk not in parent:
            break
        b = snk
        while b != src:
            a = parent[b]
            res[(a, b)] -= 1
            res[(b, a)] += 1
            b = a
        flow += 1
    # vertices whose in-node is reachable but out-node is not form the cut
    reach = {src}
    queue = deque([src])
    while queue:
        a = queue.popleft()
        for b in out[a]:
            if b not in reach and res[(a, b)] > 0:
                reach.add(b)
                queue.append(b)
    cut = {v for v in range(n) if 2 * v in reach and 2 * v + 1 not in reach}
    return flow, cut


def min_vertex_cut(G: Graph) -> tuple[int, set[int] | None]:
    """Vertex connectivity and a minimum separating set (``None`` for complete
    graphs, where the convention ``kappa = n - 1`` applies)."""
    if G.n < 2:
        raise InputError("vertex connectivity needs at least 2 vertices")
    if G.is_complete():
        return G.n - 1, None
    if not G.is_connected():
        return 0, set()
    adj = G.adjacency
    degs = G.degrees()
    v = min(G.vertices, key=lambda x: degs[x])
    best, best_cut = degs[v], set(adj[v])
    for w in G.vertices:
        if w != v and w not in adj[v]:
            k, cut = _local_cut(G, v, w, best)
            if k < best:
                best, best_cut = k, cut
    for x, y in itertools.combinations(sorted(adj[v]), 2):
        if y not in adj[x]:
            k, cut = _local_cut(G, x, y, best)
            if k < best:
                best, best_cut = k, cut
    return best, best_cut


def vertex_connectivity(G: Graph) -> int:
    return min_vertex_cut(G)[0]


def separates(G: Graph, cut: Iterable[int]) -> bool:
    """True iff deleting ``cut`` leaves a disconnected graph."""
    cut = set(cut)
    rest = [v for v in G.vertices if v not in cut]
    if len(rest) < 2:
        return False
    sub, _ = G.induced_subgraph(rest)
    return not sub.is_connected()


# --- products ----------------------------------------------------------------


def lexicographic_product(G: Graph, H: Graph, limit: int = MAX_PRODUCT_VERTICES) -> Graph:
    """``G[H]``: vertex ``(g, h)`` is labelled ``g * |V(H)| + h``."""
    if G.n == 0 or H.n == 0:
        raise InputError("lexicographic product needs nonempty factors")
    if G.n * H.n > limit:
        raise ResourceError(f"product has {G.n * H.n} vertices, limit {limit}")
    k = H.n
    edges = []
    for g, g2 in G.edges:
        for h in range(k):
            for h2 in range(k):
                edges.append((g * k + h, g2 * k + h2))
    for g in range(G.n):
        for h, h2 in H.edges:
            edges.append((g * k + h, g * k + h2))
    return Graph(G.n * k, edges)
