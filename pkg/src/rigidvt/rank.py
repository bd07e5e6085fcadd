"""Generic rank in the d-dimensional rigidity matroid.

A generic point is replaced by coordinates drawn uniformly from GF(p). The
rank of the rigidity matrix at such a point never exceeds the generic rank,
and equals it unless the point hits the zero set of a nonzero minor, which by
Schwartz-Zippel happens with probability at most ``deg / p`` per trial. Taking
the maximum over a few trials drives this to nothing.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError, PropertyViolation
from .graph import Edge, Graph, canonical_edge
from .linalg import P, left_kernel_mod_p, rank_mod_p, submod
from .seeding import derive_seed

DEFAULT_TRIALS = 3
_STREAM_REALIZATION = 1


@dataclass(frozen=True)
class Realization:
    d: int
    coords: np.ndarray  # shape (n, d), uint64 residues mod P

    def __post_init__(self):
        if self.d < 1:
            raise InputError(f"dimension must be >= 1, got {self.d}")
        if self.coords.ndim != 2 or self.coords.shape[1] != self.d:
            raise InputError(f"coordinates must have shape (n, {self.d})")

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, Realization)
            and self.d == other.d
            and np.array_equal(self.coords, other.coords)
        )

    __hash__ = None


def random_realization(G: Graph | int, d: int, seed: int) -> Realization:
    n = G if isinstance(G, int) else G.n
    if d < 1:
        raise InputError(f"dimension must be >= 1, got {d}")
    gen = np.random.default_rng(derive_seed(seed, _STREAM_REALIZATION, n, d))
    coords = gen.integers(0, P, size=(n, d), dtype=np.uint64, endpoint=False)
    return Realization(d, coords)


def realization_from_ints(coords: Sequence[Sequence[int]]) -> Realization:
    arr = np.array([[int(x) % P for x in row] for row in coords], dtype=np.uint64)
    if arr.ndim != 2:
        raise InputError("coordinates must be a rectangular table")
    return Realization(arr.shape[1], arr)


def rigidity_matrix(G: Graph, rho: Realization, edges: Iterable[Edge] | None = None) -> np.ndarray:
    """Rows ``p_u - p_v`` in the columns of ``u`` and ``p_v - p_u`` in those
    of ``v`` (the constant factor 2 of the Jacobian is dropped)."""
    if rho.n < G.n:
        raise InputError(f"realization covers {rho.n} vertices, graph has {G.n}")
    edges = G.edges if edges is None else [canonical_edge(*e) for e in edges]
    d = rho.d
    R = np.zeros((len(edges), d * G.n), dtype=np.uint64)
    for i, (u, v) in enumerate(edges):
        if not (0 <= u < G.n and 0 <= v < G.n) or u == v:
            raise InputError(f"pair ({u}, {v}) is not a pair of distinct vertices of the graph")
        diff = submod(rho.coords[u], rho.coords[v])
        R[i, d * u : d * u + d] = diff
        R[i, d * v : d * v + d] = submod(np.zeros(d, dtype=np.uint64), diff)
    return R


def full_rank(n: int, d: int) -> int:
    """Rank of the complete graph on ``n`` vertices in dimension ``d``."""
    if n <= d + 1:
        return n * (n - 1) // 2
    return d * n - d * (d + 1) // 2


def maxwell_cap(n: int, m: int, d: int) -> int:
    return min(m, full_rank(n, d))


def trial_seeds(seed: int, trials: int) -> list[int]:
    return [derive_seed(seed, t) for t in range(trials)]


def generic_rank(
    G: Graph,
    d: int,
    edges: Iterable[Edge] | None = None,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> int:
    """Rank of ``edges`` (default: all of ``E(G)``) in the generic rigidity
    matroid on ``V(G)``. ``edges`` may be any pairs of ``K_V``."""
    if trials < 1:
        raise InputError("trials must be >= 1")
    edges = list(G.edges if edges is None else {canonical_edge(*e) for e in edges})
    if not edges:
        return 0
    cap = maxwell_cap(G.n, len(edges), d)
    best = 0
    for s in trial_seeds(seed, trials):
        R = rigidity_matrix(G, random_realization(G, d, s), edges)
        best = max(best, rank_mod_p(R))
        if best == cap:
            break
    return best


def is_independent(G: Graph, d: int, edges: Iterable[Edge] | None = None, trials: int = DEFAULT_TRIALS, seed: int = 0) -> bool:
    edges = list(G.edges if edges is None else {canonical_edge(*e) for e in edges})
    return generic_rank(G, d, edges, trials, seed) == len(edges)


def is_rigid(G: Graph, d: int, trials: int = DEFAULT_TRIALS, seed: int = 0) -> bool:
    if G.n < 1:
        raise InputError("empty graph")
    if G.n <= d + 1:
        return G.is_complete()
    if G.m < full_rank(G.n, d):
        return False
    return generic_rank(G, d, trials=trials, seed=seed) == full_rank(G.n, d)


def non_redundant_edge(G: Graph, d: int, trials: int = DEFAULT_TRIALS, seed: int = 0) -> Edge | None:
    """An edge ``e`` of a rigid graph with ``G - e`` not rigid, or ``None``.

    At a realization where ``E`` reaches full rank, a row is outside the span
    of the others exactly when every equilibrium stress vanishes on it, so one
    left-kernel computation classifies all edges at once. A reported edge is
    re-checked with an independent rank query of ``E - e``.
    """
    target = full_rank(G.n, d)
    for s in trial_seeds(seed, trials):
        R = rigidity_matrix(G, random_realization(G, d, s))
        if rank_mod_p(R) < target:
            continue
        K = left_kernel_mod_p(R)
        support = K.any(axis=0) if K.size else np.zeros(G.m, dtype=bool)
        loose = [G.edges[i] for i in np.flatnonzero(~support)]
        if not loose:
            return None
        e = loose[0]
        rest = [f for f in G.edges if f != e]
        if generic_rank(G, d, rest, trials, derive_seed(seed, 7, s)) < target:
            return e
    return None


def is_redundantly_rigid(G: Graph, d: int, trials: int = DEFAULT_TRIALS, seed: int = 0) -> bool:
    if G.m < 1:
        raise InputError("redundant rigidity needs at least one edge")
    if not is_rigid(G, d, trials, seed):
        return False
    if G.n <= d + 1:
        # complete on at most d+1 vertices: deleting an edge breaks completeness
        return False
    return non_redundant_edge(G, d, trials, seed) is None


def is_redundantly_rigid_bruteforce(G: Graph, d: int, trials: int = DEFAULT_TRIALS, seed: int = 0) -> bool:
    """Per-edge rank queries ``r(E - e)``; slow reference for small graphs."""
    if not is_rigid(G, d, trials, seed):
        return False
    target = full_rank(G.n, d)
    return all(
        generic_rank(G, d, [f for f in G.edges if f != e], trials, seed) == target for e in G.edges
    )


@dataclass
class RankReport:
    n: int
    m: int
    d: int
    rank: int
    cap: int
    independent: bool
    rigid: bool
    trials: int
    seed: int

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RankReport":
        return cls(**data)


def rank_report(G: Graph, d: int, trials: int = DEFAULT_TRIALS, seed: int = 0) -> RankReport:
    r = generic_rank(G, d, trials=trials, seed=seed)
    rigid = G.is_complete() if G.n <= d + 1 else r == full_rank(G.n, d)
    return RankReport(
        n=G.n,
        m=G.m,
        d=d,
        rank=r,
        cap=maxwell_cap(G.n, G.m, d),
        independent=r == G.m,
        rigid=rigid,
        trials=trials,
        seed=seed,
    )


# --- clique partition bound ---------------------------------------------------


def vertex_span(edges: Iterable[Edge]) -> set[int]:
    return {v for e in edges for v in e}


@dataclass(frozen=True)
class CliquePartition:
    """A cover of ``E(G)`` by a set of loose edges and a list of parts."""

    loose: frozenset[Edge]
    parts: tuple[frozenset[Edge], ...]

    def __init__(self, loose: Iterable[Edge], parts: Iterable[Iterable[Edge]]):
        object.__setattr__(self, "loose", frozenset(canonical_edge(*e) for e in loose))
        object.__setattr__(
            self, "parts", tuple(frozenset(canonical_edge(*e) for e in part) for part in parts)
        )

    def validate(self, G: Graph, d: int) -> None:
        edges = set(G.edges)
        if not self.loose <= edges:
            raise InputError(f"E_0 contains non-edges: {sorted(self.loose - edges)[:3]}")
        covered = set(self.loose)
        for i, part in enumerate(self.parts, start=1):
            if not part <= edges:
                raise InputError(f"part E_{i} contains non-edges: {sorted(part - edges)[:3]}")
            span = len(vertex_span(part))
            if span < d + 1:
                raise InputError(f"part E_{i} spans {span} vertices, needs at least {d + 1}")
            covered |= part
        if covered != edges:
            raise InputError(f"partition misses {len(edges - covered)} edges, e.g. {sorted(edges - covered)[0]}")


def partition_rank_bound(P_: CliquePartition, G: Graph, d: int) -> int:
    """``|E_0| + sum_i (d |V(E_i)| - C(d+1, 2))``."""
    P_.validate(G, d)
    return len(P_.loose) + sum(d * len(vertex_span(part)) - d * (d + 1) // 2 for part in P_.parts)


@dataclass
class BoundReport:
    rank: int
    bound: int

    @property
    def holds(self) -> bool:
        return self.rank <= self.bound


def verify_bound_dominates_rank(
    P_: CliquePartition, G: Graph, d: int, trials: int = DEFAULT_TRIALS, seed: int = 0
) -> BoundReport:
    bound = partition_rank_bound(P_, G, d)
    rep = BoundReport(generic_rank(G, d, trials=trials, seed=seed), bound)
    if not rep.holds:
        raise PropertyViolation(f"rank {rep.rank} exceeds partition bound {bound}")
    return rep
