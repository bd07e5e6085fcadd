"""Ordering-induced subgraphs.

Vertices are added in the order ``v_1, ..., v_n``. Each new vertex looks at
its ordered parents (earlier neighbours) and keeps

1. all of them, if there are at most ``d``;
2. ``d`` of them, if there are more and they form a clique;
3. ``d + 1`` of them including a non-adjacent pair, otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import InputError, ProvenanceError, RigidityError
from .graph import Edge, Graph, canonical_edge, clique_intersection_condition, is_clique
from .rank import DEFAULT_TRIALS, generic_rank
from .seeding import derive_seed

LEXICOGRAPHIC = "lexicographic"
RANDOM = "random"
ENUMERATION_LIMIT = 8
_STREAM_ORDER = 21
_STREAM_CHOICE = 22
_STREAM_RANK = 23


@dataclass(frozen=True)
class Step:
    vertex: int
    case: int
    chosen: tuple[int, ...]
    nonadjacent: tuple[int, int] | None = None


@dataclass(frozen=True)
class PiSubgraph:
    graph: Graph
    ordering: tuple[int, ...]
    steps: tuple[Step, ...]

    def to_dict(self) -> dict:
        return {
            "n": self.graph.n,
            "ordering": list(self.ordering),
            "steps": [
                {
                    "vertex": s.vertex,
                    "case": s.case,
                    "chosen": list(s.chosen),
                    "nonadjacent": list(s.nonadjacent) if s.nonadjacent else None,
                }
                for s in self.steps
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PiSubgraph":
        steps = tuple(
            Step(s["vertex"], s["case"], tuple(s["chosen"]), tuple(s["nonadjacent"]) if s["nonadjacent"] else None)
            for s in data["steps"]
        )
        edges = [(s.vertex, w) for s in steps for w in s.chosen]
        return cls(Graph(data["n"], edges), tuple(data["ordering"]), steps)


def _check_ordering(G: Graph, pi: Sequence[int]) -> tuple[int, ...]:
    pi = tuple(int(v) for v in pi)
    if sorted(pi) != list(G.vertices):
        raise InputError("ordering must list every vertex exactly once")
    return pi


def ordered_parents(G: Graph, pi: Sequence[int], v: int) -> set[int]:
    pos = {u: i for i, u in enumerate(pi)}
    if v not in pos:
        raise InputError(f"vertex {v} is not in the ordering")
    return {w for w in G.neighbors(v) if pos[w] < pos[v]}


def _nonadjacent_pairs(G: Graph, parents: Sequence[int]) -> list[tuple[int, int]]:
    adj = G.adjacency
    return [(a, b) for a, b in itertools.combinations(sorted(parents), 2) if b not in adj[a]]


def build_pi_subgraph(
    G: Graph, pi: Sequence[int], d: int, policy: str = LEXICOGRAPHIC, seed: int | None = None
) -> PiSubgraph:
    if d < 2:
        raise InputError(f"ordering-induced subgraphs need d >= 2, got {d}")
    if policy not in (LEXICOGRAPHIC, RANDOM):
        raise InputError(f"unknown choice policy {policy!r}")
    if policy == RANDOM and seed is None:
        raise InputError("random policy needs a seed")
    pi = _check_ordering(G, pi)
    gen = np.random.default_rng(derive_seed(seed, _STREAM_CHOICE)) if policy == RANDOM else None
    adj = G.adjacency
    placed: set[int] = set()
    steps = []
    edges: list[Edge] = []
    for v in pi:
        parents = sorted(adj[v] & placed)
        placed.add(v)
        pair = None
        if len(parents) <= d:
            case, chosen = 1, parents
        elif is_clique(G, parents):
            case = 2
            if gen is None:
                chosen = parents[:d]
            else:
                chosen = sorted(int(x) for x in gen.choice(parents, size=d, replace=False))
        else:
            case = 3
            pairs = _nonadjacent_pairs(G, parents)
            if not pairs:
                raise RigidityError(f"vertex {v}: parents are not a clique but no non-adjacent pair exists")
            pair = pairs[0] if gen is None else pairs[int(gen.integers(len(pairs)))]
            rest = [w for w in parents if w not in pair]
            if gen is None:
                fill = rest[: d - 1]
            else:
                fill = [int(x) for x in gen.choice(rest, size=d - 1, replace=False)]
            chosen = sorted([*pair, *fill])
        steps.append(Step(v, case, tuple(chosen), pair))
        edges.extend((v, w) for w in chosen)
    return PiSubgraph(Graph(G.n, edges), pi, tuple(steps))


def validate_pi_subgraph(G: Graph, ps: PiSubgraph, d: int) -> None:
    """Re-derive every step's case from ``G`` and check the record."""
    pos = {u: i for i, u in enumerate(ps.ordering)}
    if sorted(ps.ordering) != list(G.vertices) or len(ps.steps) != G.n:
        raise ProvenanceError("ordering does not cover the vertex set")
    edges = set()
    for i, step in enumerate(ps.steps):
        v = step.vertex
        if ps.ordering[i] != v:
            raise ProvenanceError(f"step {i} records vertex {v}, ordering has {ps.ordering[i]}")
        parents = {w for w in G.adjacency[v] if pos[w] < pos[v]}
        chosen = set(step.chosen)
        if len(chosen) != len(step.chosen) or not chosen <= parents:
            raise ProvenanceError(f"vertex {v}: chosen set is not a set of ordered parents")
        if len(parents) <= d:
            ok = step.case == 1 and chosen == parents
        elif is_clique(G, parents):
            ok = step.case == 2 and len(chosen) == d
        else:
            pair = step.nonadjacent
            ok = (
                step.case == 3
                and len(chosen) == d + 1
                and pair is not None
                and set(pair) <= chosen
                and not G.has_edge(*pair)
            )
        if not ok:
            raise ProvenanceError(f"vertex {v}: step record violates case {step.case} rules")
        edges |= {canonical_edge(v, w) for w in chosen}
    if edges != set(ps.graph.edges):
        raise ProvenanceError("graph edges differ from the union of recorded choices")


def edge_count_profile(ps: PiSubgraph, d: int) -> int:
    contrib = {1: None, 2: d, 3: d + 1}
    total = 0
    for s in ps.steps:
        c = contrib.get(s.case, -1)
        total += len(s.chosen) if c is None else c
        if c == -1:
            raise ProvenanceError(f"unknown case {s.case}")
    if total != ps.graph.m:
        raise ProvenanceError(f"step profile sums to {total}, graph has {ps.graph.m} edges")
    return total


def sample_pi_subgraphs(G: Graph, d: int, count: int, seed: int) -> list[PiSubgraph]:
    if count < 1:
        raise InputError("count must be >= 1")
    return [_sample_one(G, d, seed, i) for i in range(count)]


def _sample_one(G: Graph, d: int, seed: int, index: int) -> PiSubgraph:
    gen = np.random.default_rng(derive_seed(seed, _STREAM_ORDER, index))
    pi = [int(v) for v in gen.permutation(G.n)]
    return build_pi_subgraph(G, pi, d, RANDOM, derive_seed(seed, _STREAM_CHOICE, index))


def enumerate_pi_subgraphs(G: Graph, d: int) -> Iterator[PiSubgraph]:
    """Every pi-subgraph over every ordering and every admissible choice.

    Exhaustive, so limited to small graphs; used as a test oracle.
    """
    if G.n > ENUMERATION_LIMIT:
        raise InputError(f"enumeration is limited to n <= {ENUMERATION_LIMIT}")
    adj = G.adjacency
    for pi in itertools.permutations(G.vertices):
        per_vertex = []
        placed: set[int] = set()
        for v in pi:
            parents = sorted(adj[v] & placed)
            placed.add(v)
            options = []
            if len(parents) <= d:
                options.append(Step(v, 1, tuple(parents)))
            elif is_clique(G, parents):
                options.extend(Step(v, 2, c) for c in itertools.combinations(parents, d))
            else:
                for c in itertools.combinations(parents, d + 1):
                    pairs = _nonadjacent_pairs(G, c)
                    if pairs:
                        options.append(Step(v, 3, c, pairs[0]))
            per_vertex.append(options)
        for steps in itertools.product(*per_vertex):
            edges = [(s.vertex, w) for s in steps for w in s.chosen]
            yield PiSubgraph(Graph(G.n, edges), tuple(pi), tuple(steps))


@dataclass
class ProbeResult:
    d: int
    hypotheses: dict[str, bool]
    tried: int
    witness: PiSubgraph | None = None
    witness_rank: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "hypotheses": dict(self.hypotheses),
            "tried": self.tried,
            "found": self.found,
            "witness": self.witness.to_dict() if self.witness else None,
            "witness_rank": self.witness_rank,
            "notes": list(self.notes),
        }


def dependence_hypotheses(G: Graph, d: int) -> dict[str, bool]:
    degree = G.n > 0 and min(G.degrees()) >= d * (d + 1)
    no_clique = all(not is_clique(G, G.adjacency[v]) for v in G.vertices)
    return {
        "min_degree": bool(degree),
        "no_clique_neighborhood": no_clique,
        "clique_intersection": clique_intersection_condition(G, d),
    }


def find_dependent_pi_subgraph(
    G: Graph, d: int, budget: int, seed: int, trials: int = DEFAULT_TRIALS
) -> ProbeResult:
    """Sample up to ``budget`` pi-subgraphs and return the first dependent one."""
    if budget < 1:
        raise InputError("budget must be >= 1")
    result = ProbeResult(d, dependence_hypotheses(G, d), 0)
    for i in range(budget):
        ps = _sample_one(G, d, seed, i)
        result.tried = i + 1
        r = generic_rank(G, d, ps.graph.edges, trials, derive_seed(seed, _STREAM_RANK, i))
        if r < ps.graph.m:
            result.witness, result.witness_rank = ps, r
            break
    return result
