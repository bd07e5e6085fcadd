import itertools
from fractions import Fraction

import networkx as nx
import pytest

from rigidvt.constructions import (
    circulant_graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
    tight_counterexample,
)
from rigidvt.graph import Graph, lexicographic_product

ACCEPTANCE_LINES: list[str] = []


def record(criterion: int, ok: bool, detail: str) -> None:
    line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def from_nx(g) -> Graph:
    g = nx.convert_node_labels_to_integers(g)
    return Graph(g.number_of_nodes(), g.edges())


def to_nx(G: Graph):
    g = nx.Graph()
    g.add_nodes_from(G.vertices)
    g.add_edges_from(G.edges)
    return g


def connected_atlas(n: int) -> list[Graph]:
    """All connected graphs on exactly ``n`` vertices, up to isomorphism."""
    return [from_nx(g) for g in nx.graph_atlas_g() if g.number_of_nodes() == n and nx.is_connected(g)]


def brute_force_automorphisms(G: Graph) -> list[tuple[int, ...]]:
    edges = set(G.edges)
    out = []
    for perm in itertools.permutations(G.vertices):
        if all(tuple(sorted((perm[u], perm[v]))) in edges for u, v in G.edges):
            out.append(perm)
    return out


def oracle_rational_rank(n: int, edges, d: int, coords) -> int:
    """Rigidity-matrix rank over Q, built and reduced independently of the
    package (integer coordinates, Fraction elimination)."""
    rows = []
    for u, v in edges:
        row = [Fraction(0)] * (d * n)
        for k in range(d):
            diff = coords[u][k] - coords[v][k]
            row[d * u + k] = Fraction(diff)
            row[d * v + k] = Fraction(-diff)
        rows.append(row)
    rank = 0
    cols = d * n
    for c in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def c_lex_k(n: int, m: int) -> Graph:
    return lexicographic_product(cycle_graph(n), complete_graph(m))


def vt_corpus() -> dict[str, Graph]:
    """Connected vertex-transitive graphs used for theorem corroboration."""
    return {
        "C5": cycle_graph(5),
        "C6": cycle_graph(6),
        "K4": complete_graph(4),
        "K7": complete_graph(7),
        "K13": complete_graph(13),
        "K33": complete_bipartite_graph(3, 3),
        "K66": complete_bipartite_graph(6, 6),
        "petersen": petersen_graph(),
        "C10(1,2,3)": circulant_graph(10, [1, 2, 3]),
        "C13(1,2,3)": circulant_graph(13, [1, 2, 3]),
        "C25(1..6)": circulant_graph(25, range(1, 7)),
        "C5[K2]": c_lex_k(5, 2),
        "C5[K3]": c_lex_k(5, 3),
        "C6[K3]": c_lex_k(6, 3),
        "C5[K5]": c_lex_k(5, 5),
        "tight2": tight_counterexample(2).graph,
    }


@pytest.fixture(scope="session")
def corpus():
    return vt_corpus()


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def c5():
    return cycle_graph(5)


@pytest.fixture
def p3():
    return path_graph(3)


def random_partition_instance(rng, d: int):
    """A random graph with a random valid cover ``E_0, E_1..E_s`` of its edges.

    Parts span at least ``d + 1`` vertices; leftover edges that cannot form a
    large enough part go to ``E_0``. Parts may overlap.
    """
    from rigidvt.rank import CliquePartition, vertex_span

    n = int(rng.integers(d + 2, 11))
    p = float(rng.uniform(0.3, 0.9))
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    if not edges:
        edges = [(0, 1)]
    G = Graph(n, edges)
    if rng.random() < 0.5:
        # induced parts on random vertex sets: much closer to the true rank
        parts, covered = [], set()
        for _ in range(int(rng.integers(1, 5))):
            S = set(rng.choice(n, size=int(rng.integers(d + 1, n + 1)), replace=False).tolist())
            part = [e for e in G.edges if e[0] in S and e[1] in S]
            if len(vertex_span(part)) >= d + 1:
                parts.append(part)
                covered |= set(part)
        return G, CliquePartition([e for e in G.edges if e not in covered], parts)
    order = [G.edges[i] for i in rng.permutation(G.m)]
    loose = [e for e in order if rng.random() < 0.25]
    rest = [e for e in order if e not in set(loose)]
    parts, current = [], []
    for e in rest:
        current.append(e)
        if len(vertex_span(current)) >= d + 1 and rng.random() < 0.5:
            parts.append(current)
            current = []
    if current:
        if len(vertex_span(current)) >= d + 1:
            parts.append(current)
        else:
            loose.extend(current)
    if parts and rng.random() < 0.3:
        # overlapping part: re-cover a random subset of edges
        extra = [e for e in G.edges if rng.random() < 0.5]
        if len(vertex_span(extra)) >= d + 1:
            parts.append(extra)
    return G, CliquePartition(loose, parts)
