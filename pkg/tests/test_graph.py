import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigidvt.constructions import (
    circulant_graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    petersen_graph,
    wheel_graph,
)
from rigidvt.errors import InputError, ResourceError
from rigidvt.graph import (
    Graph,
    clique_intersection_condition,
    components_are_complete,
    is_clique,
    lexicographic_product,
    maximal_neighborhood_cliques,
    min_vertex_cut,
    neighborhoods_all_cliques,
    neighbors,
    separates,
    vertex_connectivity,
)

from conftest import from_nx, to_nx


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


class TestGraphType:
    def test_canonical_edges(self):
        G = Graph(4, [(3, 1), (0, 2), (1, 0)])
        assert G.edges == ((0, 1), (0, 2), (1, 3))
        assert G == Graph(4, [(1, 3), (2, 0), (0, 1)])

    @pytest.mark.parametrize("edges", [[(0, 0)], [(0, 5)], [(0, 1), (1, 0)], [(-1, 2)]])
    def test_rejects_invalid(self, edges):
        with pytest.raises(InputError):
            Graph(3, edges)

    @given(graphs())
    def test_degree_sum(self, G):
        assert sum(G.degrees()) == 2 * G.m


class TestNeighbors:
    def test_examples(self):
        assert neighbors(complete_graph(4), 0) == {1, 2, 3}
        assert neighbors(cycle_graph(5), 0) == {1, 4}
        assert neighbors(complete_bipartite_graph(3, 3), 0) == {3, 4, 5}

    def test_out_of_range(self):
        with pytest.raises(InputError):
            neighbors(cycle_graph(5), 5)


class TestCliques:
    def test_is_clique(self):
        assert is_clique(complete_graph(4), {0, 1, 2})
        assert not is_clique(cycle_graph(5), {0, 1, 2})
        assert is_clique(cycle_graph(5), set())
        assert is_clique(cycle_graph(5), {3})

    def test_maximal_neighborhood_cliques(self):
        assert maximal_neighborhood_cliques(complete_graph(5), 0) == [{1, 2, 3, 4}]
        assert maximal_neighborhood_cliques(complete_bipartite_graph(3, 3), 0) == [{3}, {4}, {5}]
        assert maximal_neighborhood_cliques(cycle_graph(5), 0) == [{1}, {4}]

    def test_clique_limit(self):
        # neighbourhood of the hub is a cocktail-party graph with 2^4 maximal cliques
        cp = nx.complement(nx.Graph([(2 * i, 2 * i + 1) for i in range(4)]))
        g = nx.Graph(cp)
        g.add_edges_from((8, v) for v in range(8))
        with pytest.raises(ResourceError):
            maximal_neighborhood_cliques(from_nx(g), 8, limit=10)

    @given(graphs(max_n=8), st.data())
    @settings(max_examples=60)
    def test_cliques_match_networkx(self, G, data):
        v = data.draw(st.integers(0, G.n - 1))
        nbrs = G.neighbors(v)
        expected = {frozenset(c) for c in nx.find_cliques(to_nx(G).subgraph(nbrs))} if nbrs else set()
        assert set(maximal_neighborhood_cliques(G, v)) == expected

    def test_intersection_condition(self):
        assert clique_intersection_condition(complete_bipartite_graph(6, 6), 2)
        assert clique_intersection_condition(complete_graph(5), 2)
        # vertex 1 of the wheel sees maximal cliques {0,2} and {0,5}
        W5 = wheel_graph(5)
        assert maximal_neighborhood_cliques(W5, 1) == [{0, 2}, {0, 5}]
        assert not clique_intersection_condition(W5, 2)
        assert clique_intersection_condition(W5, 3)

    def test_intersection_condition_needs_d2(self):
        with pytest.raises(InputError):
            clique_intersection_condition(complete_graph(3), 1)

    @given(graphs())
    def test_clique_neighborhoods_force_complete_components(self, G):
        if neighborhoods_all_cliques(G):
            assert components_are_complete(G)

    def test_complete_components_example(self):
        G = Graph(7, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (3, 5), (3, 6), (4, 6)])
        assert neighborhoods_all_cliques(G) and components_are_complete(G)


class TestConnectivity:
    def test_examples(self):
        assert vertex_connectivity(complete_graph(5)) == 4
        assert vertex_connectivity(cycle_graph(6)) == 2
        # oracle: networkx max-flow over all cross pairs gives 6
        K66 = complete_bipartite_graph(6, 6)
        assert min(nx.node_connectivity(to_nx(K66), u, v) for u in range(6) for v in range(6, 12)) == 6
        assert vertex_connectivity(K66) == 6

    def test_needs_two_vertices(self):
        with pytest.raises(InputError):
            vertex_connectivity(Graph(1))

    def test_disconnected(self):
        assert vertex_connectivity(Graph(4, [(0, 1), (2, 3)])) == 0

    @given(graphs(max_n=9))
    @settings(max_examples=150, deadline=None)
    def test_matches_networkx(self, G):
        if G.n < 2:
            return
        kappa, cut = min_vertex_cut(G)
        assert kappa == nx.node_connectivity(to_nx(G))
        if cut is not None:
            assert len(cut) == kappa
            assert separates(G, cut)

    @pytest.mark.parametrize("G", [petersen_graph(), circulant_graph(13, [1, 2, 3]), cycle_graph(7)])
    def test_vertex_deletion(self, G):
        kappa = vertex_connectivity(G)
        for v in G.vertices:
            sub, _ = G.induced_subgraph(set(G.vertices) - {v})
            assert vertex_connectivity(sub) >= kappa - 1


class TestLexicographicProduct:
    def test_c5_k2(self):
        G = lexicographic_product(cycle_graph(5), complete_graph(2))
        assert G.n == 10 and set(G.degrees()) == {5}

    def test_identity_factor(self):
        G = petersen_graph()
        assert lexicographic_product(G, Graph(1)) == G

    def test_k2_k2(self):
        assert lexicographic_product(complete_graph(2), complete_graph(2)) == complete_graph(4)

    def test_limit(self):
        with pytest.raises(ResourceError):
            lexicographic_product(complete_graph(10), complete_graph(10), limit=50)

    @given(graphs(max_n=5), graphs(max_n=4))
    @settings(max_examples=40)
    def test_degree_formula(self, G, H):
        P = lexicographic_product(G, H)
        for g in G.vertices:
            for h in H.vertices:
                assert P.degree(g * H.n + h) == G.degree(g) * H.n + H.degree(h)

    @given(graphs(max_n=5), graphs(max_n=4))
    @settings(max_examples=40)
    def test_matches_networkx(self, G, H):
        P = lexicographic_product(G, H)
        ref = nx.lexicographic_product(to_nx(G), to_nx(H))
        assert {tuple(sorted((g * H.n + h, g2 * H.n + h2))) for (g, h), (g2, h2) in ref.edges()} == set(P.edges)
