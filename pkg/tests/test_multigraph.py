from __future__ import annotations

from itertools import combinations, product

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from labcount.errors import InputError, UsageError
from labcount.labelings import vertex_sums
from labcount.multigraph import (
    Multigraph,
    component_analysis,
    format_graph,
    generate_connected_graphs,
    loopless_is_bipartite,
    magic_quotient,
    parse_blocks,
    parse_graph,
    path_graph,
)


@st.composite
def multigraphs(draw, max_n=5, max_edges=7, directed=None):
    n = draw(st.integers(1, max_n))
    edges = draw(
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_edges)
    )
    d = draw(st.booleans()) if directed is None else directed
    return Multigraph(n, tuple(edges), d)


class TestParse:
    def test_k2(self):
        g = parse_graph("graph undirected\nvertices 2\n0 1\n")
        assert g == Multigraph(2, ((0, 1),))

    def test_loop(self):
        g = parse_graph("graph undirected\nvertices 1\n0 0\n")
        assert g.edges == ((0, 0),) and g.n == 1

    def test_oriented_k12(self, oriented_k12):
        assert parse_graph("graph directed\nvertices 3\n1 0\n0 2\n") == oriented_k12

    def test_comments_and_blank_lines(self):
        text = "# a comment\n\ngraph undirected\n# another\nvertices 3\n\n0 1\n1 2\n"
        assert parse_graph(text) == path_graph(3)

    @pytest.mark.parametrize(
        "text, line",
        [
            ("grph undirected\nvertices 2\n", "line 1"),
            ("graph undirected\nvertex 2\n", "line 2"),
            ("graph undirected\nvertices 2\n0 2\n", "line 3"),
            ("graph undirected\nvertices 2\n0 x\n", "line 3"),
            ("graph undirected\nvertices 2\n\n0 1 1\n", "line 4"),
        ],
    )
    def test_errors_name_the_line(self, text, line):
        with pytest.raises(InputError, match=line):
            parse_graph(text)

    @given(multigraphs())
    def test_round_trip(self, g):
        assert parse_graph(format_graph(g)) == g

    def test_blocks_syntax(self):
        assert parse_blocks("0,2|1,3") == ((0, 2), (1, 3))
        assert parse_blocks("") == ()
        with pytest.raises(InputError):
            parse_blocks("0,a")


class TestBipartite:
    def test_examples(self, p3, k3):
        assert loopless_is_bipartite(p3)
        assert not loopless_is_bipartite(k3)
        assert loopless_is_bipartite(Multigraph(1, ((0, 0),)))

    def test_directed_refused(self, oriented_k12):
        with pytest.raises(UsageError):
            loopless_is_bipartite(oriented_k12)

    @given(multigraphs(directed=False), st.integers(0, 4))
    def test_loops_do_not_matter(self, g, v):
        v = v % g.n
        with_loop = Multigraph(g.n, g.edges + ((v, v),))
        without = Multigraph(g.n, tuple(e for e in g.edges if e[0] != e[1]))
        assert loopless_is_bipartite(with_loop) == loopless_is_bipartite(g) == loopless_is_bipartite(without)

    @given(multigraphs(directed=False))
    def test_matches_networkx(self, g):
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from((u, v) for u, v in g.edges if u != v)
        assert loopless_is_bipartite(g) == nx.is_bipartite(h)


class TestComponents:
    def test_k2(self, k2):
        rep = component_analysis(k2)
        assert rep["k2_components"] == 1 and rep["sum_tied_components"] == 1

    def test_double_edge(self, double_edge):
        rep = component_analysis(double_edge)
        assert rep["k2_components"] == 0 and rep["sum_tied_components"] == 1

    def test_double_edge_sums_always_tied(self, double_edge):
        for labels in product(range(4), repeat=2):
            s = vertex_sums(double_edge, labels)
            assert s[0] == s[1]

    def test_p3(self, p3):
        rep = component_analysis(p3)
        assert rep["k2_components"] == 0 and rep["sum_tied_components"] == 0
        assert rep["components"] == [[0, 1, 2]]

    def test_isolated_and_k2(self):
        g = Multigraph(4, ((1, 2),))
        rep = component_analysis(g)
        assert rep["components"] == [[0], [1, 2], [3]]
        assert rep["k2_components"] == 1


class TestQuotient:
    def test_bowtie(self, bow):
        h = magic_quotient(bow, [0, 1, 2])
        assert h == Multigraph(3, ((0, 1), (0, 2), (1, 2), (2, 2), (2, 2)))

    def test_full_subset_is_identity(self, bow):
        assert magic_quotient(bow, range(bow.n)) == bow

    def test_p3_middle(self, p3):
        assert magic_quotient(p3, [1]) == Multigraph(1, ((0, 0), (0, 0)))

    def test_empty_refused(self, p3):
        with pytest.raises(UsageError):
            magic_quotient(p3, [])

    @given(multigraphs(directed=False), st.sets(st.integers(0, 4), min_size=1))
    def test_keeps_every_edge_meeting_s(self, g, s):
        s = {v % g.n for v in s}
        h = magic_quotient(g, sorted(s))
        assert h.num_edges == sum(1 for u, v in g.edges if u in s or v in s)

    @given(multigraphs(directed=False), st.sets(st.integers(0, 4), min_size=1), st.data())
    def test_sums_on_s_are_preserved(self, g, s, data):
        s = sorted({v % g.n for v in s})
        labels = data.draw(st.lists(st.integers(0, 5), min_size=g.num_edges, max_size=g.num_edges))
        h = magic_quotient(g, s)
        kept = [x for (u, v), x in zip(g.edges, labels) if u in s or v in s]
        full = vertex_sums(g, labels)
        assert vertex_sums(h, kept) == tuple(full[v] for v in s)


def _networkx_connected_count(n):
    all_edges = list(combinations(range(n), 2))
    total = 0
    for mask in range(1 << len(all_edges)):
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(e for i, e in enumerate(all_edges) if mask >> i & 1)
        total += nx.is_connected(h)
    return total


class TestGeneration:
    @pytest.mark.parametrize("n, expected", [(1, 1), (2, 1), (3, 4), (4, 38)])
    def test_counts(self, n, expected):
        assert _networkx_connected_count(n) == expected
        assert sum(1 for _ in generate_connected_graphs(n)) == expected

    def test_n3_members(self):
        graphs = [g.edges for g in generate_connected_graphs(3)]
        assert graphs == [((0, 1), (0, 2)), ((0, 1), (0, 2), (1, 2)), ((0, 1), (1, 2)), ((0, 2), (1, 2))]

    def test_every_graph_single_component(self):
        for n in range(1, 6):
            for g in generate_connected_graphs(n):
                assert len(component_analysis(g)["components"]) == 1

    def test_include_multi(self):
        graphs = list(generate_connected_graphs(3, include_multi=True))
        # each of the 4 simple graphs followed by one doubled variant per edge
        assert len(graphs) == 4 + 2 + 3 + 2 + 2
        assert graphs[1].edges == ((0, 1), (0, 2), (0, 1))

    def test_restart_from_index(self):
        full = list(generate_connected_graphs(4))
        assert list(generate_connected_graphs(4, start=10)) == full[10:]

    @pytest.mark.parametrize("n", [0, 8])
    def test_out_of_range(self, n):
        with pytest.raises(UsageError):
            list(generate_connected_graphs(n))
