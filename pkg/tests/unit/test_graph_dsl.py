import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import GraphSyntaxError, ParameterError
from src.graph_dsl import parse_graph, render_graph, tokenize
from src.graphs import Graph, ProductGraph, generate


class TestParseGraph(unittest.TestCase):

    def test_single_family(self):
        self.assertEqual(parse_graph("C8"), generate("cycle", 8))
        self.assertEqual(parse_graph(" K4 "), generate("complete", 4))
        self.assertEqual(parse_graph("Q2").n, 4)

    def test_products(self):
        g = parse_graph("K4xK5")
        self.assertIsInstance(g, ProductGraph)
        self.assertEqual(g.n, 20)
        self.assertEqual([f.name() for f in g.factors], ["K4", "K5"])

    def test_parenthesized_product(self):
        self.assertEqual(parse_graph("(K2xK3)xC5"), parse_graph("K2xK3xC5"))
        self.assertEqual(len(parse_graph("C3x(C4xC5)").factors), 3)

    def test_tokens_carry_positions(self):
        self.assertEqual(tokenize("C3 x C10"), [("C3", 0), ("x", 3), ("C10", 5)])

    def test_syntax_errors_report_positions(self):
        cases = {
            "C3xx": 3,
            "C3C4": 2,
            "(C3xC4": 0,
            "C3 + C4": 3,
            "": 0,
        }
        for text, position in cases.items():
            with self.subTest(text=text):
                with self.assertRaises(GraphSyntaxError) as ctx:
                    parse_graph(text)
                self.assertEqual(ctx.exception.position, position)

    def test_family_size_errors(self):
        with self.assertRaises(ParameterError):
            parse_graph("C2")

    def test_edge_list(self):
        g = parse_graph("edges: 0-1 1-2 2-0")
        self.assertEqual(g, generate("cycle", 3))

    def test_edge_list_with_isolated_vertices(self):
        g = parse_graph("edges: n=5 0-1 1-2")
        self.assertEqual(g.n, 5)
        self.assertEqual(g.degree(4), 0)

    def test_edge_list_errors(self):
        with self.assertRaises(GraphSyntaxError):
            parse_graph("edges: 0-0")
        with self.assertRaises(GraphSyntaxError):
            parse_graph("edges: 0-1 1-0")
        with self.assertRaises(GraphSyntaxError):
            parse_graph("edges: 0-1 banana")
        with self.assertRaises(ParameterError):
            parse_graph("edges: n=2 0-1 1-2")


class TestRenderGraph(unittest.TestCase):

    def test_render(self):
        self.assertEqual(render_graph(generate("path", 3)), "edges: 0-1 1-2")
        self.assertEqual(render_graph(Graph.from_edges(4, [(0, 1)])), "edges: n=4 0-1")

    def test_render_product(self):
        g = parse_graph("K2xK2")
        self.assertEqual(render_graph(g), "edges: 0-1 0-2 1-3 2-3")

    @settings(max_examples=60, deadline=None)
    @given(
        st.integers(min_value=1, max_value=8).flatmap(
            lambda n: st.tuples(
                st.just(n),
                st.sets(
                    st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1]),
                    max_size=12,
                ),
            )
        )
    )
    def test_rendered_edge_lists_parse_back(self, case):
        n, edges = case
        g = Graph.from_edges(n, edges)
        self.assertEqual(parse_graph(render_graph(g)), g)


if __name__ == "__main__":
    unittest.main()
