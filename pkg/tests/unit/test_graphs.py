import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import ParameterError
from src.graphs import Graph, ProductGraph, cartesian_product, fibers, generate, product_edge_count


class TestGenerate(unittest.TestCase):

    def test_cycle(self):
        c5 = generate("cycle", 5)
        self.assertEqual(c5.n, 5)
        self.assertEqual(len(c5.edges), 5)
        self.assertTrue(c5.has_edge(4, 0))
        self.assertEqual(c5.name(), "C5")

    def test_path_and_complete(self):
        self.assertEqual(generate("path", 4).edges, frozenset({(0, 1), (1, 2), (2, 3)}))
        self.assertEqual(len(generate("complete", 5).edges), 10)

    def test_hypercube(self):
        q3 = generate("hypercube", 3)
        self.assertEqual(q3.n, 8)
        self.assertEqual(len(q3.edges), 12)
        self.assertTrue(all(q3.degree(v) == 3 for v in range(8)))
        self.assertTrue(q3.has_edge(0b000, 0b100))

    def test_sizes_below_minimum(self):
        with self.assertRaises(ParameterError):
            generate("cycle", 2)
        with self.assertRaises(ParameterError):
            generate("path", 1)
        with self.assertRaises(ParameterError):
            generate("wheel", 5)

    def test_bad_edges(self):
        with self.assertRaises(ParameterError):
            Graph.from_edges(3, [(0, 0)])
        with self.assertRaises(ParameterError):
            Graph.from_edges(3, [(0, 3)])

    def test_edges_are_normalized(self):
        self.assertEqual(Graph.from_edges(3, [(2, 1)]).edges, frozenset({(1, 2)}))


class TestCartesianProduct(unittest.TestCase):

    def test_c3_c5(self):
        g = cartesian_product([generate("cycle", 3), generate("cycle", 5)])
        self.assertIsInstance(g, ProductGraph)
        self.assertEqual(g.n, 15)
        self.assertEqual(len(g.edges), 30)
        self.assertEqual(g.name(), "C3xC5")

    def test_row_major_numbering(self):
        g = cartesian_product([generate("complete", 2), generate("complete", 3)])
        self.assertEqual(g.coord(4), (1, 1))
        self.assertEqual(g.vertex((1, 2)), 5)
        # (0, j) and (1, j) are adjacent through K2
        self.assertTrue(g.has_edge(g.vertex((0, 2)), g.vertex((1, 2))))
        self.assertFalse(g.has_edge(g.vertex((0, 1)), g.vertex((1, 2))))

    def test_fibers(self):
        g = cartesian_product([generate("cycle", 4), generate("cycle", 3)])
        h_fibers = fibers(g, 0)
        self.assertEqual(len(h_fibers), 3)
        self.assertEqual([len(f) for f in h_fibers], [4, 4, 4])
        self.assertEqual(h_fibers[1].vertices, (1, 4, 7, 10))
        self.assertEqual(h_fibers[1].key, (1,))
        self.assertEqual(g.fiber_of(7, 0), 1)
        self.assertEqual(g.position(7, 0), 2)
        self.assertEqual(g.fiber_graph(h_fibers[1]), generate("cycle", 4))

    def test_bad_axis(self):
        g = cartesian_product([generate("path", 2), generate("path", 3)])
        with self.assertRaises(ParameterError):
            g.fibers(2)

    def test_fibers_of_plain_graph(self):
        with self.assertRaises(ParameterError):
            fibers(generate("cycle", 5), 0)

    def test_nested_products_are_spliced(self):
        inner = cartesian_product([generate("path", 2), generate("path", 3)])
        g = cartesian_product([inner, generate("cycle", 3)])
        self.assertEqual(len(g.factors), 3)
        self.assertEqual(g.name(), "P2xP3xC3")

    def test_factor_requirements(self):
        with self.assertRaises(ParameterError):
            cartesian_product([generate("cycle", 3)])
        disconnected = Graph.from_edges(4, [(0, 1), (2, 3)])
        with self.assertRaises(ParameterError):
            cartesian_product([disconnected, generate("path", 2)])

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(
            st.tuples(st.sampled_from(["cycle", "path", "complete"]), st.integers(min_value=3, max_value=5)),
            min_size=2,
            max_size=3,
        )
    )
    def test_edge_count_matches_closed_form(self, families):
        factors = [generate(family, size) for family, size in families]
        g = cartesian_product(factors)
        self.assertEqual(len(g.edges), product_edge_count(factors))
        for axis in range(len(factors)):
            covered = sorted(v for f in g.fibers(axis) for v in f.vertices)
            self.assertEqual(covered, list(range(g.n)))


if __name__ == "__main__":
    unittest.main()
