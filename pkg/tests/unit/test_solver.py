import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import ParameterError, ResourceError
from src.game import Player
from src.graph_dsl import parse_graph
from src.graphs import generate
from src.involutive import BlockList, detect_involutive
from src.solver import (
    Solver,
    certificate_is_valid,
    find_blocklist_set,
    game_distinguishing_number,
    infinity_certificate,
    solve,
    solve_constrained,
    solve_with_fixed_first_move,
)
from src.symmetry import Permutation

G, R = Player.GENTLE, Player.RASCAL


class TestSolve(unittest.TestCase):

    def test_c4_rascal_first(self):
        c4 = generate("cycle", 4)
        self.assertIs(solve(c4, 2, R).winner, R)
        self.assertIs(solve(c4, 3, R).winner, G)

    def test_c5_gentle_first(self):
        c5 = generate("cycle", 5)
        self.assertIs(solve(c5, 2, G).winner, R)
        self.assertIs(solve(c5, 3, G).winner, G)

    def test_c3_gentle_first_loses(self):
        c3 = generate("cycle", 3)
        for d in (2, 3, 5):
            with self.subTest(d=d):
                self.assertIs(solve(c3, d, G).winner, R)

    def test_value_reports_the_game(self):
        value = solve(generate("path", 3), 2, G)
        self.assertIs(value.winner, G)
        self.assertEqual(value.colors, 2)
        self.assertIs(value.first, G)
        self.assertGreater(value.nodes, 0)

    def test_one_color_loses_on_symmetric_graphs(self):
        self.assertIs(solve(generate("path", 2), 1, G).winner, R)

    def test_partial_position(self):
        solver = Solver(generate("cycle", 5), 3, G)
        # Rascal to move; Gentle's opening is already placed
        self.assertTrue(solver.gentle_wins((1, 0, 0, 0, 0)))
        with self.assertRaises(ParameterError):
            solver.gentle_wins((4, 0, 0, 0, 0))
        with self.assertRaises(ParameterError):
            solver.gentle_wins((1, 0, 0))

    def test_node_budget(self):
        with self.assertRaises(ResourceError) as ctx:
            Solver(generate("cycle", 6), 3, R, node_budget=5).value()
        self.assertEqual(ctx.exception.stats["colors"], 3)
        self.assertGreater(ctx.exception.stats["nodes"], 5)


class TestNaiveOracle(unittest.TestCase):

    def test_reductions_keep_the_winner(self):
        for expr in ("P3", "C4", "C5", "C6", "K3", "K2xK2", "K2xK3"):
            for d in (1, 2, 3):
                for first in (G, R):
                    with self.subTest(graph=expr, d=d, first=first):
                        g = parse_graph(expr)
                        fast = solve(g, d, first)
                        naive = solve(g, d, first, memoize=False)
                        self.assertIs(fast.winner, naive.winner)

    def test_naive_visits_more_nodes(self):
        c5 = generate("cycle", 5)
        self.assertGreater(solve(c5, 3, G, memoize=False).nodes, solve(c5, 3, G).nodes)


class TestPaletteInvariance(unittest.TestCase):

    @settings(max_examples=80, deadline=None)
    @given(
        st.lists(st.integers(0, 3), min_size=5, max_size=5),
        st.permutations([1, 2, 3]),
    )
    def test_relabeling_colors_keeps_the_value(self, coloring, perm):
        relabel = {0: 0, 1: perm[0], 2: perm[1], 3: perm[2]}
        c5 = generate("cycle", 5)
        solver = Solver(c5, 3, G)
        self.assertEqual(
            solver.gentle_wins(coloring), Solver(c5, 3, G).gentle_wins([relabel[c] for c in coloring])
        )


class TestFirstMoves(unittest.TestCase):

    def test_first_moves_on_vertex_transitive_graphs_agree(self):
        for expr, d in (("C5", 3), ("C6", 2), ("C8", 2)):
            g = parse_graph(expr)
            with self.subTest(graph=expr):
                winners = {solve_with_fixed_first_move(g, d, G, (v, 1)).winner for v in range(g.n)}
                self.assertEqual(len(winners), 1)


class TestGameDistinguishingNumber(unittest.TestCase):

    def test_finite_values(self):
        cases = [("C6", R, 3), ("C5", G, 3), ("C4", R, 3), ("C8", R, 2), ("K2xK3", R, 3)]
        for expr, first, expected in cases:
            with self.subTest(graph=expr, first=first):
                result = game_distinguishing_number(parse_graph(expr), first, cap=4)
                self.assertEqual(result.kind, "finite")
                self.assertEqual(result.value, expected)
                self.assertEqual(str(result), str(expected))
                self.assertIs(result.winners[expected], G)

    def test_involution_certificate(self):
        result = game_distinguishing_number(generate("cycle", 4), G, cap=4)
        self.assertEqual(result.kind, "infinite")
        self.assertEqual(result.certificate_kind, "involution")
        self.assertEqual(result.certificate, Permutation((2, 3, 0, 1)))
        self.assertEqual(str(result), "infinity")

    def test_saturation(self):
        result = game_distinguishing_number(generate("cycle", 3), G, cap=5)
        self.assertEqual(result.kind, "infinite")
        self.assertEqual(result.certificate_kind, "saturation")
        self.assertEqual(sorted(result.winners), [1, 2, 3])

    def test_cap_reached(self):
        result = game_distinguishing_number(generate("cycle", 5), G, cap=2)
        self.assertEqual(result.kind, "unknown_at_least")
        self.assertEqual(str(result), ">=3")

    def test_bad_cap(self):
        with self.assertRaises(ParameterError):
            game_distinguishing_number(generate("cycle", 5), G, cap=0)

    def test_monotone_check(self):
        result = game_distinguishing_number(generate("cycle", 5), G, cap=4, check_monotone=True)
        self.assertIs(result.winners[4], G)
        self.assertEqual(result.notes, [])


class TestInfinityCertificate(unittest.TestCase):

    def test_parity(self):
        self.assertIsNone(infinity_certificate(generate("cycle", 4), R))
        self.assertIsNone(infinity_certificate(generate("cycle", 5), G))
        sigma = infinity_certificate(generate("cycle", 5), R)
        self.assertTrue(sigma.is_involution())
        self.assertEqual(len(sigma.fixed_points()), 1)

    def test_fixed_point_free_first(self):
        sigma = infinity_certificate(generate("cycle", 6), G)
        self.assertEqual(sigma.fixed_points(), [])

    def test_central_involution_preferred(self):
        # the reflection (1 0 3 2) comes first lexicographically
        self.assertEqual(infinity_certificate(generate("cycle", 4), G), Permutation((2, 3, 0, 1)))
        self.assertEqual(infinity_certificate(generate("cycle", 6), G), Permutation((3, 4, 5, 0, 1, 2)))

    def test_validity(self):
        c4 = generate("cycle", 4)
        self.assertTrue(certificate_is_valid(c4, G, Permutation((2, 3, 0, 1))))
        self.assertFalse(certificate_is_valid(c4, R, Permutation((2, 3, 0, 1))))
        self.assertFalse(certificate_is_valid(c4, G, Permutation((1, 2, 3, 0))))
        self.assertFalse(certificate_is_valid(c4, G, Permutation((1, 0, 2, 3))))

    def test_product(self):
        g = parse_graph("C3xC5")
        sigma = infinity_certificate(g, R)
        self.assertTrue(certificate_is_valid(g, R, sigma))


class TestBlockListConstraints(unittest.TestCase):

    def test_full_set_matches_unconstrained(self):
        c8 = generate("cycle", 8)
        bar = detect_involutive(c8)
        everything = [BlockList((k, 4 - k), 2) for k in range(5)]
        self.assertIs(solve_constrained(c8, 2, R, everything, bar).winner, solve(c8, 2, R).winner)

    def test_pair_of_lists_on_c8(self):
        c8 = generate("cycle", 8)
        bar = detect_involutive(c8)
        allowed = [BlockList((3, 1), 2), BlockList((1, 3), 2)]
        self.assertIs(solve_constrained(c8, 2, R, allowed, bar).winner, G)

    def test_lists_on_c10(self):
        c10 = generate("cycle", 10)
        bar = detect_involutive(c10)
        mixed = [BlockList((4, 1), 2), BlockList((1, 4), 2)]
        self.assertIs(solve_constrained(c10, 2, R, mixed, bar).winner, R)
        self.assertIs(solve_constrained(c10, 2, R, [BlockList((2, 3), 2)], bar).winner, G)
        self.assertEqual(find_blocklist_set(c10, 2, bar), [BlockList((2, 3), 2)])

    def test_list_must_fit(self):
        c8 = generate("cycle", 8)
        bar = detect_involutive(c8)
        with self.assertRaises(ParameterError):
            solve_constrained(c8, 2, R, [BlockList((2, 1), 2)], bar)
        with self.assertRaises(ParameterError):
            solve_constrained(c8, 2, R, [BlockList((4, 0, 0), 4)], bar)

    def test_needs_structure(self):
        with self.assertRaises(ParameterError):
            Solver(generate("cycle", 4), 2, R, allowed_blocklists=[BlockList((2, 0), 2)])

    def test_find_blocklist_set(self):
        c8 = generate("cycle", 8)
        bar = detect_involutive(c8)
        found = find_blocklist_set(c8, 2, bar)
        self.assertIsNotNone(found)
        self.assertLessEqual(len(found), 2)
        self.assertIs(solve_constrained(c8, 2, R, found, bar).winner, G)

    def test_no_set_when_gentle_loses_anyway(self):
        c4 = generate("cycle", 4)
        self.assertIsNone(find_blocklist_set(c4, 2, detect_involutive(c4)))


if __name__ == "__main__":
    unittest.main()
