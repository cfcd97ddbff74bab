import os
import unittest

from dotenv import load_dotenv

from src.game import Player
from src.graph_dsl import parse_graph
from src.reproduce import run_table
from src.strategies import AdversaryMode, build_strategy, default_mode, verify_strategy
from src.utils import load_settings


class TestAcceptance(unittest.TestCase):
    """Recomputes every known value. Slow: minutes to tens of minutes."""

    @classmethod
    def setUpClass(cls):

        # Load environment variables from .env file if this is not a CI environment
        if not os.getenv("CI"):
            load_dotenv()

        if os.getenv("GAMEDIST_ACCEPTANCE") != "1":
            raise unittest.SkipTest("GAMEDIST_ACCEPTANCE=1 is not set")

        cls.settings = load_settings(dotenv=False)

    def _table(self, name):
        checks = run_table(name, self.settings)
        self.assertGreater(len(checks), 0)
        for check in checks:
            with self.subTest(check=check.name):
                self.assertEqual(check.actual, check.expected)

    def test_cycles(self):
        self._table("cycles")

    def test_infinity_certificates(self):
        self._table("infinity")

    def test_small_tori(self):
        self._table("tori-small")

    def test_k2km(self):
        self._table("k2km")

    def test_blocklists(self):
        self._table("blocklists")

    def test_matching_at_scale(self):
        self._table("matching")

    def test_antifiber(self):
        self._table("antifiber")

    def test_solver_oracle(self):
        self._table("oracle")


class TestLargeStrategies(unittest.TestCase):
    """Strategies too large for the unit suite."""

    @classmethod
    def setUpClass(cls):
        if not os.getenv("CI"):
            load_dotenv()
        if os.getenv("GAMEDIST_ACCEPTANCE") != "1":
            raise unittest.SkipTest("GAMEDIST_ACCEPTANCE=1 is not set")

    def _verify(self, expr, name, d, first, mode=None):
        g = parse_graph(expr)
        strategy = build_strategy(name, g, d, first)
        report = verify_strategy(g, d, first, strategy, mode or default_mode(strategy))
        self.assertTrue(report.wins, (report.counterexample, report.violations))
        return report

    def test_c4c6_on_c4_c3(self):
        self._verify("C4xC3", "c4c6", 2, Player.RASCAL)

    def test_parity_on_longer_paths(self):
        self._verify("P2xP5", "parity", 2, Player.RASCAL)

    def test_c6_c3_sampled(self):
        self._verify("C6xC3", "c4c6", 2, Player.RASCAL, AdversaryMode.sampled(2000, seed=42))

    def test_prime_cycle_sampled(self):
        self._verify("C3xC7", "prime-cycle", 2, Player.GENTLE, AdversaryMode.sampled(5000, seed=42))

    def test_blocklist_sampled(self):
        self._verify("C8xC3", "blocklist", 2, Player.RASCAL, AdversaryMode.sampled(2000, seed=42))

    def test_antifiber_gentle_first_sampled(self):
        g = parse_graph("K5xK3")
        strategy = build_strategy("antifiber", g, 2, Player.GENTLE)
        mode = AdversaryMode.sampled(2000, seed=42, predicate=strategy.opponent_predicate())
        report = verify_strategy(g, 2, Player.GENTLE, strategy, mode)
        self.assertEqual(report.verdict, "win-all-sampled", report.counterexample)


if __name__ == "__main__":
    unittest.main()
