import io
import os
import tempfile
import unittest
from contextlib import redirect_stdout
from unittest.mock import patch

from src.errors import ParameterError
from src.game import Player
from src.involutive import BlockList
from src.main import format_moves, parse_blocklists, parse_moves, run
from src.report import load_reports
from src.strategies import VerificationReport
from src.utils import Settings


def run_cli(*argv, settings=None):
    out = io.StringIO()
    with redirect_stdout(out):
        code = run(list(argv), settings or Settings())
    return code, out.getvalue()


class TestArgumentHelpers(unittest.TestCase):

    def test_parse_moves(self):
        self.assertEqual(parse_moves("0:1, 3:2  5:1"), [(0, 1), (3, 2), (5, 1)])
        self.assertEqual(parse_moves(""), [])
        self.assertEqual(format_moves([(0, 1), (3, 2)]), "0:1 3:2")
        with self.assertRaises(ParameterError):
            parse_moves("0-1")

    def test_parse_blocklists(self):
        self.assertEqual(parse_blocklists("(3,1),(1,3)", 2), [BlockList((3, 1), 2), BlockList((1, 3), 2)])
        with self.assertRaises(ParameterError):
            parse_blocklists("3,1", 2)
        with self.assertRaises(ParameterError):
            parse_blocklists("(3,x)", 2)


class TestCommands(unittest.TestCase):

    def test_solve(self):
        code, out = run_cli("solve", "C4", "--colors", "3", "--first", "rascal")
        self.assertEqual(code, 0)
        self.assertIn("Gentle wins", out)

    def test_solve_from_moves(self):
        code, out = run_cli("solve", "C5", "--colors", "3", "--first", "gentle", "--moves", "0:1")
        self.assertEqual(code, 0)
        self.assertIn("Gentle wins", out)

    def test_solve_illegal_moves(self):
        code, out = run_cli("solve", "C5", "--colors", "3", "--first", "gentle", "--moves", "0:1 0:2")
        self.assertEqual(code, 2)
        self.assertIn("::error::", out)

    def test_solve_with_blocklists(self):
        code, out = run_cli(
            "solve", "C8", "--colors", "2", "--first", "rascal", "--blocklists", "(3,1),(1,3)"
        )
        self.assertEqual(code, 0)
        self.assertIn("Gentle wins", out)

    def test_naive_solver_agrees(self):
        _, fast = run_cli("solve", "P3", "--colors", "2", "--first", "gentle")
        _, naive = run_cli("solve", "P3", "--colors", "2", "--first", "gentle", "--naive")
        self.assertEqual(fast, naive)

    def test_bad_graph(self):
        code, out = run_cli("solve", "C3xx", "--colors", "2", "--first", "gentle")
        self.assertEqual(code, 2)
        self.assertIn("position 3", out)

    def test_budget(self):
        code, out = run_cli("solve", "C6", "--colors", "3", "--first", "rascal", "--budget-nodes", "5")
        self.assertEqual(code, 3)
        self.assertIn("budget", out)

    def test_gdn_infinity(self):
        code, out = run_cli("gdn", "C4", "--first", "gentle", "--cap", "4")
        self.assertEqual(code, 0)
        self.assertIn("D_G(C4) = infinity (involution", out)

    def test_gdn_finite(self):
        code, out = run_cli("gdn", "C5", "--first", "gentle", "--cap", "4")
        self.assertEqual(code, 0)
        self.assertIn("D_G(C5) = 3", out)

    def test_aut(self):
        code, out = run_cli("aut", "C6")
        self.assertEqual(code, 0)
        self.assertIn("|Aut| = 12", out)
        self.assertIn("involutive", out)

    def test_product(self):
        code, out = run_cli("product", "C4xC3")
        self.assertEqual(code, 0)
        self.assertIn("relatively prime: yes", out)
        self.assertIn("::group::", out)

    def test_verify(self):
        code, out = run_cli("verify", "C4", "mirror", "--colors", "2", "--first", "gentle")
        self.assertEqual(code, 0)
        self.assertIn("win-all", out)

    def test_verify_not_applicable(self):
        code, _ = run_cli("verify", "K2xK4", "k2-complete", "--colors", "4", "--first", "rascal")
        self.assertEqual(code, 2)

    def test_verify_counterexample(self):
        lost = VerificationReport(
            "mirror", Player.RASCAL, "exhaustive", wins=False, games=1,
            counterexample=[(0, 1), (2, 2)], violations=["Gentle won"],
        )
        with patch("src.main.verify_strategy", return_value=lost):
            code, out = run_cli("verify", "C4", "mirror", "--colors", "2", "--first", "gentle")
        self.assertEqual(code, 4)
        self.assertIn("::error::Gentle won", out)
        self.assertIn("counterexample: 0:1 2:2", out)
        self.assertIn("::error::mirror lost after 0:1 2:2", out)

    def test_reproduce(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, out = run_cli("reproduce", "infinity", settings=Settings(report_dir=tmp))
            self.assertEqual(code, 0)
            self.assertIn("4/4 checks passed", out)
            self.assertEqual(len(load_reports(os.path.join(tmp, "reproduce-infinity.yaml"))), 4)


class TestReports(unittest.TestCase):

    def test_explicit_path(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "aut.yaml")
            code, out = run_cli("aut", "C4", "--report", path)
            self.assertEqual(code, 0)
            self.assertIn(f"report: {path}", out)
            [report] = load_reports(path)
            self.assertEqual(report.result["order"], 8)
            self.assertEqual(report.command, ["aut", "C4", "--report", path])

    def test_default_directory(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, _ = run_cli("gdn", "C5", "--first", "gentle", "--cap", "3", "--report", settings=Settings(report_dir=tmp))
            self.assertEqual(code, 0)
            [report] = load_reports(os.path.join(tmp, "gdn-C5.yaml"))
            self.assertEqual(report.result["value"], "3")

    def test_losing_verify_keeps_its_report(self):
        lost = VerificationReport(
            "mirror", Player.RASCAL, "exhaustive", wins=False, games=1,
            counterexample=[(0, 1), (2, 2)], violations=["Gentle won"],
        )
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "verify.yaml")
            with patch("src.main.verify_strategy", return_value=lost):
                code, out = run_cli("verify", "C4", "mirror", "--colors", "2", "--first", "gentle", "--report", path)
            self.assertEqual(code, 4)
            self.assertIn(f"report: {path}", out)
            [report] = load_reports(path)
            self.assertEqual(report.result["verdict"], "counterexample")
            self.assertEqual(report.result["counterexample"], [[0, 1], [2, 2]])

    def test_no_report_by_default(self):
        with tempfile.TemporaryDirectory() as tmp:
            run_cli("aut", "C4", settings=Settings(report_dir=tmp))
            self.assertEqual(os.listdir(tmp), [])


if __name__ == "__main__":
    unittest.main()
