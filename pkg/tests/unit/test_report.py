import os
import tempfile
import unittest

from src import __version__
from src.errors import ParameterError
from src.game import Player
from src.graphs import generate
from src.report import (
    RunReport,
    default_report_path,
    describe_graph,
    gdn_fields,
    load_reports,
    save_reports,
    value_fields,
)
from src.solver import game_distinguishing_number, solve


class TestRunReport(unittest.TestCase):

    def setUp(self):
        c4 = generate("cycle", 4)
        value = solve(c4, 3, Player.RASCAL)
        self.report = RunReport(
            command=["solve", "C4", "--colors", "3", "--first", "rascal"],
            graph=describe_graph(c4),
            parameters={"colors": 3, "first": "rascal"},
            result=value_fields(value),
            nodes=value.nodes,
            wall_time=0.01,
        )

    def test_version_comes_first(self):
        text = self.report.to_yaml()
        self.assertTrue(text.startswith(f"version: {__version__}\n"))
        self.assertIn("winner: gentle", text)
        self.assertEqual(RunReport.from_yaml(text).graph, "C4 (n=4, m=4)")

    def test_round_trip_is_byte_identical(self):
        text = self.report.to_yaml()
        self.assertEqual(RunReport.from_yaml(text).to_yaml(), text)

    def test_missing_version(self):
        with self.assertRaises(ParameterError):
            RunReport.from_yaml("command: [solve]\ngraph: C4\n")
        with self.assertRaises(ParameterError):
            RunReport.from_yaml("- just a list\n")

    def test_save_and_load(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = self.report.save(os.path.join(tmp, "nested", "solve.yaml"))
            self.assertEqual(load_reports(path), [self.report])
            both = save_reports([self.report, self.report], os.path.join(tmp, "all.yaml"))
            self.assertEqual(len(load_reports(both)), 2)


class TestFields(unittest.TestCase):

    def test_gdn_fields_with_certificate(self):
        result = game_distinguishing_number(generate("cycle", 4), Player.GENTLE, cap=3)
        fields = gdn_fields(result)
        self.assertEqual(fields["value"], "infinity")
        self.assertEqual(fields["certificate"], [2, 3, 0, 1])
        self.assertEqual(fields["certificate_kind"], "involution")

    def test_gdn_fields_finite(self):
        result = game_distinguishing_number(generate("cycle", 4), Player.RASCAL, cap=4)
        fields = gdn_fields(result)
        self.assertEqual(fields["value"], "3")
        self.assertEqual(fields["winners"], {1: "rascal", 2: "rascal", 3: "gentle"})
        self.assertNotIn("certificate", fields)

    def test_default_report_path(self):
        self.assertEqual(default_report_path("out", "gdn", generate("cycle", 5)), os.path.join("out", "gdn-C5.yaml"))
        self.assertEqual(default_report_path("out", "reproduce"), os.path.join("out", "reproduce.yaml"))


if __name__ == "__main__":
    unittest.main()
