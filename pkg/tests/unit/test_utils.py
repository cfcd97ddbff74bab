import os
import unittest
from unittest.mock import patch

from src.errors import ParameterError
from src.utils import Settings, get_env, load_settings


class TestGetEnv(unittest.TestCase):

    @patch.dict(os.environ, {"GAMEDIST_COLOR_CAP": "7"}, clear=True)
    def test_reads_prefixed_variables(self):
        self.assertEqual(get_env({"color_cap": 5, "samples": 10}), {"color_cap": "7", "samples": 10})

    @patch.dict(os.environ, {}, clear=True)
    def test_required_without_default(self):
        with self.assertRaises(ParameterError):
            get_env({"report_dir": None})
        self.assertEqual(get_env({"report_dir": None}, required=False), {"report_dir": None})


class TestLoadSettings(unittest.TestCase):

    @patch.dict(os.environ, {}, clear=True)
    def test_defaults(self):
        self.assertEqual(load_settings(dotenv=False), Settings())

    @patch.dict(
        os.environ,
        {"GAMEDIST_AUT_CAP": "32", "GAMEDIST_SAMPLES": "500", "GAMEDIST_LOG_LEVEL": "info"},
        clear=True,
    )
    def test_overrides(self):
        settings = load_settings(dotenv=False)
        self.assertEqual(settings.aut_cap, 32)
        self.assertEqual(settings.samples, 500)
        self.assertEqual(settings.log_level, "INFO")
        self.assertEqual(settings.color_cap, 5)

    @patch.dict(os.environ, {"GAMEDIST_NODE_BUDGET": "lots"}, clear=True)
    def test_bad_number(self):
        with self.assertRaises(ParameterError):
            load_settings(dotenv=False)


if __name__ == "__main__":
    unittest.main()
