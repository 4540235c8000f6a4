#!/usr/bin/env python3
import logging
import os
import tempfile
import unittest
from contextlib import redirect_stdout
from io import StringIO
from unittest.mock import patch

import sh_track


class TestSettingsFallbacks(unittest.TestCase):
    @patch("sh_track.open", side_effect=FileNotFoundError)
    def test_missing_config_file_uses_default(self, mock_open_file):
        settings = sh_track.load_settings("nonexistent.json")
        self.assertEqual(settings, sh_track.get_default_settings())

    @patch("sh_track.json.load", side_effect=sh_track.json.JSONDecodeError("msg", "doc", 0))
    def test_invalid_json_config_falls_back(self, mock_json):
        settings = sh_track.load_settings(sh_track.DEFAULT_CONFIG)
        self.assertEqual(settings["k"], 5)

    def test_overrides_and_unknown_keys(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "config.json")
            with open(path, "w", encoding="utf-8") as f:
                f.write('{"k": 3, "colour": "blue"}')
            settings = sh_track.load_settings(path)
        self.assertEqual(settings["k"], 3)
        self.assertNotIn("colour", settings)

    @patch("sh_track.color.print_yellow")
    def test_wrong_types_keep_defaults(self, mock_yellow):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "config.json")
            with open(path, "w", encoding="utf-8") as f:
                f.write('{"k": "5", "deletions": -1, "progress": 1, "min_timing_ms": 2.5, '
                        '"log_level": "chatty", "seed": true}')
            settings = sh_track.load_settings(path)
        defaults = sh_track.get_default_settings()
        for key in ("k", "deletions", "progress", "log_level", "seed"):
            self.assertEqual(settings[key], defaults[key])
        self.assertEqual(settings["min_timing_ms"], 2.5)
        self.assertEqual(mock_yellow.call_count, 5)
        self.assertIn("'k'", mock_yellow.call_args_list[0].args[0])

    def test_logging_can_be_reconfigured(self):
        root = logging.getLogger()
        saved = list(root.handlers)
        with tempfile.TemporaryDirectory() as tmpdir:
            try:
                for name in ("first.log", "second.log"):
                    path = os.path.join(tmpdir, name)
                    sh_track.configure_logging({"log_file": path, "log_level": "INFO"})
                    file_handlers = [h for h in root.handlers if isinstance(h, logging.FileHandler)]
                    self.assertEqual([h.baseFilename for h in file_handlers], [os.path.abspath(path)])
                self.assertEqual(root.level, logging.INFO)
            finally:
                for handler in list(root.handlers):
                    root.removeHandler(handler)
                    handler.close()
                for handler in saved:
                    root.addHandler(handler)

    def test_non_object_config_uses_default(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "config.json")
            with open(path, "w", encoding="utf-8") as f:
                f.write("[1, 2]")
            self.assertEqual(sh_track.load_settings(path), sh_track.get_default_settings())


class TestExitCodes(unittest.TestCase):
    """Every usage or input error ends with exit code 2."""

    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()
        self.graph = self.write("g.txt", "1 2\n2 3\n3 1\n")
        self.config = self.write("config.json",
                                 '{"log_file": "%s"}' % os.path.join(self.tmpdir.name, "run.log"))

    def tearDown(self):
        self.tmpdir.cleanup()

    def write(self, name, text):
        path = os.path.join(self.tmpdir.name, name)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        return path

    def run_cli(self, *argv):
        with redirect_stdout(StringIO()):
            return sh_track.main(["--config", self.config, *argv])

    def test_zero_k_is_usage_error(self):
        with patch("sys.stderr", new_callable=StringIO):
            with self.assertRaises(SystemExit) as ctx:
                self.run_cli("static", "--graph", self.graph, "--k", "0")
        self.assertEqual(ctx.exception.code, 2)

    def test_missing_graph_file(self):
        code = self.run_cli("static", "--graph", os.path.join(self.tmpdir.name, "absent.txt"))
        self.assertEqual(code, 2)

    def test_single_endpoint_edge_line(self):
        graph = self.write("bad.txt", "1 2\n3\n2 3\n")
        with patch("sh_track.color.print_red") as mock_red:
            code = self.run_cli("static", "--graph", graph, "--k", "1")
        self.assertEqual(code, 2)
        self.assertIn(":2:", mock_red.call_args[0][0])

    def test_k_larger_than_graph(self):
        self.assertEqual(self.run_cli("static", "--graph", self.graph, "--k", "4"), 2)

    def test_bad_update_arity(self):
        updates = self.write("u.txt", "d 1\n")
        code = self.run_cli("track", "--graph", self.graph, "--updates", updates, "--k", "1")
        self.assertEqual(code, 2)

    def test_absent_edge_in_stream(self):
        updates = self.write("u.txt", "d 1 2\nd 2 1\n")
        with patch("sh_track.color.print_red") as mock_red:
            code = self.run_cli("track", "--graph", self.graph, "--updates", updates, "--k", "1")
        self.assertEqual(code, 2)
        self.assertIn("line 2", mock_red.call_args[0][0])

    def test_bench_without_dataset(self):
        with patch("sys.stderr", new_callable=StringIO):
            with self.assertRaises(SystemExit) as ctx:
                self.run_cli("bench")
        self.assertEqual(ctx.exception.code, 2)

    def test_bench_too_many_deletions(self):
        code = self.run_cli("bench", "--graph", self.graph, "--k", "1", "--deletions", "4",
                            "--out", os.path.join(self.tmpdir.name, "b.csv"), "--no-progress")
        self.assertEqual(code, 2)

    @patch("sh_track.logger.exception")
    def test_unexpected_error_is_logged(self, mock_log):
        with patch("sh_track.top_k_greedy", side_effect=RuntimeError("System fail")):
            code = self.run_cli("static", "--graph", self.graph, "--k", "1")
        self.assertEqual(code, 2)
        mock_log.assert_called_once()


if __name__ == "__main__":
    unittest.main()
