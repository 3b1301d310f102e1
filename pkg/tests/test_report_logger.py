"""
Tests for JSON run reports and the run journal.
"""

import json
import math
import tempfile
from pathlib import Path
from unittest.mock import patch

import numpy as np
import pytest

from softdikin_core.logging import ReportLogger, RunCommand, config_hash


class TestReportLogger:
    """Test cases for ReportLogger."""

    def setup_method(self):
        self.temp_dir = tempfile.TemporaryDirectory()
        self.reports = ReportLogger(Path(self.temp_dir.name) / "out")

    def teardown_method(self):
        self.temp_dir.cleanup()

    def test_directory_created(self):
        """Test that the output directory is created on demand."""
        assert self.reports.directory.is_dir()
        assert self.reports.journal_file.name == "runs.jsonl"

    def test_write_report_numpy_and_infinities(self):
        """Test that numpy values and non-finite floats serialize."""
        path = self.reports.write_report("r.json", {
            "array": np.arange(3),
            "count": np.int64(4),
            "value": np.float64(0.5),
            "overflowed": math.inf,
            "nested": {"nan": math.nan},
        })
        payload = json.loads(path.read_text())
        assert payload["array"] == [0, 1, 2]
        assert payload["count"] == 4
        assert payload["overflowed"] == "inf"
        assert payload["nested"]["nan"] == "nan"

    def test_write_report_failure(self):
        """Test that unserializable payloads raise RuntimeError."""
        with pytest.raises(RuntimeError, match="Report writing failed"):
            self.reports.write_report("bad.json", {"x": object()})

    def test_log_run(self):
        """Test one journal line per run, keyed by config hash."""
        config = {"walk": {"seed": 1}}
        entry = self.reports.log_run(RunCommand.SAMPLE, config, 0, {"T": 10})
        lines = self.reports.journal_file.read_text().splitlines()
        assert len(lines) == 1
        stored = json.loads(lines[0])
        assert stored["command"] == "sample"
        assert stored["exit_code"] == 0
        assert stored["config_hash"] == config_hash(config) == entry["config_hash"]
        assert stored["metadata"] == {"T": 10}

    def test_log_run_invalid_command(self):
        """Test that plain strings are refused."""
        with pytest.raises(ValueError):
            self.reports.log_run("sample", {}, 0)

    def test_log_run_write_failure(self):
        """Test that journal IO errors surface as RuntimeError."""
        with patch("builtins.open", side_effect=OSError("disk full")):
            with pytest.raises(RuntimeError, match="journaling failed"):
                self.reports.log_run(RunCommand.BENCH, {}, 0)

    def test_stats(self):
        """Test aggregation of the journal."""
        self.reports.log_run(RunCommand.SAMPLE, {}, 0)
        self.reports.log_run(RunCommand.DIAGNOSE, {}, 3, {"violations": 2})
        self.reports.log_run(RunCommand.DIAGNOSE, {}, 0, {"violations": 0})
        stats = self.reports.get_stats()
        assert stats["total_runs"] == 3
        assert stats["commands"] == {"sample": 1, "diagnose": 2}
        assert stats["exit_codes"] == {"0": 2, "3": 1}
        assert stats["violations"] == 2

    def test_stats_without_journal(self):
        """Test empty stats before any run."""
        assert self.reports.get_stats()["total_runs"] == 0


class TestConfigHash:
    """Tests for config_hash()."""

    def test_order_independent(self):
        """Test that key order does not change the hash."""
        assert config_hash({"a": 1, "b": 2}) == config_hash({"b": 2, "a": 1})
        assert config_hash({"a": 1}) != config_hash({"a": 2})
        assert len(config_hash({})) == 16
