"""
JSON run reports and the JSONL run journal.
"""

import hashlib
import json
import logging
import math
from datetime import datetime, timedelta, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np

logger = logging.getLogger(__name__)


class RunCommand(Enum):
    """Commands recorded in the journal."""

    SAMPLE = "sample"
    DIAGNOSE = "diagnose"
    DP_ERM = "dp-erm"
    BENCH = "bench"


def _json_default(value: Any) -> Any:
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def _finite(value: Any) -> Any:
    # JSON has no inf/nan; encode them as strings.
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {k: _finite(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(v) for v in value]
    return value


def config_hash(config: Dict[str, Any]) -> str:
    """Short SHA-256 of the canonical JSON form of a config."""
    canonical = json.dumps(config, sort_keys=True, default=_json_default)
    return hashlib.sha256(canonical.encode()).hexdigest()[:16]


class ReportLogger:
    """Writes report files into an output directory and journals each run."""

    def __init__(self, directory: Union[str, Path], journal_name: str = "runs.jsonl"):
        """
        Initialize report logger.

        Args:
            directory: Output directory, created if missing
            journal_name: File name of the JSONL journal inside directory
        """
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.journal_file = self.directory / journal_name
        logger.debug(f"Report logger initialized in {self.directory}")

    def write_report(self, name: str, payload: Dict[str, Any]) -> Path:
        """
        Write one JSON report.

        Raises:
            RuntimeError: If the report cannot be written
        """
        path = self.directory / name
        try:
            text = json.dumps(_finite(payload), indent=2, sort_keys=True, default=_json_default)
            path.write_text(text + "\n", encoding="utf-8")
        except (OSError, TypeError, ValueError) as e:
            logger.error(f"Failed to write report {path}: {e}")
            raise RuntimeError(f"Report writing failed: {e}")
        logger.info(f"Wrote report {path}")
        return path

    def log_run(self, command: RunCommand, config: Dict[str, Any], exit_code: int,
                metadata: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """
        Append one journal line for a finished command.

        Raises:
            ValueError: If command is not a RunCommand
            RuntimeError: If the journal cannot be written
        """
        if not isinstance(command, RunCommand):
            raise ValueError(f"Invalid command: {command}")

        from .. import __version__

        timestamp = datetime.now(timezone.utc)
        entry = {
            "config_hash": config_hash(config),
            "command": command.value,
            "exit_code": exit_code,
            "version": __version__,
            "timestamp": timestamp.isoformat(),
            "date": timestamp.date().isoformat(),
        }
        if metadata:
            entry["metadata"] = _finite(metadata)

        try:
            with open(self.journal_file, "a", encoding="utf-8") as f:
                f.write(json.dumps(entry, sort_keys=True, default=_json_default) + "\n")
        except OSError as e:
            logger.error(f"Failed to journal run: {e}")
            raise RuntimeError(f"Run journaling failed: {e}")

        logger.debug(f"Journaled {command.value} run (config {entry['config_hash']})")
        return entry

    def get_stats(self, days: int = 30) -> Dict[str, Any]:
        """
        Summarize journal entries of the last N days.

        Returns:
            Runs per command, failures per exit code and total lemma violations
        """
        stats = {"total_runs": 0, "commands": {}, "exit_codes": {}, "violations": 0}
        if not self.journal_file.exists():
            return stats

        cutoff_date = (datetime.now(timezone.utc).date() - timedelta(days=days)).isoformat()

        try:
            with open(self.journal_file, "r", encoding="utf-8") as f:
                for line in f:
                    if not line.strip():
                        continue
                    entry = json.loads(line)
                    if entry.get("date", "") < cutoff_date:
                        continue
                    stats["total_runs"] += 1
                    command = entry.get("command", "unknown")
                    stats["commands"][command] = stats["commands"].get(command, 0) + 1
                    code = str(entry.get("exit_code"))
                    stats["exit_codes"][code] = stats["exit_codes"].get(code, 0) + 1
                    stats["violations"] += int(entry.get("metadata", {}).get("violations", 0))
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"Failed to generate stats: {e}")
            stats["error"] = str(e)

        return stats
