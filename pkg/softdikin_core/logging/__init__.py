"""JSON run reports and the run journal."""

from .report_logger import ReportLogger, RunCommand, config_hash

__all__ = ["ReportLogger", "RunCommand", "config_hash"]
