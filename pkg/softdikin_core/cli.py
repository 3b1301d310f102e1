"""
Command line front end: ``softdikin sample | diagnose | dp-erm | bench``.

Exit codes: 0 ok, 1 configuration or input error, 2 numerical failure,
3 lemma violation. Messages go to standard error through the package logger.
"""

import argparse
import csv
import logging
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .config.manager import ConfigManager
from .core import bench, chain_summary, diagnose, dp_erm, sample, set_log_level
from .errors import ConfigError
from .logging.report_logger import ReportLogger, RunCommand

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERIC = 2
EXIT_VIOLATION = 3

DEFAULT_BENCH_SIZES = ((100, 20), (200, 20), (400, 20))


def write_samples_csv(samples: np.ndarray, path: Path) -> None:
    """One row per retained state; repr floats keep the file byte-deterministic."""
    samples = np.asarray(samples, dtype=float)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow([f"theta{i + 1}" for i in range(samples.shape[1])])
        for row in samples:
            writer.writerow([repr(float(x)) for x in row])
    logger.info(f"Wrote {samples.shape[0]} samples to {path}")


def parse_sizes(raw: str) -> List[Tuple[int, int]]:
    """Parse ``"100x20,200x20"`` into [(100, 20), (200, 20)]."""
    sizes = []
    for item in raw.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            m, d = item.lower().split("x")
            sizes.append((int(m), int(d)))
        except ValueError:
            raise ConfigError(f"Invalid size '{item}', expected MxD")
    if not sizes:
        raise ConfigError("No bench sizes given")
    return sizes


def _load_config(args: argparse.Namespace, required: bool = True) -> ConfigManager:
    if args.config is None and required:
        raise ConfigError(f"--config is required for '{args.command}'")
    config = ConfigManager(args.config)
    if args.seed is not None:
        config.update_config("walk", {"seed": args.seed})
    if args.out is not None:
        config.update_config("output", {"directory": args.out})
    set_log_level(args.log_level or config.logging.level)

    errors = config.validate_config()
    if errors:
        raise ConfigError("Invalid configuration: " + "; ".join(errors))
    return config


def cmd_sample(args: argparse.Namespace, config: ConfigManager,
               reports: ReportLogger) -> Tuple[int, Dict[str, Any]]:
    """Run one chain; write samples CSV and the JSON run report."""
    result = sample(config)
    write_samples_csv(result.report.samples, reports.directory / config.output.samples_file)
    reports.write_report(config.output.report_file, {
        "command": RunCommand.SAMPLE.value,
        "version": __version__,
        "config": config.get_config_dict(),
        "run": result.to_dict(),
        "diagnostics": chain_summary(result, config.diagnostics.grid_resolution),
    })
    return EXIT_OK, {"T": result.report.T, "acceptance_rate": result.report.acceptance_rate}


def cmd_diagnose(args: argparse.Namespace, config: ConfigManager,
                 reports: ReportLogger) -> Tuple[int, Dict[str, Any]]:
    """Run the lemma suite; one JSON file per check; exit 3 on a violation."""
    suite = None
    if args.suite:
        suite = [s.strip() for s in args.suite.split(",") if s.strip()]
    results = diagnose(config, suite)
    for report in results:
        payload = {**report.to_dict(), "version": __version__}
        reports.write_report(f"lemma_{report.lemma_id}.json", payload)

    failed = [r.lemma_id for r in results if not r.passed]
    reports.write_report(config.output.report_file, {
        "command": RunCommand.DIAGNOSE.value,
        "version": __version__,
        "config": config.get_config_dict(),
        "checks": {r.lemma_id: r.passed for r in results},
        "failed": failed,
    })
    metadata = {"checks": len(results), "violations": sum(r.violations for r in results
                                                          if r.asserted)}
    return (EXIT_VIOLATION if failed else EXIT_OK), metadata


def cmd_dp_erm(args: argparse.Namespace, config: ConfigManager,
               reports: ReportLogger) -> Tuple[int, Dict[str, Any]]:
    """Exponential-mechanism ERM on the configured dataset."""
    result = dp_erm(config)
    reports.write_report(config.output.report_file, {
        "command": RunCommand.DP_ERM.value,
        "version": __version__,
        "config": config.get_config_dict(),
        **result,
    })
    logger.warning(result["caveat"])
    return EXIT_OK, {"excess_risk": result["excess_risk"], "epsilon": result["epsilon"]}


def cmd_bench(args: argparse.Namespace, config: ConfigManager,
              reports: ReportLogger) -> Tuple[int, Dict[str, Any]]:
    """Per-step timings across sizes; timing noise is never fatal."""
    sizes = parse_sizes(args.sizes) if args.sizes else list(DEFAULT_BENCH_SIZES)
    if args.steps < 1:
        raise ConfigError(f"--steps must be positive, got {args.steps}")
    seed = config.walk.seed if config.walk.seed is not None else 0
    result = bench(sizes, seed=seed, steps=args.steps)

    path = reports.directory / "bench.csv"
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["m", "d", "ns_per_step"])
        for row in result.rows:
            writer.writerow([row.m, row.d, f"{row.ns_per_step:.1f}"])
    reports.write_report("bench.json", {
        "command": RunCommand.BENCH.value,
        "version": __version__,
        "sizes": [list(s) for s in sizes],
        "steps": args.steps,
        "rows": [asdict(row) for row in result.rows],
        "growth": result.growth,
    })
    return EXIT_OK, {"sizes": len(sizes)}


COMMANDS: Dict[str, Tuple[RunCommand, Callable]] = {
    "sample": (RunCommand.SAMPLE, cmd_sample),
    "diagnose": (RunCommand.DIAGNOSE, cmd_diagnose),
    "dp-erm": (RunCommand.DP_ERM, cmd_dp_erm),
    "bench": (RunCommand.BENCH, cmd_bench),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="softdikin",
        description="Soft-threshold Dikin walk sampler for log-concave targets on polytopes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="key=value run configuration")
    common.add_argument("--out", metavar="DIR", help="output directory (overrides config)")
    common.add_argument("--seed", type=int, help="RNG seed (overrides config)")
    common.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="package log level (overrides config)")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("sample", parents=[common], help="run one chain and write samples")
    diag = sub.add_parser("diagnose", parents=[common], help="run lemma checks")
    diag.add_argument("--suite", help="comma-separated lemma ids (default: all)")
    sub.add_parser("dp-erm", parents=[common], help="private logistic-loss ERM")
    bench_parser = sub.add_parser("bench", parents=[common], help="time one step across sizes")
    bench_parser.add_argument("--sizes", help="comma-separated MxD sizes, e.g. 100x20,400x20")
    bench_parser.add_argument("--steps", type=int, default=200, help="timed steps per size")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)
    command, handler = COMMANDS[args.command]

    try:
        config = _load_config(args, required=args.command != "bench")
        reports = ReportLogger(config.output.directory, config.logging.journal)
    except (ValueError, OSError) as e:
        logger.error(str(e))
        return EXIT_CONFIG

    metadata: Dict[str, Any] = {}
    try:
        code, metadata = handler(args, config, reports)
    except (ValueError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        code = EXIT_CONFIG
    except ArithmeticError as e:
        logger.error(f"{args.command} failed with a numerical error: {e}")
        code = EXIT_NUMERIC

    try:
        reports.log_run(command, config.get_config_dict(), code, metadata)
    except RuntimeError as e:
        logger.warning(str(e))
    return code


if __name__ == "__main__":
    sys.exit(main())
