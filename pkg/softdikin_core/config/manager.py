"""
Run configuration: dataclass sections read from a key=value file with
[section] headers, then overridden from the environment.
"""

import configparser
import os
import threading
import typing
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Union
import logging

from ..errors import ConfigError

logger = logging.getLogger(__name__)

SECTIONS = ("polytope", "target", "walk", "diagnostics", "output", "logging")
POLYTOPE_SOURCES = ("builtin", "file")
TARGET_NAMES = ("uniform", "linear", "quadratic", "logistic_lasso", "hinge")
BUILTIN_POLYTOPE_NAMES = ("box", "simplex", "l1_ball")
VARIANT_NAMES = ("exact_mh", "paper_literal")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class PolytopeConfig:
    """Where K comes from: a built-in family or an "m d" text file."""
    source: str = "builtin"
    name: str = "box"
    dimension: int = 2
    half_width: float = 1.0
    radius: float = 1.0
    path: Optional[str] = None
    witness: Optional[str] = None


@dataclass
class TargetConfig:
    """Built-in target and its parameters; vectors are comma-separated."""
    name: str = "uniform"
    R: Optional[float] = None
    beta: float = 1.0
    center: Optional[str] = None
    coefficients: Optional[str] = None
    dataset: Optional[str] = None
    scale: float = 1.0
    epsilon: float = 1.0
    lipschitz_hat: float = 1.0


@dataclass
class WalkSection:
    """Walk constants; steps unset means T from the step-count formula."""
    c_alpha: float = 1e5
    c_eta: float = 1e4
    c_T: float = 1e9
    laziness: float = 0.5
    variant: str = "exact_mh"
    steps: Optional[int] = None
    seed: Optional[int] = None
    thin: int = 1
    both_rule: str = "min"
    warmness_M: float = 0.0
    delta: float = 0.1


@dataclass
class DiagnosticsConfig:
    """Lemma suite selection and trial counts."""
    suite: Optional[str] = None
    pairs: int = 1000
    points: int = 10
    draws: int = 1000
    samples: int = 1000
    grid_resolution: int = 20
    workers: int = 1


@dataclass
class OutputConfig:
    directory: str = "out"
    samples_file: str = "samples.csv"
    report_file: str = "report.json"


@dataclass
class LoggingConfig:
    level: str = "INFO"
    journal: str = "runs.jsonl"


def parse_vector(raw: Optional[str]) -> Optional[List[float]]:
    """Parse "1.0, 2.0" into floats; None or blank gives None."""
    if raw is None or not raw.strip():
        return None
    try:
        return [float(x) for x in raw.replace(";", ",").split(",") if x.strip()]
    except ValueError as e:
        raise ConfigError(f"Invalid vector '{raw}': {e}")


def _parse_bool(raw: str) -> bool:
    return raw.strip().lower() in ("1", "true", "yes", "on")


def _field_type(section_obj: object, name: str) -> type:
    hint = typing.get_type_hints(type(section_obj))[name]
    args = [a for a in typing.get_args(hint) if a is not type(None)]
    return args[0] if args else hint


class ConfigManager:
    """
    Thread-safe holder of the run configuration.

    Values come from the dataclass defaults, then the config file (if any),
    then SOFTDIKIN_* environment variables.
    """

    def __init__(self, config_file: Optional[Union[str, Path]] = None, apply_env: bool = True):
        """
        Initialize configuration manager.

        Args:
            config_file: Path to a key=value file; defaults only when None
            apply_env: Apply SOFTDIKIN_* environment overrides after loading

        Raises:
            ConfigError: If the file is missing or malformed
        """
        self.config_file = str(config_file) if config_file is not None else None
        self._lock = threading.RLock()

        self.polytope = PolytopeConfig()
        self.target = TargetConfig()
        self.walk = WalkSection()
        self.diagnostics = DiagnosticsConfig()
        self.output = OutputConfig()
        self.logging = LoggingConfig()

        if self.config_file is not None:
            self.load_config(self.config_file)
        if apply_env:
            self._apply_env_overrides()

    def _section(self, name: str) -> object:
        if name not in SECTIONS:
            raise ConfigError(f"Invalid configuration section: {name}")
        return getattr(self, name)

    def load_config(self, config_file: Optional[Union[str, Path]] = None) -> None:
        """
        Load a key=value file with [section] headers.

        Raises:
            ConfigError: If the file is missing, unparsable or names unknown keys
        """
        file_path = str(config_file or self.config_file)
        if not os.path.exists(file_path):
            raise ConfigError(f"Configuration file not found: {file_path}")

        parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
        parser.optionxform = str
        try:
            parser.read(file_path, encoding="utf-8")
        except configparser.Error as e:
            raise ConfigError(f"Cannot parse {file_path}: {e}")

        with self._lock:
            for section in parser.sections():
                self.update_config(section, dict(parser.items(section)))
        logger.info(f"Loaded configuration from {file_path}")

    def save_config(self, config_file: Optional[Union[str, Path]] = None) -> None:
        """Write the current configuration; unset values are omitted."""
        file_path = config_file or self.config_file
        if file_path is None:
            raise ConfigError("No configuration file path given")
        parser = configparser.ConfigParser(interpolation=None)
        parser.optionxform = str
        with self._lock:
            for name, values in self.get_config_dict().items():
                parser[name] = {k: str(v) for k, v in values.items() if v is not None}
        Path(file_path).parent.mkdir(parents=True, exist_ok=True)
        with open(file_path, "w", encoding="utf-8") as f:
            parser.write(f)
        logger.info(f"Saved configuration to {file_path}")

    def update_config(self, section: str, updates: Dict[str, Any]) -> None:
        """
        Update a section, coercing strings to each field's declared type.

        Raises:
            ConfigError: For an unknown section or field, or an unconvertible value
        """
        with self._lock:
            target = self._section(section)
            valid_fields = {f.name for f in fields(target)}
            invalid_fields = set(updates) - valid_fields
            if invalid_fields:
                raise ConfigError(f"Invalid fields for {section}: {sorted(invalid_fields)}")

            for field_name, value in updates.items():
                setattr(target, field_name, self._coerce(target, section, field_name, value))
                logger.debug(f"Updated {section}.{field_name} = {value}")

    def _coerce(self, target: object, section: str, field_name: str, value: Any) -> Any:
        if value is None:
            return None
        if isinstance(value, str) and not value.strip():
            return None
        wanted = _field_type(target, field_name)
        try:
            if wanted is bool:
                return _parse_bool(value) if isinstance(value, str) else bool(value)
            if wanted is int and isinstance(value, str):
                # Accept "2e5"-style step counts when they are integral.
                number = float(value)
                if number != int(number):
                    raise ValueError(f"{value} is not an integer")
                return int(number)
            return wanted(value)
        except (ValueError, TypeError, OverflowError) as e:
            raise ConfigError(f"Invalid value for {section}.{field_name}: {value!r} ({e})")

    def get_config_dict(self) -> Dict[str, Dict[str, Any]]:
        """All sections as nested dictionaries."""
        with self._lock:
            return {name: asdict(getattr(self, name)) for name in SECTIONS}

    def reset_to_defaults(self) -> None:
        """Reset all configuration to default values."""
        with self._lock:
            self.polytope = PolytopeConfig()
            self.target = TargetConfig()
            self.walk = WalkSection()
            self.diagnostics = DiagnosticsConfig()
            self.output = OutputConfig()
            self.logging = LoggingConfig()
            logger.info("Reset configuration to defaults")

    def validate_config(self) -> List[str]:
        """
        Validate the current configuration.

        Returns:
            List of validation errors (empty if valid)
        """
        errors = []

        with self._lock:
            p = self.polytope
            if p.source not in POLYTOPE_SOURCES:
                errors.append(f"polytope.source must be one of {POLYTOPE_SOURCES}")
            elif p.source == "file" and not p.path:
                errors.append("polytope.path is required when polytope.source = file")
            elif p.source == "builtin" and p.name not in BUILTIN_POLYTOPE_NAMES:
                errors.append(f"polytope.name must be one of {BUILTIN_POLYTOPE_NAMES}")
            if p.source == "builtin" and p.dimension < 1:
                errors.append("polytope.dimension must be positive")

            t = self.target
            if t.name not in TARGET_NAMES:
                errors.append(f"target.name must be one of {TARGET_NAMES}")
            if t.name in ("logistic_lasso", "hinge") and not t.dataset:
                errors.append(f"target.dataset is required for target '{t.name}'")
            if t.name == "linear" and t.coefficients is None:
                errors.append("target.coefficients is required for target 'linear'")
            if t.R is not None and t.R <= 0:
                errors.append("target.R must be positive")
            if t.beta < 0:
                errors.append("target.beta must be nonnegative")
            for name in ("scale", "epsilon", "lipschitz_hat"):
                if getattr(t, name) <= 0:
                    errors.append(f"target.{name} must be positive")

            w = self.walk
            for name in ("c_alpha", "c_eta", "c_T"):
                if getattr(w, name) <= 0:
                    errors.append(f"walk.{name} must be positive")
            if not 0.0 < w.laziness <= 1.0:
                errors.append("walk.laziness must be in (0, 1]")
            if w.variant not in VARIANT_NAMES:
                errors.append(f"walk.variant must be one of {VARIANT_NAMES}")
            if w.steps is not None and w.steps < 0:
                errors.append("walk.steps must be nonnegative")
            if w.thin < 1:
                errors.append("walk.thin must be at least 1")
            if w.both_rule not in ("min", "max"):
                errors.append("walk.both_rule must be 'min' or 'max'")
            if w.warmness_M < 0:
                errors.append("walk.warmness_M must be nonnegative")
            if not 0.0 < w.delta < 1.0:
                errors.append("walk.delta must be in (0, 1)")

            d = self.diagnostics
            for name in ("pairs", "points", "draws", "samples", "grid_resolution", "workers"):
                if getattr(d, name) < 1:
                    errors.append(f"diagnostics.{name} must be positive")

            if self.logging.level.upper() not in LOG_LEVELS:
                errors.append(f"logging.level must be one of {LOG_LEVELS}")

        return errors

    def require_seed(self) -> int:
        """
        The run seed; runs never fall back to wall-clock seeding.

        Raises:
            ConfigError: If walk.seed is unset
        """
        if self.walk.seed is None:
            raise ConfigError("walk.seed is required (set it in the config or pass --seed)")
        return self.walk.seed

    def _apply_env_overrides(self) -> None:
        """Apply configuration overrides from environment variables."""
        env_mappings = {
            'SOFTDIKIN_SEED': ('walk', 'seed'),
            'SOFTDIKIN_STEPS': ('walk', 'steps'),
            'SOFTDIKIN_LAZINESS': ('walk', 'laziness'),
            'SOFTDIKIN_VARIANT': ('walk', 'variant'),
            'SOFTDIKIN_C_ALPHA': ('walk', 'c_alpha'),
            'SOFTDIKIN_C_ETA': ('walk', 'c_eta'),
            'SOFTDIKIN_C_T': ('walk', 'c_T'),
            'SOFTDIKIN_LOG_LEVEL': ('logging', 'level'),
            'SOFTDIKIN_OUT_DIR': ('output', 'directory'),
        }

        for env_var, (section, field_name) in env_mappings.items():
            value = os.getenv(env_var)
            if value is not None:
                try:
                    self.update_config(section, {field_name: value})
                    logger.info(f"Applied environment override: {env_var} -> "
                                f"{section}.{field_name}")
                except ConfigError as e:
                    logger.warning(f"Failed to apply environment override {env_var}: {e}")
