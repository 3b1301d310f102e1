"""
Configuration loading utilities and templates.
"""

import copy
import os
from dataclasses import asdict
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

from ..errors import ConfigError
from .manager import (
    ConfigManager, DiagnosticsConfig, LoggingConfig, OutputConfig, PolytopeConfig,
    TargetConfig, WalkSection,
)

PathLike = Union[str, Path]

_SAMPLE_HEADER = """\
# softdikin run configuration.
# key = value lines grouped under [section] headers; '#' starts a comment.
# Vectors (witness, center, coefficients) are comma-separated numbers.
# walk.seed is required for every run; --seed on the command line overrides it.
# Leave walk.steps unset to take T from the step-count formula.

"""


def load_config(config_file: PathLike) -> ConfigManager:
    """
    Load configuration from file.

    Raises:
        ConfigError: If the file is missing or malformed
    """
    return ConfigManager(config_file)


def save_config(config_manager: ConfigManager, config_file: PathLike) -> None:
    """Save configuration to file."""
    config_manager.save_config(config_file)


def get_default_config() -> Dict[str, Dict[str, Any]]:
    """Default configuration as nested dictionaries."""
    return {
        'polytope': asdict(PolytopeConfig()),
        'target': asdict(TargetConfig()),
        'walk': asdict(WalkSection()),
        'diagnostics': asdict(DiagnosticsConfig()),
        'output': asdict(OutputConfig()),
        'logging': asdict(LoggingConfig()),
    }


def config_from_dict(config: Dict[str, Dict[str, Any]]) -> ConfigManager:
    """Build a manager from nested dictionaries (no file, no environment)."""
    manager = ConfigManager(apply_env=False)
    for section, values in config.items():
        manager.update_config(section, values)
    return manager


def create_sample_config(output_file: PathLike) -> None:
    """Write the defaults with an explanatory comment header."""
    manager = config_from_dict(get_default_config())
    manager.update_config('walk', {'seed': 1})
    manager.save_config(output_file)
    body = Path(output_file).read_text(encoding='utf-8')
    Path(output_file).write_text(_SAMPLE_HEADER + body, encoding='utf-8')


def validate_config_file(config_file: PathLike) -> Tuple[bool, List[str]]:
    """
    Validate a configuration file.

    Returns:
        Tuple of (is_valid, list_of_errors)
    """
    if not os.path.exists(config_file):
        return False, [f"Configuration file does not exist: {config_file}"]
    try:
        manager = ConfigManager(config_file, apply_env=False)
    except ConfigError as e:
        return False, [str(e)]
    errors = manager.validate_config()
    return len(errors) == 0, errors


def merge_configs(base_config: Dict[str, Any],
                  override_config: Dict[str, Any]) -> Dict[str, Any]:
    """Merge two nested configuration dictionaries; override wins per key."""
    merged = copy.deepcopy(base_config)

    for section, values in override_config.items():
        if section in merged and isinstance(merged[section], dict) and isinstance(values, dict):
            merged[section].update(values)
        else:
            merged[section] = values

    return merged


def create_config_from_template(template_name: str, output_file: PathLike) -> None:
    """
    Create a configuration file from a predefined template.

    Args:
        template_name: 'default', 'desk' (unit constants for laptop-scale runs)
            or 'prescribed' (the constants of the mixing guarantee)
        output_file: Path to create configuration file

    Raises:
        ValueError: For an unknown template
    """
    defaults = get_default_config()
    templates = {
        'default': defaults,

        'desk': merge_configs(defaults, {
            'walk': {
                'c_alpha': 1.0,
                'c_eta': 1.0,
                'c_T': 1.0,
                'steps': 200000,
                'thin': 10,
                'seed': 7,
            },
        }),

        'prescribed': merge_configs(defaults, {
            'walk': {
                'c_alpha': 1e5,
                'c_eta': 1e4,
                'c_T': 1e9,
                'seed': 7,
            },
        }),
    }

    if template_name not in templates:
        raise ValueError(f"Unknown template: {template_name}. Available: {list(templates.keys())}")

    config_from_dict(templates[template_name]).save_config(output_file)
