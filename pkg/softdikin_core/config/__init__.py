"""
Run configuration for the soft-threshold Dikin walk.
"""

from .manager import (
    ConfigManager, PolytopeConfig, TargetConfig, WalkSection, DiagnosticsConfig,
    OutputConfig, LoggingConfig, parse_vector,
)
from .loader import (
    load_config, save_config, get_default_config, config_from_dict, create_sample_config,
    validate_config_file, merge_configs, create_config_from_template,
)

__all__ = [
    'ConfigManager',
    'PolytopeConfig',
    'TargetConfig',
    'WalkSection',
    'DiagnosticsConfig',
    'OutputConfig',
    'LoggingConfig',
    'parse_vector',
    'load_config',
    'save_config',
    'get_default_config',
    'config_from_dict',
    'create_sample_config',
    'validate_config_file',
    'merge_configs',
    'create_config_from_template',
]
