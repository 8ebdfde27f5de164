"""
Runtime settings for the lattice toolkit.

Settings are read from lattice_config.json (or the file named by LATTICE_CONFIG)
and can be overridden from the environment; a .env file is honoured through
python-dotenv.
"""

import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from lattice_errors import ConfigError

DEFAULT_CONFIG_PATH = Path(__file__).with_name('lattice_config.json')

_LEVELS = {'DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'}


@dataclass
class LatticeSettings:
    log_level: str = 'WARNING'
    log_format: str = '%(asctime)s %(levelname)s %(name)s: %(message)s'
    threads: int = 1
    max_rank: int = 24
    pretty: bool = False
    indent: int = 2
    seed: int = 20240611
    trials: int = 100
    source: Optional[str] = None
    extra: Dict[str, Any] = field(default_factory=dict)


def _parse_bool(value: str) -> bool:
    return value.strip().lower() in ('1', 'true', 'yes', 'on')


def load_settings(config_path: Optional[str] = None) -> LatticeSettings:
    """
    Build settings from the JSON file and environment overrides.

    Args:
        config_path: Explicit JSON path; falls back to LATTICE_CONFIG, then to
            the file shipped next to this module.

    Returns:
        A populated LatticeSettings.
    """
    load_dotenv()
    path = Path(config_path or os.getenv('LATTICE_CONFIG') or DEFAULT_CONFIG_PATH)
    settings = LatticeSettings()

    if path.exists():
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"Malformed configuration file {path}: {e}")
        settings.source = str(path)
        logging_section = data.get('logging', {})
        enumeration = data.get('enumeration', {})
        output = data.get('output', {})
        random_checks = data.get('random_checks', {})
        settings.log_level = str(logging_section.get('level', settings.log_level)).upper()
        settings.log_format = logging_section.get('format', settings.log_format)
        settings.threads = enumeration.get('threads', settings.threads)
        settings.max_rank = enumeration.get('max_rank', settings.max_rank)
        settings.pretty = bool(output.get('pretty', settings.pretty))
        settings.indent = output.get('indent', settings.indent)
        settings.seed = random_checks.get('seed', settings.seed)
        settings.trials = random_checks.get('trials', settings.trials)
        known = {'logging', 'enumeration', 'output', 'random_checks'}
        settings.extra = {k: v for k, v in data.items() if k not in known}
    elif config_path:
        raise ConfigError(f"Configuration file not found: {path}")

    if os.getenv('LATTICE_LOG_LEVEL'):
        settings.log_level = os.getenv('LATTICE_LOG_LEVEL', '').upper()
    if os.getenv('LATTICE_THREADS'):
        try:
            settings.threads = int(os.getenv('LATTICE_THREADS', ''))
        except ValueError:
            raise ConfigError("LATTICE_THREADS must be an integer", field='LATTICE_THREADS')
    if os.getenv('LATTICE_PRETTY'):
        settings.pretty = _parse_bool(os.getenv('LATTICE_PRETTY', ''))

    _validate(settings)
    return settings


def _validate(settings: LatticeSettings):
    if settings.log_level not in _LEVELS:
        raise ConfigError(f"Unknown log level: {settings.log_level}", field='logging.level')
    if not isinstance(settings.threads, int) or settings.threads < 1:
        raise ConfigError("threads must be a positive integer", field='enumeration.threads')
    if not isinstance(settings.max_rank, int) or settings.max_rank < 1:
        raise ConfigError("max_rank must be a positive integer", field='enumeration.max_rank')
    if not isinstance(settings.indent, int) or settings.indent < 0:
        raise ConfigError("indent must be a non-negative integer", field='output.indent')


def configure_logging(settings: LatticeSettings):
    """Apply the logging section. Logs go to stderr so stdout stays JSON."""
    logging.basicConfig(level=getattr(logging, settings.log_level), format=settings.log_format)
    logging.getLogger().setLevel(getattr(logging, settings.log_level))


# Global settings instance
_settings: Optional[LatticeSettings] = None


def get_settings() -> LatticeSettings:
    """Get the process-wide settings, loading them on first use."""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def reset_settings():
    """Forget cached settings (tests change the environment between runs)."""
    global _settings
    _settings = None
