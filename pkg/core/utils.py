import os
import json
import logging
import hashlib
import inspect
import time
import configparser
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Optional

from dotenv import load_dotenv

from core.errors import ConfigError

ROOT_DIR = Path(__file__).resolve().parent.parent
DEFAULT_CONFIG_PATH = ROOT_DIR / 'config' / 'settings.ini'

LOG_FORMAT = '[%(asctime)s] [%(levelname)s] [%(name)s] %(message)s'

# Environment variable -> (section, key)
ENV_OVERRIDES = {
    'MVLAB_MAX_CARRIER': ('LIMITS', 'MAX_CARRIER'),
    'MVLAB_MAX_IDEALS': ('LIMITS', 'MAX_IDEALS'),
    'MVLAB_LOG_LEVEL': ('LOGGING', 'LEVEL'),
    'MVLAB_LOG_FILE': ('LOGGING', 'LOG_FILE'),
}

REQUIRED_SECTIONS = {
    'LIMITS': ['MAX_CARRIER', 'MAX_IDEALS'],
    'REPORT': ['DEFAULT_OUTPUT', 'TOOL_VERSION'],
    'LOGGING': ['LEVEL'],
}


@dataclass(frozen=True)
class Settings:
    max_carrier: int = 5000
    max_ideals: int = 100000
    default_output: str = 'text'
    tool_version: str = '1.0.0'
    log_level: str = 'WARNING'
    log_file: str = ''


_active_settings: Optional[Settings] = None


def logger(message: str, level: str = 'info') -> None:
    """Log through the calling module's logger, prefixed with the calling function"""
    caller_frame = inspect.stack()[1]
    module = inspect.getmodule(caller_frame[0])
    caller_module = module.__name__ if module else 'unknown'
    caller_name = caller_frame[3]

    log = logging.getLogger(caller_module)
    log_func = {
        'debug': log.debug,
        'info': log.info,
        'warning': log.warning,
        'error': log.error,
        'critical': log.critical,
    }.get(level.lower(), log.info)
    log_func(f"[{caller_name}] {message}")


def configure_logging(settings: Settings) -> None:
    """Install the stderr handler, plus a file handler when LOG_FILE is set"""
    handlers = [logging.StreamHandler()]
    if settings.log_file:
        handlers.append(logging.FileHandler(settings.log_file))
    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper(), logging.WARNING),
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )


def _read_config(config_path: Path) -> configparser.ConfigParser:
    config = configparser.ConfigParser()
    if not config.read(config_path):
        raise ConfigError(f"Settings file not found: {config_path}")

    load_dotenv()
    for env_name, (section, key) in ENV_OVERRIDES.items():
        value = os.environ.get(env_name)
        if value is not None:
            if not config.has_section(section):
                config.add_section(section)
            config[section][key] = value
    return config


def validate_config(config: configparser.ConfigParser) -> None:
    """Check required sections, keys and value types"""
    for section, keys in REQUIRED_SECTIONS.items():
        if not config.has_section(section):
            raise ConfigError(f"Missing config section: {section}")
        for key in keys:
            if not config.has_option(section, key):
                raise ConfigError(f"Missing config key: {section}.{key}")

    for key in ('MAX_CARRIER', 'MAX_IDEALS'):
        try:
            value = config.getint('LIMITS', key)
        except ValueError:
            raise ConfigError(f"LIMITS.{key} must be an integer")
        if value < 1:
            raise ConfigError(f"LIMITS.{key} must be positive, got {value}")

    output = config['REPORT']['DEFAULT_OUTPUT'].strip().lower()
    if output not in ('text', 'json'):
        raise ConfigError(f"REPORT.DEFAULT_OUTPUT must be text or json, got {output!r}")

    level = config['LOGGING']['LEVEL'].strip().upper()
    if not isinstance(logging.getLevelName(level), int):
        raise ConfigError(f"Unknown logging level: {level}")


def load_settings(config_path: Optional[Path] = None) -> Settings:
    """Read settings.ini, apply environment overrides and validate"""
    config = _read_config(Path(config_path or DEFAULT_CONFIG_PATH))
    validate_config(config)
    return Settings(
        max_carrier=config.getint('LIMITS', 'MAX_CARRIER'),
        max_ideals=config.getint('LIMITS', 'MAX_IDEALS'),
        default_output=config['REPORT']['DEFAULT_OUTPUT'].strip().lower(),
        tool_version=config['REPORT']['TOOL_VERSION'].strip(),
        log_level=config['LOGGING']['LEVEL'].strip().upper(),
        log_file=config['LOGGING'].get('LOG_FILE', '').strip(),
    )


def get_settings() -> Settings:
    global _active_settings
    if _active_settings is None:
        _active_settings = load_settings()
    return _active_settings


def use_settings(settings: Settings) -> None:
    global _active_settings
    _active_settings = settings


def apply_overrides(**changes: Any) -> Settings:
    """Replace fields of the active settings, e.g. max_carrier from --max-carrier"""
    settings = replace(get_settings(), **{k: v for k, v in changes.items() if v is not None})
    use_settings(settings)
    logger(f"Active settings: {settings}", 'debug')
    return settings


def hash_data(data: str, algorithm: str = 'sha256') -> str:
    """Generate cryptographic hash of data"""
    hasher = hashlib.new(algorithm)
    hasher.update(data.encode('utf-8'))
    return hasher.hexdigest()


def canonical_json(data: Any, indent: Optional[int] = 2) -> str:
    """Deterministic JSON text: sorted keys, fixed separators"""
    separators = (',', ': ') if indent else (',', ':')
    return json.dumps(data, sort_keys=True, indent=indent, separators=separators, ensure_ascii=False)


class PerformanceTimer:
    """Context manager for performance timing"""
    def __init__(self, name: str = ''):
        self.name = name
        self.start_time = None
        self.end_time = None

    def __enter__(self):
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.end_time = time.perf_counter()
        logging.getLogger(__name__).debug(f"{self.name} executed in {self.elapsed():.4f} seconds")

    def elapsed(self) -> float:
        if self.start_time is None:
            return 0.0
        end = self.end_time or time.perf_counter()
        return end - self.start_time
