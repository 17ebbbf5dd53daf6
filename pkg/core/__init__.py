"""
MV Completion Lab - Core Module

Settings, logging and the error hierarchy shared by the algebra and cli packages.
"""

__version__ = "1.0.0"
__license__ = "MIT"

from .errors import (
    MvLabError,
    InvalidParameterError,
    TableFormatError,
    InvalidArgumentError,
    PreconditionError,
    UndefinedPartialSum,
    DescriptionError,
    ConfigError,
    ResourceLimitError,
    AxiomViolation,
    InvariantViolation,
    HomomorphismError,
    TheoremViolation,
)
from .utils import (
    Settings,
    logger,
    hash_data,
    canonical_json,
    PerformanceTimer,
    load_settings,
    get_settings,
    use_settings,
    apply_overrides,
    configure_logging,
    validate_config,
)

__all__ = [
    'MvLabError',
    'InvalidParameterError',
    'TableFormatError',
    'InvalidArgumentError',
    'PreconditionError',
    'UndefinedPartialSum',
    'DescriptionError',
    'ConfigError',
    'ResourceLimitError',
    'AxiomViolation',
    'InvariantViolation',
    'HomomorphismError',
    'TheoremViolation',
    'Settings',
    'logger',
    'hash_data',
    'canonical_json',
    'PerformanceTimer',
    'load_settings',
    'get_settings',
    'use_settings',
    'apply_overrides',
    'configure_logging',
    'validate_config',
]


# Package initialization
def init_package():
    """Load and validate settings, then configure logging"""
    settings = get_settings()
    configure_logging(settings)
    logger("Core package initialized successfully", 'debug')


# Run initialization when package is imported
init_package()

# Clean up namespace
del init_package
