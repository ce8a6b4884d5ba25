from .settings import (
    # Base configurations
    LOGGING_CONFIG,
    EXIT_CODES,
    FILE_CONFIG,
    BaseConfig,

    # Metric configurations
    METRIC_CONFIG,
    EVALUATION_CONFIG,

    # Fixture and report configurations
    FIXTURE_CONFIG,
    REPORT_CONFIG,
)

__all__ = [
    # Base configurations
    'LOGGING_CONFIG',
    'EXIT_CODES',
    'FILE_CONFIG',
    'BaseConfig',

    # Metric configurations
    'METRIC_CONFIG',
    'EVALUATION_CONFIG',

    # Fixture and report configurations
    'FIXTURE_CONFIG',
    'REPORT_CONFIG',
]
