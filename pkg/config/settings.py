from typing import Dict, Any, Optional
import os
from dotenv import load_dotenv

load_dotenv()

# Base utility class for configuration
class BaseConfig:
    """Base configuration class with common utilities for environment variable handling"""

    @staticmethod
    def get_env_bool(key: str, default: bool = False) -> bool:
        """Get boolean value from environment variable"""
        return os.getenv(key, str(default)).lower() == 'true'

    @staticmethod
    def get_env_int(key: str, default: int) -> int:
        """Get integer value from environment variable"""
        return int(os.getenv(key, str(default)))

    @staticmethod
    def get_env_float(key: str, default: float) -> float:
        """Get float value from environment variable"""
        return float(os.getenv(key, str(default)))

    @staticmethod
    def get_env_optional_int(key: str) -> Optional[int]:
        """Get integer value from environment variable, None when unset or empty"""
        value = os.getenv(key, '').strip()
        return int(value) if value else None

# -----------------------------------------------------------------------------
# Core System Configurations
# -----------------------------------------------------------------------------

# Logging Configuration
LOGGING_CONFIG: Dict[str, Any] = {
    'level': os.getenv('LOG_LEVEL', 'INFO').upper(),
    'format': '%(message)s',
    'file_path': os.getenv('LOG_FILE', ''),  # empty: stderr only
    'renderer': os.getenv('LOG_RENDERER', 'console'),  # 'console' or 'json'
}

# Exit codes of the segscore command
EXIT_CODES: Dict[str, int] = {
    'ok': 0,
    'bad_arguments': 1,
    'io_error': 2,
    'validation_error': 3,
}

# Label map file formats
FILE_CONFIG: Dict[str, Any] = {
    'supported_extensions': {
        '.png': 'png',
        '.pgm': 'pgm',
    },
    'pillow_formats': {
        'png': 'PNG',
        'pgm': 'PPM',  # Pillow writes mode 'L' PPM-family files as P5
    },
    'max_label': 255,
}

# -----------------------------------------------------------------------------
# Metric Configurations
# -----------------------------------------------------------------------------

METRIC_CONFIG: Dict[str, Any] = {
    'entropy_base': BaseConfig.get_env_float('SEGSCORE_ENTROPY_BASE', 2.0),
    'boundary_connectivity': 4,
    'f_convention': 'precision*recall/(precision+recall)',
    'foreground_selector': 'any-nonzero',
    'split_connected_regions': BaseConfig.get_env_bool('SEGSCORE_SPLIT_REGIONS', False),
    'identity_tolerance': 1e-12,
}

EVALUATION_CONFIG: Dict[str, Any] = {
    # None lets ThreadPoolExecutor pick its own default
    'threads': BaseConfig.get_env_optional_int('SEGSCORE_THREADS'),
    'report_per_gt': BaseConfig.get_env_bool('SEGSCORE_REPORT_PER_GT', True),
}

# -----------------------------------------------------------------------------
# Fixture and Report Configurations
# -----------------------------------------------------------------------------

FIXTURE_CONFIG: Dict[str, Any] = {
    'canvas': (100, 100),
    'gt_size': 70,
    'auto_size': 35,
    'area_tolerance': 0.01,
    # Sub-pixel offsets tried by the rotated rasterizer, first best match wins
    'center_nudges': [
        (0.0, 0.0), (0.25, -0.25), (-0.25, 0.25), (0.25, 0.25),
        (-0.25, -0.25), (0.5, 0.0), (0.0, 0.5), (0.5, 0.5),
    ],
    # Area-preserving square sharing the gt top edge at 0 degrees
    'rotation_base': {
        'canvas': (100, 100),
        'gt_rect': (12, 12, 80, 80),
        'auto_rect': (27, 12, 50, 50),
    },
    # Identical squares; the automatic one is shifted along x
    'translation_base': {
        'canvas': (100, 100),
        'gt_rect': (32, 32, 35, 35),
        'auto_rect': (32, 32, 35, 35),
    },
    'rotation_angles': [0.0, 15.0, 30.0, 45.0],
    'translation_steps': [0, 5, 10],
    'auto_filename_pattern': '{name}_auto.png',
    'gt_filename_pattern': '{name}_gt.png',
}

REPORT_CONFIG: Dict[str, Any] = {
    'schema_version': 1,
    'significant_digits': 6,
    'default_format': 'json',
    'csv_columns': ['image_id', 'metric', 'value', 'polarity', 'reason'],
}
