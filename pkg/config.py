"""
Configuration Management for the coprimary filtration toolkit

This module centralizes all limits and defaults to avoid hardcoding
values throughout the codebase.
"""

import os
from dotenv import load_dotenv

# Load environment variables once at module level
load_dotenv()


def _env_int(name: str, default: int) -> int:
    value = os.getenv(f"COPRIME_{name}")
    if value is None or value.strip() == "":
        return default
    try:
        return int(value)
    except ValueError:
        return default


class Config:
    """Main configuration class for the toolkit"""

    # ==================== Versioning ====================
    TOOL_VERSION = "0.3.0"
    JSON_SCHEMA_VERSION = "1"

    # ==================== Oracle & Search Limits ====================
    ORACLE_MAX_ELEMENTS = _env_int("ORACLE_MAX_ELEMENTS", 5000)
    UNIQUENESS_SEARCH_MAX_ELEMENTS = _env_int("UNIQUENESS_SEARCH_MAX_ELEMENTS", 200)

    # ==================== Poset & Equivalence Limits ====================
    LINEAR_EXTENSION_LIMIT = _env_int("LINEAR_EXTENSION_LIMIT", 8)
    EQUIVALENCE_MAX_ASS = _env_int("EQUIVALENCE_MAX_ASS", 5)
    DEFAULT_MAX_EXTENSIONS = _env_int("DEFAULT_MAX_EXTENSIONS", 120)

    # ==================== Randomized Checks ====================
    DEFAULT_SEED = _env_int("DEFAULT_SEED", 0)
    STABILITY_SEEDS = _env_int("STABILITY_SEEDS", 20)

    # ==================== Omega Demo ====================
    OMEGA_DEFAULT_PREFIX = _env_int("OMEGA_DEFAULT_PREFIX", 5)
    OMEGA_MAX_PREFIX = _env_int("OMEGA_MAX_PREFIX", 200)

    # ==================== Logging ====================
    LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")
    LOG_DIR = os.getenv("LOG_DIR") or None
    LOG_FORMAT = os.getenv("LOG_FORMAT", "text")

    @classmethod
    def validate(cls):
        """Validate configured limits"""
        from utils.exceptions import InvalidConfigurationError

        positive = {
            'ORACLE_MAX_ELEMENTS': cls.ORACLE_MAX_ELEMENTS,
            'UNIQUENESS_SEARCH_MAX_ELEMENTS': cls.UNIQUENESS_SEARCH_MAX_ELEMENTS,
            'LINEAR_EXTENSION_LIMIT': cls.LINEAR_EXTENSION_LIMIT,
            'EQUIVALENCE_MAX_ASS': cls.EQUIVALENCE_MAX_ASS,
            'DEFAULT_MAX_EXTENSIONS': cls.DEFAULT_MAX_EXTENSIONS,
            'STABILITY_SEEDS': cls.STABILITY_SEEDS,
            'OMEGA_DEFAULT_PREFIX': cls.OMEGA_DEFAULT_PREFIX,
            'OMEGA_MAX_PREFIX': cls.OMEGA_MAX_PREFIX,
        }
        for key, value in positive.items():
            if value <= 0:
                raise InvalidConfigurationError(
                    f"{key} must be positive, got {value}",
                    details={'key': key, 'value': value}
                )
        if cls.LOG_FORMAT.lower() not in ('text', 'json'):
            raise InvalidConfigurationError(
                f"LOG_FORMAT must be 'text' or 'json', got {cls.LOG_FORMAT!r}",
                details={'key': 'LOG_FORMAT'}
            )

    @classmethod
    def get_limit(cls, name: str) -> int:
        """
        Get a numeric limit by short name

        Args:
            name: One of 'oracle', 'uniqueness', 'extensions', 'equivalence', 'prefix'

        Returns:
            The configured limit
        """
        limit_map = {
            'oracle': cls.ORACLE_MAX_ELEMENTS,
            'uniqueness': cls.UNIQUENESS_SEARCH_MAX_ELEMENTS,
            'extensions': cls.DEFAULT_MAX_EXTENSIONS,
            'equivalence': cls.EQUIVALENCE_MAX_ASS,
            'prefix': cls.OMEGA_DEFAULT_PREFIX,
        }
        return limit_map.get(name, cls.ORACLE_MAX_ELEMENTS)


# Validate configuration on import
try:
    Config.validate()
except Exception as e:
    # Don't fail on import, but warn
    import warnings
    warnings.warn(f"Configuration validation failed: {e}")
