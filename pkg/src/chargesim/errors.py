"""Shared exception types.

ConfigError maps to CLI exit code 2, DataError to exit code 3. Everything
else is an internal failure.
"""

from __future__ import annotations


class ConfigError(ValueError):
    """Invalid configuration: unknown key, bad value, inconsistent flags."""


class DataError(ValueError):
    """Invalid input data: malformed CSV, impossible values, empty inputs."""
