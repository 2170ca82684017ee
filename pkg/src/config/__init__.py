"""Configuration package for the curved-space N-body toolkit."""

from .settings import (
    AppConfig,
    LogFormat,
    LoggingSettings,
    NumericsSettings,
    OutputSettings,
    VerificationSettings,
    get_config,
    load_config,
    reload_config,
)

__all__ = [
    "AppConfig",
    "LogFormat",
    "LoggingSettings",
    "NumericsSettings",
    "OutputSettings",
    "VerificationSettings",
    "get_config",
    "load_config",
    "reload_config",
]
