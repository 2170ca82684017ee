"""Configuration Management for the Curved N-Body Toolkit

Settings are read from ``CURVED_NBODY_*`` environment variables (nested
sections use ``__``, e.g. ``CURVED_NBODY_NUMERICS__SINGULARITY_TOL``), an
optional ``.env`` file and an optional JSON config file.

Author: Curved N-Body Team
License: MIT
"""

import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError as PydanticValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..errors import ConfigurationError

logger = logging.getLogger(__name__)


class LogLevel(str, Enum):
    """Supported logging levels"""

    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


class LogFormat(str, Enum):
    CONSOLE = "console"
    JSON = "json"


class LoggingSettings(BaseModel):
    """Logging configuration"""

    level: LogLevel = Field(default=LogLevel.INFO, description="Root log level")
    format: LogFormat = Field(default=LogFormat.CONSOLE, description="Console output format")
    file: Optional[str] = Field(default=None, description="Optional JSON-lines log file")

    @field_validator("level", mode="before")
    @classmethod
    def normalize_level(cls, v):
        return v.upper() if isinstance(v, str) else v


class NumericsSettings(BaseModel):
    """Numerical tolerances shared by the commands"""

    singularity_tol: float = Field(default=1e-9, gt=0, description="Collision/antipode tolerance (chordal units)")
    chart_tol: float = Field(default=1e-10, gt=0, description="sn(s) and sin(phi) chart-regularity tolerance")
    fd_rel_step: float = Field(default=1e-5, gt=0, description="Relative central-difference step of the oracle")


class VerificationSettings(BaseModel):
    """Defaults of the verification suite"""

    samples: int = Field(default=100, ge=1, description="Random points per (dim, kappa) case")
    gradient_samples: int = Field(default=50, ge=1, description="Random configurations per gradient case")
    seed: int = Field(default=20240601, description="Seed of the sampling generator")
    checked: bool = Field(default=False, description="Run oracle invariant assertions")


class OutputSettings(BaseModel):
    directory: str = Field(default="runs", description="Default output directory")

    def run_directory(self, name: str) -> Path:
        """Directory of one run when no --out is given"""
        return Path(self.directory) / name


class AppConfig(BaseSettings):
    """Main configuration of the toolkit"""

    logging: LoggingSettings = Field(default_factory=LoggingSettings)
    numerics: NumericsSettings = Field(default_factory=NumericsSettings)
    verification: VerificationSettings = Field(default_factory=VerificationSettings)
    output: OutputSettings = Field(default_factory=OutputSettings)

    model_config = SettingsConfigDict(
        env_prefix="CURVED_NBODY_",
        case_sensitive=False,
        env_nested_delimiter="__",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    def validate_configuration(self) -> List[str]:
        """Validate configuration and return list of issues"""
        issues = []

        if self.numerics.chart_tol >= 1e-3:
            issues.append("numerics.chart_tol is too coarse to detect chart singularities")
        if self.numerics.singularity_tol >= 1e-2:
            issues.append("numerics.singularity_tol is too coarse to detect collisions")
        if self.numerics.fd_rel_step > 1e-3 or self.numerics.fd_rel_step < 1e-8:
            issues.append("numerics.fd_rel_step outside [1e-8, 1e-3]; oracle accuracy degrades")
        if not self.output.directory:
            issues.append("output.directory cannot be empty")

        return issues

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    def save_to_file(self, filepath: str) -> None:
        Path(filepath).parent.mkdir(parents=True, exist_ok=True)
        with open(filepath, "w", encoding="utf-8") as f:
            json.dump(self.to_dict(), f, indent=2, ensure_ascii=False)
        logger.info(f"Configuration saved to {filepath}")


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(
    config_file: Optional[str] = None, env_file: Optional[str] = None
) -> AppConfig:
    """Load configuration from environment and files

    Priority order:
    1. Config file (if provided)
    2. Environment variables
    3. .env file (if exists)
    4. Defaults

    Args:
        config_file: Path to JSON config file (optional)
        env_file: Path to .env file (optional, defaults to .env)

    Returns:
        AppConfig instance

    Raises:
        ConfigurationError: If the config file is missing or invalid
    """
    env_path = env_file or ".env"
    if Path(env_path).exists():
        load_dotenv(env_path, override=False)
        logger.debug(f"Loaded environment from {env_path}")

    try:
        config = AppConfig()
    except PydanticValidationError as e:
        raise ConfigurationError(f"Invalid environment configuration: {e}", cause=e) from e

    if config_file:
        path = Path(config_file)
        if not path.exists():
            raise ConfigurationError(f"Config file not found: {config_file}")
        try:
            with open(path, "r", encoding="utf-8") as f:
                file_config = json.load(f)
            config = AppConfig.model_validate(
                _deep_merge(config.model_dump(), file_config)
            )
        except (json.JSONDecodeError, PydanticValidationError) as e:
            raise ConfigurationError(
                f"Invalid config file {config_file}: {e}", cause=e
            ) from e
        logger.debug(f"Configuration loaded from {config_file}")

    issues = config.validate_configuration()
    if issues:
        logger.warning(f"Configuration issues found: {', '.join(issues)}")

    return config


# Global config instance
_global_config: Optional[AppConfig] = None


def get_config() -> AppConfig:
    """Get global configuration instance"""
    global _global_config

    if _global_config is None:
        _global_config = load_config()

    return _global_config


def reload_config(
    config_file: Optional[str] = None, env_file: Optional[str] = None
) -> AppConfig:
    """Rebuild the global configuration instance"""
    global _global_config
    _global_config = load_config(config_file, env_file)
    return _global_config
