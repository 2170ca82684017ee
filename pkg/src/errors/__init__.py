"""Curved N-Body Toolkit - Custom Exception Classes

This module provides the hierarchy of custom exception classes used by the
numerical core, the scenario loader and the command-line front end.

Author: Curved N-Body Team
License: MIT
"""

from .base import (
    AcceptanceError,
    ConfigurationError,
    CurvedNBodyError,
    ErrorContext,
    ValidationError,
)

from .geometry import (
    ChartSingularityError,
    ChartDomainError,
    DomainError,
    GeometryError,
    InvalidInputError,
    PoleError,
)

from .dynamics import (
    DynamicsError,
    InsufficientSamplesError,
    IntegrationError,
    MetricInversionError,
    OracleCheckError,
    SingularConfigurationError,
)

from .scenario import ScenarioError, ScenarioParseError, ScenarioValidationError

from .handlers import (
    EXIT_ACCEPTANCE,
    EXIT_OK,
    EXIT_SINGULARITY,
    EXIT_VALIDATION,
    ErrorHandler,
    error_context,
    exit_code_for,
)

__all__ = [
    # Base exceptions
    "CurvedNBodyError",
    "ErrorContext",
    "ConfigurationError",
    "ValidationError",
    "AcceptanceError",
    # Geometry exceptions
    "GeometryError",
    "PoleError",
    "DomainError",
    "ChartSingularityError",
    "ChartDomainError",
    "InvalidInputError",
    # Dynamics exceptions
    "DynamicsError",
    "SingularConfigurationError",
    "IntegrationError",
    "MetricInversionError",
    "OracleCheckError",
    "InsufficientSamplesError",
    # Scenario exceptions
    "ScenarioError",
    "ScenarioParseError",
    "ScenarioValidationError",
    # Handling
    "ErrorHandler",
    "error_context",
    "exit_code_for",
    "EXIT_OK",
    "EXIT_VALIDATION",
    "EXIT_ACCEPTANCE",
    "EXIT_SINGULARITY",
]
