"""Exception hierarchy, conversion and exit codes"""

import pytest

from src.errors import (
    AcceptanceError,
    ChartSingularityError,
    ConfigurationError,
    CurvedNBodyError,
    DomainError,
    DynamicsError,
    ErrorHandler,
    InsufficientSamplesError,
    IntegrationError,
    InvalidInputError,
    MetricInversionError,
    OracleCheckError,
    PoleError,
    ScenarioError,
    ScenarioParseError,
    ScenarioValidationError,
    SingularConfigurationError,
    ValidationError,
    error_context,
    exit_code_for,
)


@pytest.mark.parametrize(
    "error, code",
    [
        (AcceptanceError("slope too small"), 2),
        (ConfigurationError("bad file"), 1),
        (ValidationError("bad value"), 1),
        (ScenarioValidationError("bad scenario"), 1),
        (ScenarioError("unreadable"), 1),
        (InvalidInputError("not on the manifold"), 1),
        (PoleError("pole", function="ctn", kappa=1.0, s=0.0), 3),
        (ChartSingularityError("pole of the chart"), 3),
        (SingularConfigurationError("collision"), 3),
        (IntegrationError("max steps"), 3),
        (RuntimeError("unexpected"), 3),
    ],
)
def test_exit_codes(error, code):
    assert exit_code_for(error) == code


@pytest.mark.parametrize(
    "error, code",
    [
        (DomainError("chord too long", argument=3.0, bound=2.0), "DOMAIN_ERROR"),
        (MetricInversionError("singular"), "METRIC_INVERSION_ERROR"),
        (OracleCheckError("asymmetric", invariant="metric-symmetry"), "ORACLE_CHECK_ERROR"),
        (InsufficientSamplesError("three samples"), "INSUFFICIENT_SAMPLES"),
        (ScenarioParseError("line 3", line=3, column=15), "SCENARIO_PARSE_ERROR"),
    ],
)
def test_codes_and_messages(error, code):
    assert error.error_code == code
    assert error.japanese_message
    document = error.to_dict()
    assert document["error_code"] == code
    assert document["error_type"] == type(error).__name__


def test_specific_fields_are_serialised():
    assert ScenarioParseError("x", line=3, column=15, path="a.json").to_dict()["line"] == 3
    assert AcceptanceError("x", violations=["slope"]).to_dict()["violations"] == ["slope"]
    assert OracleCheckError("x", invariant="rhs-oracle", residual=0.5).to_dict()["residual"] == 0.5
    assert ValidationError("x", field="dt", value=0.0).to_dict()["value"] == "0.0"


def test_messages():
    error = PoleError("ctn has a pole at s=0", function="ctn", kappa=1.0, s=0.0)
    assert error.get_user_message() == "関数の極で評価されました: ctn has a pole at s=0"
    detailed = ErrorHandler("ktrig").handle_error(error, operation="ctn").get_detailed_message()
    assert detailed == "Error: ctn has a pole at s=0 | Code: POLE_ERROR | Component: ktrig | Operation: ctn"


def test_scenario_diagnostics_become_validation_errors():
    error = ScenarioValidationError("x", diagnostics=[{"loc": "bodies[1].mass", "msg": "must be positive"}])
    assert error.validation_errors == ["bodies[1].mass: must be positive"]


def test_handler_converts_foreign_exceptions():
    handler = ErrorHandler("tests")
    assert isinstance(handler.handle_error(ValueError("bad")), ValidationError)
    missing = handler.handle_error(FileNotFoundError(2, "No such file", "a.json"))
    assert isinstance(missing, ValidationError)
    assert missing.field == "path"
    numeric = handler.handle_error(ZeroDivisionError("division by zero"))
    assert isinstance(numeric, DynamicsError)
    assert numeric.message.startswith("Numerical failure")
    other = handler.handle_error(RuntimeError("boom"))
    assert type(other) is CurvedNBodyError

    metrics = handler.get_metrics()
    assert metrics["total_errors"] == 4
    assert metrics["errors_by_type"]["ValidationError"] == 2
    assert handler.get_recent_errors(1)[0]["error_type"] == "CurvedNBodyError"


def test_handler_keeps_library_errors():
    error = PoleError("pole", function="ctn", kappa=1.0, s=0.0)
    converted = ErrorHandler("tests").handle_error(error, operation="derive")
    assert converted is error
    assert converted.context.component == "tests"
    assert converted.context.operation == "derive"


def test_error_context_converts_and_chains():
    with pytest.raises(ValidationError) as excinfo:
        with error_context("cli", "simulate", scenario="a.json"):
            raise KeyError("bodies")
    assert isinstance(excinfo.value.__cause__, KeyError)
    assert excinfo.value.context.operation == "simulate"
    assert excinfo.value.context.additional_data == {"scenario": "a.json"}

    original = AcceptanceError("slope")
    with pytest.raises(AcceptanceError) as excinfo:
        with error_context("cli", "sweep"):
            raise original
    assert excinfo.value is original
