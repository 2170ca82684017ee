"""Scenario Loading and Canonical Output

Parses scenario JSON into the pydantic schema with line/column
diagnostics for syntax errors and per-field diagnostics for schema
errors, and writes scenarios back in a canonical form that re-parses to
an identical scenario.

Author: Curved N-Body Team
License: MIT
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import ValidationError as PydanticValidationError

from ..errors import ScenarioError, ScenarioParseError, ScenarioValidationError
from ..logging import get_logger
from .schema import Scenario

logger = get_logger(__name__)


def _format_loc(loc) -> str:
    """("bodies", 1, "mass") → "bodies[1].mass" """
    text = ""
    for part in loc:
        if isinstance(part, int):
            text += f"[{part}]"
        else:
            text += f".{part}" if text else str(part)
    return text or "scenario"


def diagnostics_from(error: PydanticValidationError) -> List[Dict[str, str]]:
    return [{"loc": _format_loc(e["loc"]), "msg": e["msg"]} for e in error.errors()]


def parse_scenario(text: str, path: Optional[str] = None) -> Scenario:
    """Parse scenario JSON text

    Raises:
        ScenarioParseError: For malformed JSON, with line and column
        ScenarioValidationError: For schema violations, one diagnostic per field
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioParseError(
            f"{path or 'scenario'}:{e.lineno}:{e.colno}: {e.msg}",
            line=e.lineno,
            column=e.colno,
            path=path,
            cause=e,
        ) from e
    return scenario_from_dict(data, path)


def scenario_from_dict(data: Any, path: Optional[str] = None) -> Scenario:
    try:
        return Scenario.model_validate(data)
    except PydanticValidationError as e:
        diagnostics = diagnostics_from(e)
        summary = "; ".join(f"{d['loc']}: {d['msg']}" for d in diagnostics)
        raise ScenarioValidationError(
            f"invalid scenario {path}: {summary}" if path else f"invalid scenario: {summary}",
            diagnostics=diagnostics,
            path=path,
            cause=e,
        ) from e


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Read and validate a scenario file

    Raises:
        ScenarioError: If the file cannot be read
        ScenarioParseError: For malformed JSON
        ScenarioValidationError: For schema violations
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioError(f"cannot read scenario {path}: {e}", path=str(path), cause=e) from e
    scenario = parse_scenario(text, str(path))
    logger.debug(
        "scenario loaded",
        path=str(path),
        bodies=len(scenario.bodies),
        dim=scenario.dim,
        kappa=scenario.manifold.kappa,
    )
    return scenario


def dump_scenario(scenario: Scenario) -> str:
    """Canonical JSON: sorted keys, defaults filled in, unset options omitted"""
    data = scenario.model_dump(mode="json", exclude_none=True)
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def save_scenario(scenario: Scenario, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_scenario(scenario), encoding="utf-8")
    return path
