"""Scenario files: schema, loading and deterministic export"""

from .export import (
    dumps_json,
    trajectory_columns,
    write_convergence_table,
    write_json,
    write_table,
)
from .loader import (
    diagnostics_from,
    dump_scenario,
    load_scenario,
    parse_scenario,
    save_scenario,
    scenario_from_dict,
)
from .schema import (
    AcceptanceBlock,
    BodyBlock,
    Experiment,
    ExperimentBlock,
    IntegratorBlock,
    ManifoldBlock,
    PositionBlock,
    PositionConvention,
    Scenario,
    VelocityBlock,
)

__all__ = [
    "AcceptanceBlock",
    "BodyBlock",
    "Experiment",
    "ExperimentBlock",
    "IntegratorBlock",
    "ManifoldBlock",
    "PositionBlock",
    "PositionConvention",
    "Scenario",
    "VelocityBlock",
    "diagnostics_from",
    "dump_scenario",
    "dumps_json",
    "load_scenario",
    "parse_scenario",
    "save_scenario",
    "scenario_from_dict",
    "trajectory_columns",
    "write_convergence_table",
    "write_json",
    "write_table",
]
