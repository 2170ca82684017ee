"""Deterministic Output Files

Delimiter-separated tables with 17 significant digits and JSON documents
with sorted keys, so identical inputs give byte-identical files.

Author: Curved N-Body Team
License: MIT
"""

import json
import math
from pathlib import Path
from typing import Any, List, Sequence, Union

import numpy as np

from ..mechanics.convergence import ConvergenceReport

FLOAT_FORMAT = "%.16e"


def _clean(value: Any) -> Any:
    """JSON-safe copy: numpy scalars unwrapped, non-finite floats as null"""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, np.ndarray):
        return _clean(value.tolist())
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def dumps_json(data: Any) -> str:
    return json.dumps(_clean(data), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(path: Union[str, Path], data: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_json(data), encoding="utf-8")
    return path


def trajectory_columns(n_bodies: int, dim: int) -> List[str]:
    """t, then per body s,phi[,theta],sdot,phidot[,thetadot], then E, Lz"""
    coords = ["s", "phi", "theta"][:dim]
    columns = ["t"]
    for body in range(n_bodies):
        columns += [f"{c}_{body}" for c in coords]
        columns += [f"{c}dot_{body}" for c in coords]
    return columns + ["E", "Lz"]


def write_table(path: Union[str, Path], columns: Sequence[str], rows: np.ndarray) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(
        path,
        np.atleast_2d(np.asarray(rows, dtype=float)),
        fmt=FLOAT_FORMAT,
        delimiter=",",
        header=",".join(columns),
        comments="",
    )
    return path


def write_convergence_table(path: Union[str, Path], report: ConvergenceReport) -> Path:
    """kappa,error,status rows; failed entries carry an empty error"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = ["kappa,error,status"]
    for row in report.rows:
        error = "" if row.error is None else FLOAT_FORMAT % row.error
        lines.append(f"{FLOAT_FORMAT % row.kappa},{error},{row.status}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
