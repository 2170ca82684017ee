"""derive: print metric and Christoffel tables at a chart point

Author: Curved N-Body Team
License: MIT
"""

import itertools
from typing import List, Sequence

import numpy as np

from ..config import AppConfig
from ..errors import EXIT_OK, ValidationError
from ..mechanics.geometry import ChartPoint, ManifoldSpec, christoffel_closed, metric, pullback_metric
from ..mechanics.oracle import christoffel_numeric, pullback_metric_field

COORDINATES = ("s", "phi", "theta")


def parse_point(text: str, dim: int) -> ChartPoint:
    """"s,phi[,theta]" → ChartPoint

    Raises:
        ValidationError: For a malformed point or a wrong number of values
    """
    try:
        values = [float(part) for part in text.split(",")]
    except ValueError as e:
        raise ValidationError(f"point '{text}' is not a comma-separated list of numbers", field="point", value=text) from e
    if len(values) != dim:
        raise ValidationError(f"point needs {dim} values for dim={dim}, got {len(values)}", field="point", value=text)
    return ChartPoint.from_array(values)


def _matrix_lines(title: str, matrix: np.ndarray, names: Sequence[str]) -> List[str]:
    lines = [title, "         " + "".join(f"{n:>24}" for n in names)]
    for name, row in zip(names, matrix):
        lines.append(f"{name:>9}" + "".join(f"{v:>24.16e}" for v in row))
    return lines


def derive_tables(m: ManifoldSpec, p: ChartPoint, chart_tol: float) -> List[str]:
    names = COORDINATES[: m.dim]
    q = p.as_array()
    g, g_inv = metric(m, p, chart_tol)
    closed = christoffel_closed(m, p, chart_tol)
    numeric = christoffel_numeric(pullback_metric_field(m), q)

    lines = [f"dim={m.dim} kappa={m.kappa!r} point={q.tolist()}", ""]
    lines += _matrix_lines("metric (closed form)", g, names) + [""]
    lines += _matrix_lines("metric (pulled back)", pullback_metric(m, q), names) + [""]
    lines += _matrix_lines("inverse metric", g_inv, names) + [""]
    lines.append("Christoffel symbols Gamma^s_lj (closed form | numeric)")
    for s, l, j in itertools.product(range(m.dim), repeat=3):
        if l > j or (closed[s, l, j] == 0.0 and abs(numeric[s, l, j]) < 1e-8):
            continue
        label = f"Gamma^{names[s]}_{names[l]}{names[j]}"
        lines.append(f"{label:>24} {closed[s, l, j]:>24.16e} | {numeric[s, l, j]:>24.16e}")
    return lines


def cmd_derive(dim: int, kappa: float, point: str, config: AppConfig) -> int:
    m = ManifoldSpec(dim, kappa)
    for line in derive_tables(m, parse_point(point, dim), config.numerics.chart_tol):
        print(line)
    return EXIT_OK
