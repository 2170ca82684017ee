"""Scenario File Schema

Pydantic models of the JSON scenario format. A scenario names the
manifold, the bodies with their positions and velocities, the potential,
the integrator and an optional experiment block for κ-sweeps.

Author: Curved N-Body Team
License: MIT
"""

import math
from enum import Enum
from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..errors import ValidationError
from ..mechanics.continuation import SweepMode, SweepSpec, VelocityConvention
from ..mechanics.convergence import geometric_kappas
from ..mechanics.dynamics import SystemState
from ..mechanics.geometry import (
    CHART_DOMAIN_TOL,
    ChartPoint,
    ChordalPoint,
    ManifoldSpec,
    chordal_to_chart,
    max_chart_radius,
)
from ..mechanics.integrate import IntegratorConfig, IntegratorMethod
from ..mechanics.potentials import SINGULARITY_TOL, Potential, get_potential


class PositionConvention(str, Enum):
    CHART = "chart"
    CHORDAL = "chordal"


class Experiment(str, Enum):
    VECTOR_FIELD = "vector_field"
    POTENTIAL = "potential"
    TRAJECTORY = "trajectory"


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


def _finite(value: Optional[float]) -> Optional[float]:
    if value is not None and not math.isfinite(value):
        raise ValueError("must be finite")
    return value


class ManifoldBlock(_Strict):
    dim: Literal[2, 3]
    kappa: float

    check_kappa = field_validator("kappa")(_finite)


class PositionBlock(_Strict):
    """Chart {s, phi[, theta]} or chordal {tau, phi[, theta]} position"""

    s: Optional[float] = None
    tau: Optional[float] = None
    phi: float
    theta: Optional[float] = None

    check_values = field_validator("s", "tau", "phi", "theta")(_finite)

    @model_validator(mode="after")
    def _one_radial_coordinate(self):
        if (self.s is None) == (self.tau is None):
            raise ValueError("position needs exactly one of 's' (chart) or 'tau' (chordal)")
        if self.tau is not None and self.tau <= 0:
            raise ValueError("chordal distance 'tau' must be positive")
        if self.s is not None and self.s < 0:
            raise ValueError("chart radius 's' must be nonnegative")
        return self

    @property
    def convention(self) -> PositionConvention:
        return PositionConvention.CHART if self.s is not None else PositionConvention.CHORDAL


class VelocityBlock(_Strict):
    """Chart velocity components (ṡ, φ̇[, θ̇])"""

    s: float = 0.0
    phi: float = 0.0
    theta: Optional[float] = None

    check_values = field_validator("s", "phi", "theta")(_finite)


class BodyBlock(_Strict):
    mass: float = Field(gt=0)
    position: PositionBlock
    velocity: VelocityBlock = Field(default_factory=VelocityBlock)

    check_mass = field_validator("mass")(_finite)


class IntegratorBlock(_Strict):
    method: IntegratorMethod = IntegratorMethod.RK4
    t_end: float = Field(default=10.0, gt=0)
    dt: float = Field(default=1e-3, gt=0)
    atol: float = Field(default=1e-10, gt=0)
    rtol: float = Field(default=1e-10, gt=0)
    dt_min: float = Field(default=1e-12, gt=0)
    dt_max: float = Field(default=0.1, gt=0)
    stride: int = Field(default=1, ge=1)


class AcceptanceBlock(_Strict):
    """Thresholds a sweep must meet; unset entries are not checked"""

    min_slope: Optional[float] = None
    expected_order: Optional[float] = None
    order_tolerance: float = Field(default=0.1, gt=0)
    max_slope_gap: Optional[float] = Field(default=None, gt=0)
    require_monotone: bool = False
    allow_failures: bool = False


class ExperimentBlock(_Strict):
    """κ list and experiments of a sweep

    Either ``kappas`` or ``kappa_exponents`` (±10^e for e in the list and
    each sign in ``signs``) gives the curvatures.
    """

    kappas: Optional[List[float]] = None
    kappa_exponents: Optional[List[int]] = None
    signs: List[Literal[1, -1]] = Field(default_factory=lambda: [1, -1])
    experiments: List[Experiment] = Field(
        default_factory=lambda: [Experiment.VECTOR_FIELD, Experiment.POTENTIAL]
    )
    modes: List[SweepMode] = Field(
        default_factory=lambda: [SweepMode.SAME_CHART_TUPLE, SweepMode.CHORD_FIXED]
    )
    velocity_convention: VelocityConvention = VelocityConvention.CHART
    t_end: Optional[float] = Field(default=None, gt=0)
    acceptance: AcceptanceBlock = Field(default_factory=AcceptanceBlock)

    @model_validator(mode="after")
    def _one_kappa_source(self):
        if (self.kappas is None) == (self.kappa_exponents is None):
            raise ValueError("experiment needs exactly one of 'kappas' or 'kappa_exponents'")
        kappas = self.kappa_list()
        if not kappas:
            raise ValueError("experiment kappa list is empty")
        if any(k == 0 or not math.isfinite(k) for k in kappas):
            raise ValueError("experiment kappas must be finite and nonzero")
        if len(set(kappas)) != len(kappas):
            raise ValueError("experiment kappas must be distinct")
        return self

    def kappa_list(self) -> List[float]:
        if self.kappas is not None:
            return [float(k) for k in self.kappas]
        return geometric_kappas(self.kappa_exponents or [], self.signs)


class Scenario(_Strict):
    """A complete scenario file"""

    name: str = "scenario"
    manifold: ManifoldBlock
    bodies: List[BodyBlock] = Field(min_length=1)
    potential: Literal["cotangent", "none", "newton"] = "cotangent"
    integrator: IntegratorBlock = Field(default_factory=IntegratorBlock)
    experiment: Optional[ExperimentBlock] = None

    @model_validator(mode="after")
    def _consistent(self):
        conventions = {body.position.convention for body in self.bodies}
        if len(conventions) > 1:
            raise ValueError("bodies mix chart ('s') and chordal ('tau') positions")

        dim = self.manifold.dim
        bound = max_chart_radius(self.manifold.kappa)
        for index, body in enumerate(self.bodies):
            if (body.position.theta is not None) != (dim == 3):
                raise ValueError(f"body {index}: position theta must be given exactly when dim is 3")
            if body.velocity.theta is not None and dim == 2:
                raise ValueError(f"body {index}: velocity theta given for a 2D manifold")
            s = body.position.s
            if s is not None and s > bound * (1.0 + CHART_DOMAIN_TOL):
                raise ValueError(
                    f"body {index}: chart radius s={s} lies beyond the antipode s={bound:.12g} of the pole"
                )

        if self.potential == "newton" and self.manifold.kappa != 0:
            raise ValueError("potential 'newton' needs kappa=0")
        if self.experiment is not None and self.position_convention != PositionConvention.CHORDAL:
            raise ValueError("experiment blocks need chordal ('tau') positions")
        return self

    @property
    def position_convention(self) -> PositionConvention:
        return self.bodies[0].position.convention

    @property
    def dim(self) -> int:
        return self.manifold.dim

    @property
    def masses(self) -> List[float]:
        return [body.mass for body in self.bodies]

    def manifold_spec(self, kappa: Optional[float] = None) -> ManifoldSpec:
        return ManifoldSpec(self.dim, self.manifold.kappa if kappa is None else kappa)

    def chordal_points(self) -> List[ChordalPoint]:
        return [ChordalPoint(b.position.tau, b.position.phi, b.position.theta) for b in self.bodies]

    def chart_points(self, kappa: Optional[float] = None) -> List[ChartPoint]:
        """Chart positions; chordal input goes through s = 2 asn_κ(τ/2)"""
        kappa = self.manifold.kappa if kappa is None else kappa
        if self.position_convention == PositionConvention.CHORDAL:
            return [chordal_to_chart(kappa, p) for p in self.chordal_points()]
        return [ChartPoint(b.position.s, b.position.phi, b.position.theta) for b in self.bodies]

    def velocity_array(self) -> np.ndarray:
        rows = []
        for body in self.bodies:
            row = [body.velocity.s, body.velocity.phi]
            if self.dim == 3:
                row.append(body.velocity.theta or 0.0)
            rows.append(row)
        return np.array(rows, dtype=float)

    def initial_state(self) -> SystemState:
        positions = np.array([p.as_array() for p in self.chart_points()])
        return SystemState(0.0, positions, self.velocity_array())

    def integrator_config(self, t_end: Optional[float] = None) -> IntegratorConfig:
        block = self.integrator
        return IntegratorConfig(
            t_end=t_end if t_end is not None else block.t_end,
            method=block.method,
            dt=block.dt,
            atol=block.atol,
            rtol=block.rtol,
            dt_min=block.dt_min,
            dt_max=block.dt_max,
            stride=block.stride,
        )

    def potential_strategy(self, tol: float = SINGULARITY_TOL) -> Potential:
        return get_potential(self.potential, tol)

    def sweep_spec(self, tol: float = SINGULARITY_TOL) -> SweepSpec:
        """SweepSpec of the experiment block

        Raises:
            ValidationError: Without an experiment block
        """
        if self.experiment is None:
            raise ValidationError("scenario has no experiment block", field="experiment")
        potential = self.potential_strategy(tol) if self.potential != "newton" else get_potential("cotangent", tol)
        return SweepSpec(
            kappas=self.experiment.kappa_list(),
            masses=self.masses,
            chordal=self.chordal_points(),
            velocities=self.velocity_array(),
            mode=self.experiment.modes[0] if self.experiment.modes else SweepMode.CHORD_FIXED,
            velocity_convention=self.experiment.velocity_convention,
            potential=potential,
            singularity_tol=tol,
        )
