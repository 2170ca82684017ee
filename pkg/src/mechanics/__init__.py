"""
Constant-curvature N-body mechanics: unified trigonometry, geometry,
potentials, equations of motion, integration and κ→0 continuation.
"""

from .ktrig import asn, csn, ctn, sigma, sn, tn
from .geometry import (
    ChartPoint,
    ChordalPoint,
    ExtrinsicPoint,
    Frame,
    ManifoldSpec,
    chart_to_extrinsic,
    chord_to_geodesic,
    chordal_distance,
    christoffel_closed,
    geodesic_distance,
    geodesic_to_chord,
    metric,
)
from .potentials import (
    BodySystem,
    CotangentPotential,
    FreePotential,
    NewtonPotential,
    Potential,
    SingularityReport,
    detect_singularities,
    get_potential,
    grad_chart,
    potential_continuity,
    u_cotangent,
    u_newton,
)
from .oracle import christoffel_numeric, eom_rhs_general, euler_lagrange_residual
from .dynamics import (
    SystemState,
    angular_momentum,
    energy,
    rhs_curved,
    rhs_curved_2d,
    rhs_curved_3d,
    rhs_flat_polar,
    rhs_flat_spherical,
    rhs_newton_cartesian,
)
from .integrate import IntegratorConfig, IntegratorMethod, TerminationReason, Trajectory, integrate
from .convergence import ConvergenceReport, ConvergenceRow
from .continuation import (
    SweepMode,
    SweepSpec,
    VelocityConvention,
    potential_convergence,
    trajectory_convergence,
    vf_convergence,
)

__all__ = [
    "sigma",
    "sn",
    "csn",
    "tn",
    "ctn",
    "asn",
    "ChartPoint",
    "ChordalPoint",
    "ExtrinsicPoint",
    "Frame",
    "ManifoldSpec",
    "chart_to_extrinsic",
    "chordal_distance",
    "geodesic_distance",
    "chord_to_geodesic",
    "geodesic_to_chord",
    "metric",
    "christoffel_closed",
    "BodySystem",
    "Potential",
    "CotangentPotential",
    "NewtonPotential",
    "FreePotential",
    "SingularityReport",
    "detect_singularities",
    "get_potential",
    "grad_chart",
    "u_cotangent",
    "u_newton",
    "potential_continuity",
    "christoffel_numeric",
    "eom_rhs_general",
    "euler_lagrange_residual",
    "SystemState",
    "rhs_curved",
    "rhs_curved_2d",
    "rhs_curved_3d",
    "rhs_flat_polar",
    "rhs_flat_spherical",
    "rhs_newton_cartesian",
    "energy",
    "angular_momentum",
    "IntegratorConfig",
    "IntegratorMethod",
    "TerminationReason",
    "Trajectory",
    "integrate",
    "ConvergenceReport",
    "ConvergenceRow",
    "SweepMode",
    "SweepSpec",
    "VelocityConvention",
    "vf_convergence",
    "potential_convergence",
    "trajectory_convergence",
]
