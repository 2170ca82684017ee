"""Cross-Module Verification Suite

Randomised invariant checks run by ``verify``: unified trig identities,
closed-form Christoffel symbols and hand-coded vector fields against the
general Lagrangian engine, the κ=0 reduction, agreement of the three
potential forms, analytic gradients against finite differences, the RK4
order on the great-circle geodesic, the conservation rates and the first
order approach of U_κ to the Newtonian potential over a sampled box.

Failures are results: every check reports its measured worst-case error,
and unexpected library errors mark the check as failed.

Author: Curved N-Body Team
License: MIT
"""

import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np

from ..errors import CurvedNBodyError, InvalidInputError
from ..logging import get_logger, operation_context
from ..mechanics.benchmarks import great_circle_errors, observed_order
from ..mechanics.dynamics import (
    SystemState,
    angular_momentum_rate,
    chart_accelerations_to_cartesian,
    energy_rate,
    flat_state_to_cartesian,
    oracle_rhs,
    relative_difference,
    rhs_curved,
    rhs_flat_polar,
    rhs_flat_spherical,
    rhs_newton_cartesian,
)
from ..mechanics.convergence import fit_loglog_slope
from ..mechanics.geometry import (
    ChartPoint,
    ChordalPoint,
    ManifoldSpec,
    chart_to_planar,
    chordal_to_chart,
    christoffel_closed,
    geodesic_distance,
    geodesic_to_chord,
)
from ..mechanics.ktrig import csn, sn
from ..mechanics.oracle import FD_REL_STEP, christoffel_numeric, fd_gradient, pullback_metric_field
from ..mechanics.potentials import (
    BodySystem,
    CotangentPotential,
    grad_chart,
    potential_continuity,
    u_cotangent,
)

logger = get_logger(__name__)

ChristoffelFn = Callable[[ManifoldSpec, ChartPoint], np.ndarray]

DIMS = (2, 3)
ORACLE_KAPPAS = (1.0, -1.0, 0.1, -0.1)
SIGNED_KAPPAS = (1.0, -1.0)

IDENTITY_TOL = 1e-12
CONTINUITY_TOL = 1e-10
CONTINUITY_KAPPA = 1e-12
ORACLE_TOL = 1e-6
REDUCTION_POLAR_TOL = 1e-14
REDUCTION_CARTESIAN_TOL = 1e-10
POTENTIAL_FORM_TOL = 1e-12
GRADIENT_TOL = 1e-6
ORDER_TARGET = 4.0
ORDER_TOL = 0.2
RATE_TOL = 1e-9
LIMIT_KAPPAS = (1e-2, 1e-3, 1e-4)
LIMIT_ORDER = 1.0
LIMIT_ORDER_TOL = 0.1

MIN_CHORD = 0.2
MAX_CHORD_FRACTION = 0.9


@dataclass
class CheckResult:
    """Outcome of one invariant check"""

    name: str
    passed: bool
    worst_error: float
    tolerance: float
    cases: int
    detail: Optional[str] = None
    failures: List[str] = field(default_factory=list)
    duration_ms: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "worst_error": self.worst_error,
            "tolerance": self.tolerance,
            "cases": self.cases,
            "detail": self.detail,
            "failures": self.failures[:20],
        }


@dataclass
class VerificationReport:
    seed: int
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def check(self, name: str) -> CheckResult:
        return next(c for c in self.checks if c.name == name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
        }


class _Worst:
    """Running maximum with the label of its case"""

    def __init__(self):
        self.value = 0.0
        self.label: Optional[str] = None
        self.cases = 0
        self.failures: List[str] = []

    def add(self, value: float, label: str, tol: float) -> None:
        self.cases += 1
        if not math.isfinite(value) or value > self.value:
            self.value = value if math.isfinite(value) else math.inf
            self.label = label
        if not value <= tol:
            self.failures.append(f"{label}: {value:.3e}")

    def result(self, name: str, tol: float, detail: Optional[str] = None) -> CheckResult:
        text = detail or (f"worst case {self.label}" if self.label else None)
        return CheckResult(name, not self.failures, self.value, tol, self.cases, text, self.failures)


# ---------------------------------------------------------------------------
# sampling


def sample_s(rng: np.random.Generator, kappa: float) -> float:
    """Chart radius away from the pole and, on spheres, the antipode"""
    if kappa > 0:
        upper = min(0.9 * math.pi / math.sqrt(kappa), 3.0)
    elif kappa < 0:
        upper = min(2.0 / math.sqrt(-kappa), 3.0)
    else:
        upper = 3.0
    return float(rng.uniform(0.1, upper))


def sample_point(rng: np.random.Generator, dim: int, kappa: float) -> np.ndarray:
    s = sample_s(rng, kappa)
    if dim == 2:
        return np.array([s, rng.uniform(0.0, 2.0 * math.pi)])
    return np.array([s, rng.uniform(0.2, math.pi - 0.2), rng.uniform(0.0, 2.0 * math.pi)])


def _well_separated(m: ManifoldSpec, positions: np.ndarray) -> bool:
    diameter = 2.0 / math.sqrt(m.kappa) if m.kappa > 0 else math.inf
    for i in range(len(positions)):
        for j in range(i + 1, len(positions)):
            d = geodesic_distance(m, ChartPoint.from_array(positions[i]), ChartPoint.from_array(positions[j]))
            chord = geodesic_to_chord(m.kappa, d)
            if chord < MIN_CHORD or chord > MAX_CHORD_FRACTION * diameter:
                return False
    return True


def sample_configuration(
    rng: np.random.Generator, dim: int, kappa: float, n_bodies: int = 3, max_tries: int = 1000
) -> np.ndarray:
    """Positions with every pair neither close nor near-antipodal"""
    m = ManifoldSpec(dim, kappa)
    for _ in range(max_tries):
        positions = np.array([sample_point(rng, dim, kappa) for _ in range(n_bodies)])
        if _well_separated(m, positions):
            return positions
    raise InvalidInputError(f"no separated configuration found for dim={dim}, kappa={kappa}")


def sample_state(rng: np.random.Generator, dim: int, kappa: float, n_bodies: int = 2) -> SystemState:
    positions = sample_configuration(rng, dim, kappa, n_bodies)
    return SystemState(0.0, positions, rng.uniform(-1.0, 1.0, size=positions.shape))


def sample_masses(rng: np.random.Generator, n_bodies: int) -> List[float]:
    return [float(v) for v in rng.uniform(0.5, 2.0, size=n_bodies)]


# ---------------------------------------------------------------------------
# checks


def check_trig_identities(rng: np.random.Generator, samples: int = 10_000) -> CheckResult:
    """|κ sn² + csn² − 1| ≤ 1e-12(1 + |κ|s²) and continuity at |κ| = 1e-12"""
    worst = _Worst()
    for _ in range(samples):
        kappa = float(rng.uniform(-10.0, 10.0))
        bound = math.pi if kappa > 0 else 3.0
        s = float(rng.uniform(-bound, bound)) / math.sqrt(max(abs(kappa), 1e-12))
        residual = abs(kappa * sn(kappa, s) ** 2 + csn(kappa, s) ** 2 - 1.0) / (1.0 + abs(kappa) * s * s)
        worst.add(residual, f"identity kappa={kappa:.6g} s={s:.6g}", IDENTITY_TOL)

    for s in np.linspace(-3.0, 3.0, 61):
        for kappa in (CONTINUITY_KAPPA, -CONTINUITY_KAPPA):
            gap = max(abs(sn(kappa, s) - sn(0.0, s)), abs(csn(kappa, s) - csn(0.0, s)))
            worst.add(gap, f"continuity kappa={kappa:g} s={s:.3f}", CONTINUITY_TOL)
    return worst.result("trig_identities", IDENTITY_TOL)


def _symbol_name(index: Sequence[int]) -> str:
    s, l, j = (int(i) + 1 for i in index)
    return f"Gamma^{s}_{l}{j}"


def check_christoffel_oracle(
    rng: np.random.Generator,
    samples: int = 100,
    christoffel: ChristoffelFn = christoffel_closed,
    checked: bool = False,
    rel_step: float = FD_REL_STEP,
) -> CheckResult:
    """Closed-form Γ against central differences of the pulled-back metric

    A failing case names the worst symbol with 1-based indices.
    """
    worst = _Worst()
    for dim in DIMS:
        for kappa in ORACLE_KAPPAS:
            m = ManifoldSpec(dim, kappa)
            metric_field = pullback_metric_field(m, checked)
            for _ in range(samples):
                q = sample_point(rng, dim, kappa)
                closed = christoffel(m, ChartPoint.from_array(q))
                numeric = christoffel_numeric(metric_field, q, rel_step, checked)
                scale = np.maximum(1.0, np.abs(numeric))
                rel = np.abs(closed - numeric) / scale
                index = np.unravel_index(int(np.argmax(rel)), rel.shape)
                worst.add(
                    float(rel[index]),
                    f"{_symbol_name(index)} dim={dim} kappa={kappa:g} at {np.round(q, 6).tolist()}",
                    ORACLE_TOL,
                )
    return worst.result("christoffel_oracle", ORACLE_TOL)


def check_rhs_oracle(
    rng: np.random.Generator, samples: int = 100, checked: bool = False, rel_step: float = FD_REL_STEP
) -> CheckResult:
    """Hand-coded vector fields against the general Lagrangian engine"""
    worst = _Worst()
    potential = CotangentPotential()
    for dim in DIMS:
        for kappa in ORACLE_KAPPAS:
            for _ in range(samples):
                state = sample_state(rng, dim, kappa)
                masses = sample_masses(rng, state.n_bodies)
                hand = rhs_curved(state, masses, kappa, potential)
                reference = oracle_rhs(state, masses, kappa, potential, rel_step, checked=checked)
                worst.add(relative_difference(hand, reference), f"dim={dim} kappa={kappa:g}", ORACLE_TOL)
    return worst.result("rhs_oracle", ORACLE_TOL)


def check_flat_reduction(rng: np.random.Generator, samples: int = 100) -> CheckResult:
    """κ=0 field against the flat polar/spherical and Cartesian Newtonian fields"""
    worst = _Worst()
    for dim in DIMS:
        flat_rhs = rhs_flat_polar if dim == 2 else rhs_flat_spherical
        for _ in range(samples):
            state = sample_state(rng, dim, 0.0)
            masses = sample_masses(rng, state.n_bodies)
            chart_acc = rhs_curved(state, masses, 0.0)
            worst.add(
                relative_difference(chart_acc, flat_rhs(state, masses)),
                f"polar dim={dim}",
                REDUCTION_POLAR_TOL,
            )
            x, _ = flat_state_to_cartesian(state)
            cartesian = chart_accelerations_to_cartesian(state, chart_acc)
            worst.add(
                relative_difference(cartesian, rhs_newton_cartesian(x, masses)),
                f"cartesian dim={dim}",
                REDUCTION_CARTESIAN_TOL,
            )
    return worst.result("flat_reduction", REDUCTION_CARTESIAN_TOL)


def check_potential_forms(rng: np.random.Generator, samples: int = 100) -> CheckResult:
    """Chordal, geodesic and ambient cotangent potentials agree"""
    worst = _Worst()
    for dim in DIMS:
        for kappa in SIGNED_KAPPAS:
            m = ManifoldSpec(dim, kappa)
            for _ in range(samples):
                system = BodySystem(m, sample_masses(rng, 3), sample_configuration(rng, dim, kappa))
                values = [u_cotangent(system, form) for form in ("chordal", "geodesic", "ambient")]
                scale = max(abs(v) for v in values)
                spread = (max(values) - min(values)) / max(scale, 1e-300)
                worst.add(spread, f"dim={dim} kappa={kappa:g}", POTENTIAL_FORM_TOL)
    return worst.result("potential_forms", POTENTIAL_FORM_TOL)


def check_gradients(rng: np.random.Generator, samples: int = 50, rel_step: float = FD_REL_STEP) -> CheckResult:
    """Analytic chart gradients against central differences of U"""
    worst = _Worst()
    for dim in DIMS:
        for kappa in SIGNED_KAPPAS:
            m = ManifoldSpec(dim, kappa)
            for _ in range(samples):
                masses = sample_masses(rng, 3)
                positions = sample_configuration(rng, dim, kappa)
                analytic = grad_chart(BodySystem(m, masses, positions))
                numeric = fd_gradient(lambda p: u_cotangent(BodySystem(m, masses, p)), positions, rel_step)
                worst.add(relative_difference(analytic, numeric), f"dim={dim} kappa={kappa:g}", GRADIENT_TOL)
    return worst.result("gradients", GRADIENT_TOL)


def sample_chordal_configuration(
    rng: np.random.Generator, dim: int, n_bodies: int = 3, max_tries: int = 1000
) -> List[ChordalPoint]:
    """Chords from the pole in [0.3, 1] whose flat images are pairwise separated"""
    for _ in range(max_tries):
        points = []
        for _ in range(n_bodies):
            tau = float(rng.uniform(0.3, 1.0))
            if dim == 2:
                points.append(ChordalPoint(tau, float(rng.uniform(0.0, 2.0 * math.pi))))
            else:
                points.append(
                    ChordalPoint(
                        tau,
                        float(rng.uniform(0.2, math.pi - 0.2)),
                        float(rng.uniform(0.0, 2.0 * math.pi)),
                    )
                )
        flat = [chart_to_planar(chordal_to_chart(0.0, p)) for p in points]
        if all(
            np.linalg.norm(flat[i] - flat[j]) >= MIN_CHORD
            for i in range(n_bodies)
            for j in range(i + 1, n_bodies)
        ):
            return points
    raise InvalidInputError(f"no separated chordal configuration found for dim={dim}")


def check_potential_limit(rng: np.random.Generator, samples: int = 100) -> CheckResult:
    """Order of sup |U_κ − U_0| over sampled configurations with fixed chords

    The sup runs over one set of configurations per dimension, shared by
    every κ, so the fitted slope measures uniform convergence on the
    sampled box rather than at a single configuration.
    """
    failures: List[str] = []
    worst_gap = 0.0
    worst_label: Optional[str] = None
    cases = 0
    for dim in DIMS:
        configurations = [
            (sample_masses(rng, 3), sample_chordal_configuration(rng, dim)) for _ in range(samples)
        ]
        for sign in (1, -1):
            kappas = [sign * magnitude for magnitude in LIMIT_KAPPAS]
            sup = [0.0] * len(kappas)
            for masses, chordal in configurations:
                cases += 1
                report = potential_continuity(chordal, masses, kappas, dim)
                for index, row in enumerate(report.rows):
                    if not row.ok:
                        failures.append(f"dim={dim} kappa={row.kappa:g}: {row.status}")
                        continue
                    sup[index] = max(sup[index], row.error)

            label = f"dim={dim} kappa {'>' if sign > 0 else '<'} 0"
            fit = fit_loglog_slope(kappas, sup)
            gap = abs(fit.slope - LIMIT_ORDER) if fit else math.inf
            if gap > worst_gap or worst_label is None:
                worst_gap, worst_label = gap, label
            if not gap <= LIMIT_ORDER_TOL:
                slope = f"{fit.slope:.4f}" if fit else "unfitted"
                failures.append(f"{label}: sup-error order {slope}")

    detail = f"worst case {worst_label}" if worst_label else None
    return CheckResult("potential_limit", not failures, worst_gap, LIMIT_ORDER_TOL, cases, detail, failures)


def check_integrator_order(dts: Sequence[float] = (0.2, 0.1, 0.05, 0.025)) -> CheckResult:
    """Observed RK4 order on the closed-form great-circle geodesic"""
    errors = great_circle_errors(dts, t_end=2.0)
    fit = observed_order(dts, errors)
    slope = fit.slope if fit else math.nan
    gap = abs(slope - ORDER_TARGET) if fit else math.inf
    detail = f"slope {slope:.4f}; errors " + ", ".join(f"{e:.3e}" for e in errors)
    failures = [] if gap <= ORDER_TOL else [f"order {slope:.4f} outside {ORDER_TARGET} +/- {ORDER_TOL}"]
    return CheckResult("integrator_order", not failures, gap, ORDER_TOL, len(dts), detail, failures)


def check_conservation_rates(rng: np.random.Generator, samples: int = 100) -> CheckResult:
    """dE/dt and dL_z/dt vanish along the vector field"""
    worst = _Worst()
    for dim in DIMS:
        for kappa in ORACLE_KAPPAS:
            for _ in range(samples):
                state = sample_state(rng, dim, kappa)
                masses = sample_masses(rng, state.n_bodies)
                grad = grad_chart(BodySystem(ManifoldSpec(dim, kappa), masses, state.positions))
                scale = 1.0 + float(np.sum(np.abs(grad * state.velocities)))
                worst.add(abs(energy_rate(state, masses, kappa)) / scale, f"dE/dt dim={dim} kappa={kappa:g}", RATE_TOL)
                worst.add(
                    abs(angular_momentum_rate(state, masses, kappa)) / scale,
                    f"dLz/dt dim={dim} kappa={kappa:g}",
                    RATE_TOL,
                )
    return worst.result("conservation_rates", RATE_TOL)


CHECK_NAMES = (
    "trig_identities",
    "christoffel_oracle",
    "rhs_oracle",
    "flat_reduction",
    "potential_forms",
    "gradients",
    "integrator_order",
    "conservation_rates",
    "potential_limit",
)


def run_suite(
    seed: int = 20240601,
    samples: int = 100,
    gradient_samples: int = 50,
    checked: bool = False,
    christoffel: ChristoffelFn = christoffel_closed,
    include: Optional[Iterable[str]] = None,
    trig_samples: int = 10_000,
    rel_step: float = FD_REL_STEP,
) -> VerificationReport:
    """Run the selected checks with one seeded generator per check

    Args:
        seed: Base seed; check k uses seed + k so results do not depend on
            which other checks run
        samples: Random points/states per (dim, κ) case
        gradient_samples: Random configurations per gradient case
        checked: Run oracle invariant assertions
        christoffel: Closed-form Christoffel function under test
        include: Subset of CHECK_NAMES, all by default
        trig_samples: Random (κ, s) pairs of the identity check
        rel_step: Relative central-difference step of the oracle and
            gradient checks
    """
    selected = list(include) if include is not None else list(CHECK_NAMES)
    unknown = set(selected) - set(CHECK_NAMES)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")

    runners = {
        "trig_identities": lambda rng: check_trig_identities(rng, trig_samples),
        "christoffel_oracle": lambda rng: check_christoffel_oracle(rng, samples, christoffel, checked, rel_step),
        "rhs_oracle": lambda rng: check_rhs_oracle(rng, samples, checked, rel_step),
        "flat_reduction": lambda rng: check_flat_reduction(rng, samples),
        "potential_forms": lambda rng: check_potential_forms(rng, samples),
        "gradients": lambda rng: check_gradients(rng, gradient_samples, rel_step),
        "integrator_order": lambda rng: check_integrator_order(),
        "conservation_rates": lambda rng: check_conservation_rates(rng, samples),
        "potential_limit": lambda rng: check_potential_limit(rng, gradient_samples),
    }

    results = []
    for offset, name in enumerate(CHECK_NAMES):
        if name not in selected:
            continue
        rng = np.random.default_rng(seed + offset)
        started = time.perf_counter()
        with operation_context(name, component="verification", seed=seed + offset):
            try:
                result = runners[name](rng)
            except CurvedNBodyError as e:
                logger.error(f"check {name} raised {e.error_code}: {e.message}")
                result = CheckResult(name, False, math.inf, math.nan, 0, e.message, [e.message])
        result.duration_ms = (time.perf_counter() - started) * 1000.0
        logger.info(
            f"check {name}: {'pass' if result.passed else 'FAIL'}",
            worst_error=result.worst_error,
            cases=result.cases,
        )
        results.append(result)
    return VerificationReport(seed, results)
