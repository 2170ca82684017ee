"""Fixed-step and adaptive integration"""

import math

import numpy as np
import pytest

from src.errors import (
    ChartDomainError,
    ChartSingularityError,
    IntegrationError,
    SingularConfigurationError,
    ValidationError,
)
from src.mechanics.benchmarks import great_circle, great_circle_errors, great_circle_state, observed_order
from src.mechanics.dynamics import SystemState, curved_vector_field
from src.mechanics.geometry import ManifoldSpec
from src.mechanics.integrate import (
    IntegratorConfig,
    IntegratorMethod,
    TerminationReason,
    error_ratio,
    integrate,
    regularity_check,
    rk4_step,
    rkf45_step,
)
from src.mechanics.potentials import CotangentPotential, FreePotential


def decay(t, y):
    return -y


def one_body(value=1.0):
    return SystemState(0.0, [[value, 0.0]], [[0.0, 0.0]])


def test_config_validation():
    with pytest.raises(ValidationError) as excinfo:
        IntegratorConfig(t_end=1.0, dt=0.0)
    assert excinfo.value.field == "dt"
    with pytest.raises(ValidationError):
        IntegratorConfig(t_end=-1.0)
    with pytest.raises(ValidationError):
        IntegratorConfig(t_end=1.0, stride=0)
    with pytest.raises(ValidationError):
        IntegratorConfig(t_end=1.0, dt_min=1.0, dt_max=0.1)
    assert IntegratorConfig(t_end=1.0, method="rk45-adaptive").method is IntegratorMethod.RK45


def test_rk4_step_matches_taylor_polynomial():
    h = 0.1
    expected = 1.0 - h + h**2 / 2 - h**3 / 6 + h**4 / 24
    assert rk4_step(decay, 0.0, np.array([1.0]), h)[0] == pytest.approx(expected, rel=1e-15)


def test_rkf45_step_estimates_a_small_error():
    y4, err = rkf45_step(decay, 0.0, np.array([1.0]), 0.1)
    assert y4[0] == pytest.approx(math.exp(-0.1), abs=1e-6)
    assert 0.0 < abs(err[0]) < 1e-6


def test_error_ratio():
    ratio = error_ratio(np.array([1.0, 2.0]), np.array([1.0, 2.0]), np.array([1e-10, 0.0]), 1e-10, 0.0)
    assert ratio == pytest.approx(1.0)


def test_rk4_samples_on_a_grid_with_clipped_last_step():
    trajectory = integrate(decay, one_body(), IntegratorConfig(t_end=0.25, dt=0.1))
    assert trajectory.completed
    assert trajectory.times == pytest.approx([0.0, 0.1, 0.2, 0.25])
    assert trajectory.accepted_steps == 3
    assert trajectory.final_state.positions[0, 0] == pytest.approx(math.exp(-0.25), rel=1e-6)


def test_stride_keeps_the_final_state():
    trajectory = integrate(decay, one_body(), IntegratorConfig(t_end=1.0, dt=0.1, stride=3))
    assert trajectory.times == pytest.approx([0.0, 0.3, 0.6, 0.9, 1.0])
    assert trajectory.positions.shape == (5, 1, 2)


def test_rk4_is_fourth_order_on_the_great_circle():
    dts = [0.1, 0.05, 0.025]
    errors = great_circle_errors(dts, t_end=1.0)
    assert errors[0] > errors[1] > errors[2]
    assert observed_order(dts, errors).slope == pytest.approx(4.0, abs=0.3)


def test_adaptive_run_follows_the_great_circle():
    field_fn = curved_vector_field(ManifoldSpec(2, 1.0), [1.0], FreePotential())
    cfg = IntegratorConfig(t_end=2.0, method=IntegratorMethod.RK45, dt=0.1, atol=1e-10, rtol=1e-10)
    trajectory = integrate(field_fn, great_circle_state(1.0, 1.0), cfg)

    assert trajectory.completed
    assert trajectory.times[-1] == pytest.approx(2.0, rel=1e-12)
    s, phi, _, _ = great_circle(1.0, 1.0, 2.0)
    final = trajectory.final_state.positions[0]
    assert abs(final[0] - s) < 1e-7
    assert abs(final[1] - phi) < 1e-7


def test_event_stops_with_the_last_good_state():
    def event_check(state):
        if state.t > 0.35:
            raise ChartSingularityError("left the chart", body=0, coordinate="s")

    trajectory = integrate(decay, one_body(), IntegratorConfig(t_end=1.0, dt=0.1), event_check)
    assert trajectory.reason is TerminationReason.SINGULARITY_EVENT
    assert not trajectory.completed
    assert trajectory.message == "left the chart"
    assert trajectory.final_state.t == pytest.approx(0.3)


def test_failing_initial_state_raises():
    def event_check(state):
        raise ChartSingularityError("pole", body=0)

    with pytest.raises(ChartSingularityError):
        integrate(decay, one_body(), IntegratorConfig(t_end=1.0), event_check)


def test_step_underflow():
    def stiff(t, y):
        return -1e8 * y

    cfg = IntegratorConfig(t_end=1.0, method="rk45-adaptive", dt=1e-3, dt_min=1e-6, atol=1e-12, rtol=1e-12)
    trajectory = integrate(stiff, one_body(), cfg)
    assert trajectory.reason is TerminationReason.STEP_UNDERFLOW
    assert trajectory.rejected_steps > 0
    assert trajectory.final_state.t == 0.0


def test_max_steps_raises():
    with pytest.raises(IntegrationError):
        integrate(decay, one_body(), IntegratorConfig(t_end=1.0, dt=0.01, max_steps=5))


def test_regularity_check():
    check = regularity_check(ManifoldSpec(2, 1.0), [1.0, 1.0])
    check(SystemState(0.0, [[0.5, 0.0], [0.5, 2.0]]))
    with pytest.raises(SingularConfigurationError):
        check(SystemState(0.0, [[0.5, 1.0], [0.5, 1.0]]))
    with pytest.raises(ChartSingularityError):
        check(SystemState(0.0, [[0.0, 1.0], [0.5, 1.0]]))


def test_overflow_is_not_reported_as_a_singularity():
    def blow_up(t, y):
        return y * y

    trajectory = integrate(blow_up, one_body(), IntegratorConfig(t_end=2.0, dt=0.01))
    assert trajectory.reason is TerminationReason.NON_FINITE_STATE
    assert trajectory.message.startswith("non-finite state at t=")
    assert 0.95 < trajectory.final_state.t < 1.1
    assert np.all(np.isfinite(trajectory.final_state.flat()))


def test_hyperbolic_escape_overflows_the_chart_functions():
    m = ManifoldSpec(2, -1.0)
    field_fn = curved_vector_field(m, [1.0], FreePotential())
    initial = SystemState(0.0, [[1.0, 0.0]], [[1000.0, 0.0]])
    trajectory = integrate(field_fn, initial, IntegratorConfig(t_end=1.0, dt=0.01), regularity_check(m, [1.0]))

    assert trajectory.reason is TerminationReason.NON_FINITE_STATE
    assert 0.6 < trajectory.final_state.t < 0.75
    assert trajectory.final_state.positions[0, 0] == pytest.approx(1.0 + 1000.0 * trajectory.final_state.t)


def test_two_body_escape_reports_the_overflow():
    m = ManifoldSpec(2, -1.0)
    masses = [1.0, 2.0]
    field_fn = curved_vector_field(m, masses, CotangentPotential())
    initial = SystemState(0.0, [[0.5, 0.0], [0.7, 2.0]], [[0.1, 1.0], [0.0, -0.8]])
    trajectory = integrate(field_fn, initial, IntegratorConfig(t_end=1.0, dt=0.01), regularity_check(m, masses))

    assert trajectory.reason is TerminationReason.NON_FINITE_STATE
    assert trajectory.final_state.t < 1.0
    assert np.all(np.isfinite(trajectory.final_state.flat()))


def test_leaving_the_chart_is_an_event():
    m = ManifoldSpec(2, 1.0)
    field_fn = curved_vector_field(m, [1.0], FreePotential())
    initial = SystemState(0.0, [[0.05, 0.0]], [[-1.3, 0.0]])
    trajectory = integrate(field_fn, initial, IntegratorConfig(t_end=1.0, dt=0.01), regularity_check(m, [1.0]))

    assert trajectory.reason is TerminationReason.SINGULARITY_EVENT
    assert "negative" in trajectory.message
    assert trajectory.final_state.positions[0, 0] > 0.0


def test_regularity_check_rejects_points_beyond_the_antipode():
    check = regularity_check(ManifoldSpec(2, 1.0), [1.0])
    with pytest.raises(ChartDomainError):
        check(SystemState(0.0, [[3.5, 1.0]]))
