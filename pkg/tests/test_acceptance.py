"""Long-horizon conservation, the default verification run and the shipped sweep"""

import copy
import json
import logging
import math

import pytest

from src.config import AppConfig
from src.main import main
from src.mechanics.benchmarks import circular_angular_velocity
from src.mechanics.continuation import SweepSpec, trajectory_convergence
from src.mechanics.convergence import geometric_kappas
from src.mechanics.geometry import ChordalPoint
from src.mechanics.integrate import IntegratorConfig
from src.scenario import load_scenario, scenario_from_dict
from src.commands.simulate import simulate
from src.verification import run_suite

pytestmark = pytest.mark.slow


@pytest.fixture(autouse=True)
def _restore_root_logger(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def hyperbolic_orbit(scenario_dir):
    data = json.loads((scenario_dir / "two_body_sphere.json").read_text(encoding="utf-8"))
    data = copy.deepcopy(data)
    data["manifold"]["kappa"] = -1.0
    rate = 0.95 * circular_angular_velocity(-1.0)
    for body in data["bodies"]:
        body["velocity"]["phi"] = rate
    return data


def assert_conserved(summary):
    assert summary["termination"] == "completed"
    assert summary["t_final"] == pytest.approx(10.0)
    assert summary["energy_drift"] <= 1e-8
    assert summary["angular_momentum_drift"] <= 1e-8


def test_sphere_orbit_conserves_energy_and_momentum(scenario_dir):
    result = simulate(load_scenario(scenario_dir / "two_body_sphere.json"), AppConfig())
    assert_conserved(result["summary"])


def test_hyperbolic_orbit_conserves_energy_and_momentum(scenario_dir):
    result = simulate(scenario_from_dict(hyperbolic_orbit(scenario_dir)), AppConfig())
    assert_conserved(result["summary"])


def test_default_verification_passes():
    report = run_suite()
    failing = [check.name for check in report.checks if not check.passed]
    assert failing == []


def test_shipped_sweep_meets_its_acceptance(tmp_path, scenario_dir):
    out = tmp_path / "sweep"
    assert main(["sweep", "--scenario", str(scenario_dir / "sweep_two_body.json"), "--out", str(out)]) == 0
    report = json.loads((out / "convergence_report.json").read_text(encoding="utf-8"))
    assert report["violations"] == []


def test_long_orbit_converges_to_the_newtonian_one():
    spec = SweepSpec(
        geometric_kappas(range(-1, -5, -1)),
        [1.0, 1.0],
        [ChordalPoint(0.5, 0.0), ChordalPoint(0.5, math.pi)],
        [[0.0, 1.2], [0.0, 1.2]],
    )
    report = trajectory_convergence(spec, IntegratorConfig(t_end=5.0, dt=0.01))

    assert not report.failures
    assert report.metadata["samples"] == 501
    assert [side.sign for side in report.sides()] == [1, -1]
    for side in report.sides():
        assert side.monotone
        assert side.fit.points == 4
        assert abs(side.fit.slope - 1.0) <= 0.3
