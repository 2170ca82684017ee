"""Command-line interface"""

import copy
import json
import logging
import math

import pytest

from src.main import build_parser, main


@pytest.fixture(autouse=True)
def _restore_root_logger(tmp_path, monkeypatch):
    # main() reconfigures the root logger; keep other tests' handlers intact
    monkeypatch.chdir(tmp_path)
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"verification": {"samples": 2, "gradient_samples": 1}}), encoding="utf-8")
    return str(path)


def chordal(data):
    data = copy.deepcopy(data)
    for body in data["bodies"]:
        body["position"] = {"tau": 0.5, "phi": body["position"]["phi"]}
    return data


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
    args = build_parser().parse_args(["derive", "--dim", "3", "--kappa", "-1", "--point", "0.5,1,0.3"])
    assert (args.command, args.dim, args.kappa) == ("derive", 3, -1.0)


def test_simulate_writes_outputs(tmp_path, write_scenario, two_body_data, capsys):
    out = tmp_path / "run"
    assert main(["simulate", "--scenario", str(write_scenario(two_body_data)), "--out", str(out)]) == 0

    lines = (out / "trajectory.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "t,s_0,phi_0,sdot_0,phidot_0,s_1,phi_1,sdot_1,phidot_1,E,Lz"
    assert len(lines) == 52

    summary = json.loads((out / "summary.json").read_text(encoding="utf-8"))
    assert summary["termination"] == "completed"
    assert summary["t_final"] == pytest.approx(0.5)
    assert summary["energy_drift"] < 1e-6
    assert summary["angular_momentum_drift"] < 1e-6
    assert summary["oracle_max_difference"] is None
    assert "wall_time_seconds" in json.loads((out / "timing.json").read_text(encoding="utf-8"))
    assert capsys.readouterr().out.startswith("completed: ")


def test_simulate_is_deterministic(tmp_path, write_scenario, two_body_data):
    path = str(write_scenario(two_body_data))
    for name in ("a", "b"):
        assert main(["simulate", "--scenario", path, "--out", str(tmp_path / name)]) == 0
    for file in ("trajectory.csv", "summary.json"):
        assert (tmp_path / "a" / file).read_bytes() == (tmp_path / "b" / file).read_bytes()


def test_checked_simulation_records_the_oracle_difference(tmp_path, write_scenario, two_body_data):
    data = copy.deepcopy(two_body_data)
    data["integrator"]["t_end"] = 0.1
    out = tmp_path / "checked"
    assert main(["simulate", "--scenario", str(write_scenario(data)), "--out", str(out), "--checked"]) == 0
    summary = json.loads((out / "summary.json").read_text(encoding="utf-8"))
    assert summary["checked"] is True
    assert summary["oracle_max_difference"] <= 1e-6


def test_chordal_scenario_summary(tmp_path, write_scenario, two_body_data):
    out = tmp_path / "chordal"
    assert main(["simulate", "--scenario", str(write_scenario(chordal(two_body_data))), "--out", str(out)]) == 0
    initial = json.loads((out / "summary.json").read_text(encoding="utf-8"))["initial"]
    assert initial["position_convention"] == "chordal"
    assert initial["chordal_positions"][0] == [0.5, 0.0]
    assert initial["chart_positions"][0][0] == pytest.approx(2.0 * math.asin(0.25), rel=1e-14)


def test_run_into_the_pole_exits_with_singularity(tmp_path, write_scenario, capsys):
    data = {
        "manifold": {"dim": 2, "kappa": 1.0},
        "potential": "none",
        "bodies": [{"mass": 1.0, "position": {"s": 0.5, "phi": 0.3}, "velocity": {"s": -1.0}}],
        "integrator": {"t_end": 1.0, "dt": 0.01},
    }
    out = tmp_path / "pole"
    assert main(["simulate", "--scenario", str(write_scenario(data)), "--out", str(out)]) == 3

    summary = json.loads((out / "summary.json").read_text(encoding="utf-8"))
    assert summary["termination"] == "singularity-event"
    assert 0.4 < summary["t_final"] < 0.5
    assert "stopped:" in capsys.readouterr().out


def test_singular_initial_state_exits_with_singularity(write_scenario, two_body_data, capsys):
    data = copy.deepcopy(two_body_data)
    for body in data["bodies"]:
        body["position"]["s"] = math.pi / 2
    assert main(["simulate", "--scenario", str(write_scenario(data)), "--out", "out"]) == 3
    assert "SINGULAR_CONFIGURATION" in capsys.readouterr().err


def test_invalid_scenario_exits_with_validation(write_scenario, two_body_data, capsys):
    data = copy.deepcopy(two_body_data)
    data["bodies"][1]["mass"] = -1.0
    assert main(["simulate", "--scenario", str(write_scenario(data)), "--out", "out"]) == 1
    err = capsys.readouterr().err
    assert "SCENARIO_VALIDATION_ERROR" in err
    assert "  - bodies[1].mass:" in err


def test_missing_scenario_and_config(tmp_path, capsys):
    assert main(["simulate", "--scenario", str(tmp_path / "absent.json"), "--out", "out"]) == 1
    assert main(["--config", str(tmp_path / "absent.json"), "verify"]) == 1
    assert "Config file not found" in capsys.readouterr().err


def test_sweep_passes_acceptance(tmp_path, write_scenario, two_body_data, capsys):
    data = chordal(two_body_data)
    data["experiment"] = {
        "kappa_exponents": [-2, -3, -4],
        "experiments": ["vector_field", "potential"],
        "acceptance": {"min_slope": 0.9, "max_slope_gap": 0.2, "require_monotone": True},
    }
    out = tmp_path / "sweep"
    assert main(["sweep", "--scenario", str(write_scenario(data)), "--out", str(out)]) == 0

    for name in ("vector_field_same-chart-tuple", "vector_field_chord-fixed", "potential"):
        assert (out / f"{name}.csv").read_text(encoding="utf-8").startswith("kappa,error,status\n")
    report = json.loads((out / "convergence_report.json").read_text(encoding="utf-8"))
    assert report["passed"] is True
    assert len(report["reports"]) == 3
    assert "vector_field_chord-fixed: slopes" in capsys.readouterr().out


def test_antipodal_sweep_violates_acceptance(tmp_path, scenario_dir, capsys):
    out = tmp_path / "antipodal"
    assert main(["sweep", "--scenario", str(scenario_dir / "sweep_antipodal.json"), "--out", str(out)]) == 2

    report = json.loads((out / "convergence_report.json").read_text(encoding="utf-8"))
    assert report["passed"] is False
    assert any("evaluation failed" in violation for violation in report["violations"])
    rows = (out / "vector_field_chord-fixed.csv").read_text(encoding="utf-8").splitlines()
    assert rows[1].endswith(",,SINGULAR_CONFIGURATION")
    assert "ACCEPTANCE_ERROR" in capsys.readouterr().err


def test_sweep_needs_an_experiment(write_scenario, two_body_data):
    assert main(["sweep", "--scenario", str(write_scenario(two_body_data)), "--out", "out"]) == 1


def test_derive_prints_tables(capsys):
    assert main(["derive", "--dim", "2", "--kappa", "1", "--point", "0.5,1.0"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("dim=2 kappa=1.0 point=[0.5, 1.0]")
    assert "metric (closed form)" in out
    assert "Gamma^s_phiphi" in out
    assert "Gamma^phi_sphi" in out


def test_derive_rejects_a_bad_point(capsys):
    assert main(["derive", "--dim", "3", "--kappa", "1", "--point", "0.5,1.0"]) == 1
    assert main(["derive", "--dim", "2", "--kappa", "1", "--point", "0.0,1.0"]) == 3
    assert "CHART_SINGULARITY" in capsys.readouterr().err
    assert main(["derive", "--dim", "2", "--kappa", "1", "--point=-0.5,1.0"]) == 1
    assert main(["derive", "--dim", "2", "--kappa", "1", "--point", "4.0,1.0"]) == 1
    assert "CHART_DOMAIN_ERROR" in capsys.readouterr().err


def test_verify_with_a_small_sample(tmp_path, small_config, capsys):
    out = tmp_path / "verify"
    assert main(["--config", small_config, "verify", "--out", str(out), "--seed", "7"]) == 0

    report = json.loads((out / "verify_report.json").read_text(encoding="utf-8"))
    assert report["seed"] == 7
    assert report["passed"] is True
    assert "PASS integrator_order" in capsys.readouterr().out


def test_verify_settings_from_the_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("CURVED_NBODY_VERIFICATION__SAMPLES", "2")
    monkeypatch.setenv("CURVED_NBODY_VERIFICATION__GRADIENT_SAMPLES", "1")
    monkeypatch.setenv("CURVED_NBODY_VERIFICATION__SEED", "99")
    assert main(["verify", "--out", str(tmp_path / "env")]) == 0
    report = json.loads((tmp_path / "env" / "verify_report.json").read_text(encoding="utf-8"))
    assert report["seed"] == 99
    assert report["checks"][1]["cases"] == 2 * 2 * 4


def test_json_log_file(tmp_path, small_config, monkeypatch):
    log_file = tmp_path / "run.log"
    monkeypatch.setenv("CURVED_NBODY_LOGGING__FILE", str(log_file))
    assert main(["--log-format", "json", "derive", "--dim", "2", "--kappa", "-1", "--point", "0.5,1.0"]) == 0
    for line in log_file.read_text(encoding="utf-8").splitlines():
        json.loads(line)


def test_runs_default_to_the_configured_output_directory(tmp_path, write_scenario, two_body_data, monkeypatch):
    monkeypatch.setenv("CURVED_NBODY_OUTPUT__DIRECTORY", str(tmp_path / "results"))
    data = copy.deepcopy(two_body_data)
    data["integrator"]["t_end"] = 0.05
    assert main(["simulate", "--scenario", str(write_scenario(data))]) == 0
    assert (tmp_path / "results" / "two-body" / "summary.json").exists()


def test_verify_uses_the_configured_difference_step(tmp_path, capsys):
    path = tmp_path / "coarse.json"
    settings = {"verification": {"samples": 2, "gradient_samples": 1}, "numerics": {"fd_rel_step": 0.05}}
    path.write_text(json.dumps(settings), encoding="utf-8")
    assert main(["--config", str(path), "verify", "--seed", "7"]) == 2
    out = capsys.readouterr().out
    assert "FAIL gradients" in out
    assert "PASS trig_identities" in out
