"""Shared fixtures"""

import json
import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.config import AppConfig  # noqa: E402
from src.logging import clear_run_context  # noqa: E402

SCENARIO_DIR = PROJECT_ROOT / "scenarios"


@pytest.fixture(autouse=True)
def _isolated_environment(monkeypatch):
    """Keep developer .env files and CURVED_NBODY_* variables out of the tests"""
    import os

    for key in list(os.environ):
        if key.startswith("CURVED_NBODY_"):
            monkeypatch.delenv(key, raising=False)
    clear_run_context()
    yield
    clear_run_context()


@pytest.fixture
def config(tmp_path, monkeypatch) -> AppConfig:
    monkeypatch.chdir(tmp_path)
    return AppConfig()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def scenario_dir() -> Path:
    return SCENARIO_DIR


@pytest.fixture
def write_scenario(tmp_path):
    """Write a scenario dict to a JSON file and return its path"""

    def _write(data, name: str = "scenario.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def two_body_data():
    return {
        "name": "two-body",
        "manifold": {"dim": 2, "kappa": 1.0},
        "bodies": [
            {"mass": 1.0, "position": {"s": 0.5, "phi": 0.0}, "velocity": {"phi": 1.8}},
            {"mass": 1.0, "position": {"s": 0.5, "phi": 3.141592653589793}, "velocity": {"phi": 1.8}},
        ],
        "integrator": {"method": "rk4", "t_end": 0.5, "dt": 0.01},
    }
