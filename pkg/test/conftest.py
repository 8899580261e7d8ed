"""
Shared pytest fixtures: small tasks, typical parameter sets and synthetic corpora.
"""

from __future__ import annotations

import os
import tempfile

import numpy as np
import pytest
from dotenv import load_dotenv

# Load project and test specific environment variables.
load_dotenv(".env", override=False)
load_dotenv("test/.env.test", override=False)

# Logs and user config of test runs go to a throwaway directory.
os.environ.setdefault("SAVE_DIR", tempfile.mkdtemp(prefix="pointing-ofc-test-"))

from src.data import RawTrial  # noqa: E402
from src.models import TaskSpec  # noqa: E402

LQG_PARAMS = {"omega_r": 1e-3, "omega_v": 0.0, "omega_f": 0.0, "sigma_u": 0.2, "sigma_s": 0.5}
ELQG_PARAMS = {
    "omega_r": 1e-3,
    "omega_v": 0.0,
    "omega_f": 0.0,
    "sigma_u": 0.2,
    "sigma_v": 0.1,
    "sigma_f": 0.5,
    "sigma_e": 0.01,
    "gamma": 0.1,
    "n_s": 40.0,
}


@pytest.fixture
def task() -> TaskSpec:
    """Rightward 0.212 m reach over 485 steps at the default sampling rate."""
    return TaskSpec(target=0.212, start=0.0, width=0.0141, N=485, h=0.002)


@pytest.fixture
def short_task() -> TaskSpec:
    return TaskSpec(target=0.2, start=0.0, width=0.0141, N=150, h=0.002)


@pytest.fixture
def lqg_params() -> dict[str, float]:
    return dict(LQG_PARAMS)


@pytest.fixture
def elqg_params() -> dict[str, float]:
    return dict(ELQG_PARAMS)


def _make_trial(
    positions,
    trial_id: str = "0",
    direction: str = "right",
    distance: float = 0.2,
    width: float = 0.0141,
    participant: str = "1",
    h: float = 0.002,
) -> RawTrial:
    positions = np.asarray(positions, dtype=float)
    return RawTrial(
        trial_id=trial_id,
        participant=participant,
        distance=distance,
        width=width,
        direction=direction,
        times=np.arange(len(positions)) * h,
        positions=positions,
    )


def _padded_reach(c: float = 1e-3, lead: int = 100) -> np.ndarray:
    """静止 lead 帧后先加速 60 帧、再减速到 0 的位置序列（前向差分速度）"""
    velocity = np.zeros(lead + 130)
    for n in range(lead, lead + 60):
        velocity[n] = c * (n - lead + 1)
    for n in range(lead + 60, lead + 119):
        velocity[n] = c * (lead + 119 - n)
    positions = np.concatenate([[0.0], np.cumsum(velocity)])
    return positions[: len(velocity)]


@pytest.fixture
def make_trial():
    return _make_trial


@pytest.fixture
def padded_reach():
    return _padded_reach
