"""
End-to-end runs of the pointing-ofc command line.
"""

from __future__ import annotations

import json

import numpy as np
import pandas as pd
import pytest
import tomli
import typer
from typer.testing import CliRunner

from cli.main import app
from cli.utils import handle_errors
from src.config import config
from src.data import synthesize_corpus, write_corpus
from src.models import ModelFactory, TaskSpec

pytestmark = pytest.mark.integration

runner = CliRunner()


def _invoke(*args):
    return runner.invoke(app, [str(a) for a in args])


def _minjerk_corpus(directory, tasks, n_mj=60, count=3):
    model = ModelFactory.create("minjerk", {"n_mj": n_mj})
    trials = []
    for task in tasks:
        trials.extend(synthesize_corpus(model, task, count=count, seed=0, participant="1"))
    write_corpus(trials, directory)
    return directory


def test_simulate_2ol_reaches_target(tmp_path):
    result = _invoke(
        "simulate", "-m", "2ol-eq", "--k", 40, "--zeta", 1, "--target", 0.212, "--n", 485, "-o", tmp_path
    )
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(tmp_path / "trajectory.csv")
    assert list(frame.columns) == ["frame", "time_s", "pos_m", "vel_mps", "acc_mps2", "control"]
    assert len(frame) == 486
    assert abs(frame["pos_m"].iloc[-1] - 0.212) <= 0.0141 / 2
    assert np.isnan(frame["control"].iloc[-1])
    params = json.loads((tmp_path / "params.json").read_text())
    assert params["params"]["k"] == 40.0
    assert (tmp_path / "trajectory.svg").exists()
    assert not (tmp_path / "distribution.json").exists()


def test_simulate_minjerk_without_surge_stays_at_target(tmp_path):
    result = _invoke("simulate", "-m", "minjerk", "--nmj", 0, "--target", 0.1, "--n", 50, "-o", tmp_path, "--no-svg")
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(tmp_path / "trajectory.csv")
    assert np.all(frame["pos_m"] == 0.1)


def test_seeded_stochastic_simulation_is_reproducible(tmp_path):
    args = ["simulate", "-m", "lqg", "--omega-r", 1e-3, "--omega-v", 0, "--omega-f", 0, "--sigma-u", 0.2,
            "--sigma-s", 0.5, "--target", 0.2, "--n", 120, "--samples", 4, "--seed", 7, "--no-svg"]  # fmt: skip
    first = _invoke(*args, "-o", tmp_path / "a")
    second = _invoke(*args, "-o", tmp_path / "b")
    assert first.exit_code == 0, first.output
    assert second.exit_code == 0, second.output
    for name in ("trajectory.csv", "samples.csv", "distribution.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    document = json.loads((tmp_path / "a" / "distribution.json").read_text())
    assert document["N"] == 120
    assert len(document["cov"]) == 121
    samples = pd.read_csv(tmp_path / "a" / "samples.csv")
    assert samples["trial_id"].nunique() == 4


def test_usage_errors_exit_with_code_two(tmp_path):
    unknown = _invoke("simulate", "-m", "kalman", "--target", 0.1, "-o", tmp_path)
    assert unknown.exit_code == 2
    assert "error:" in unknown.output
    missing = _invoke("simulate", "-m", "2ol-eq", "--k", 40, "--d", 12, "-o", tmp_path)
    assert missing.exit_code == 2
    assert "--target" in missing.output


def test_fit_writes_one_row_per_condition(tmp_path):
    tasks = [TaskSpec(target=0.2, N=100), TaskSpec(target=-0.15, N=100)]
    corpus = _minjerk_corpus(tmp_path / "corpus", tasks)
    out = tmp_path / "fit"
    result = _invoke("fit", corpus, "-m", "minjerk", "--raw", "--max-generations", 0, "-o", out)
    assert result.exit_code == 0, result.output

    summary = pd.read_csv(out / "fit_summary.csv")
    assert len(summary) == 2
    assert set(summary["status"]) == {"ok"}
    assert not summary["converged"].any()
    assert "param_n_mj" in summary.columns
    assert len(list(out.glob("*.fit.json"))) == 2
    assert len(list(out.glob("*.ensemble.json"))) == 2


def test_fit_with_empty_selection_fails(tmp_path):
    corpus = _minjerk_corpus(tmp_path / "corpus", [TaskSpec(target=0.2, N=100)])
    result = _invoke("fit", corpus, "-m", "minjerk", "--participant", "nobody", "-o", tmp_path / "fit")
    assert result.exit_code == 1
    assert "error:" in result.output


def test_compare_fit_result_against_itself(tmp_path):
    corpus = _minjerk_corpus(tmp_path / "corpus", [TaskSpec(target=0.2, N=100)])
    fitted = tmp_path / "fit"
    assert _invoke("fit", corpus, "-m", "minjerk", "--raw", "--max-generations", 0, "-o", fitted).exit_code == 0
    document = next(fitted.glob("*.fit.json"))

    out = tmp_path / "compare"
    result = _invoke("compare", "--reference", document, "--result", document, "-o", out)
    assert result.exit_code == 0, result.output
    table = pd.read_csv(out / "comparison.csv")
    rows = table[table["condition"] != "ALL"]
    assert len(rows) == 1
    assert rows["sse_pos"].iloc[0] == pytest.approx(0.0, abs=1e-20)
    assert rows["max_acc"].iloc[0] == pytest.approx(0.0, abs=1e-12)
    assert np.isnan(rows["mwd"].iloc[0])
    assert (table["condition"] == "ALL").sum() == 1


def test_compare_clips_external_corpus(tmp_path):
    reference = _minjerk_corpus(tmp_path / "reference", [TaskSpec(target=0.2, N=150)])
    external = _minjerk_corpus(tmp_path / "external", [TaskSpec(target=0.2, N=120)])
    out = tmp_path / "compare"
    result = _invoke("compare", "--reference", reference, "--external", external, "--raw", "-o", out)
    assert result.exit_code == 0, result.output
    table = pd.read_csv(out / "comparison.csv")
    row = table[table["condition"] != "ALL"].iloc[0]
    assert row["kind"] == "external"
    assert row["length"] == 121
    assert row["sse_pos"] == pytest.approx(0.0, abs=1e-20)
    assert row["mwd"] == pytest.approx(0.0, abs=1e-6)


def test_compare_rejects_unit_mismatch(tmp_path):
    reference = _minjerk_corpus(tmp_path / "reference", [TaskSpec(target=0.2, N=100)])
    external = _minjerk_corpus(tmp_path / "external", [TaskSpec(target=0.1, N=100)])
    result = _invoke("compare", "--reference", reference, "--external", external, "--raw", "-o", tmp_path / "out")
    assert result.exit_code == 1
    assert "px-per-m" in result.output


def test_compare_needs_something_to_compare(tmp_path):
    reference = _minjerk_corpus(tmp_path / "reference", [TaskSpec(target=0.2, N=100)])
    result = _invoke("compare", "--reference", reference, "-o", tmp_path / "out")
    assert result.exit_code == 1


def test_sweep_damping_ratio_controls_overshoot(tmp_path):
    result = _invoke(
        "sweep", "-m", "2ol-eq", "--param", "zeta", "--values", "0.5,1,2", "--k", 40, "--target", 0.212,
        "--n", 485, "-o", tmp_path,
    )  # fmt: skip
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(tmp_path / "sweep.csv")
    assert frame["value"].tolist() == [0.5, 1.0, 2.0]
    assert frame["overshoot"].tolist() == [True, False, False]
    assert frame["peak_velocity_mps"].is_monotonic_decreasing
    assert (tmp_path / "sweep.svg").exists()


def test_sweep_over_task_distance(tmp_path):
    result = _invoke(
        "sweep", "-m", "minjerk", "--nmj", 50, "--param", "distance", "--values", "0.1", "--target", 0.2,
        "--n", 80, "-o", tmp_path, "--no-svg",
    )  # fmt: skip
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(tmp_path / "sweep.csv")
    assert len(frame) == 1
    assert frame["peak_velocity_mps"].iloc[0] == pytest.approx(1.875 * 0.1 / (50 * 0.002), rel=1e-9)


def test_sweep_without_values_fails(tmp_path):
    result = _invoke(
        "sweep", "-m", "2ol-eq", "--param", "k", "--values", "", "--d", 10, "--target", 0.2, "-o", tmp_path
    )
    assert result.exit_code == 1
    assert "empty sweep grid" in result.output


def test_config_file_supplies_options(tmp_path):
    config_file = tmp_path / "run.json"
    config_file.write_text(json.dumps({"model": "minjerk", "target": 0.1, "n": 60, "n-mj": 30}))
    result = _invoke("simulate", "--config", config_file, "-o", tmp_path / "out", "--no-svg")
    assert result.exit_code == 0, result.output
    frame = pd.read_csv(tmp_path / "out" / "trajectory.csv")
    assert len(frame) == 61
    assert frame["pos_m"].iloc[-1] == pytest.approx(0.1)


def test_unexpected_errors_are_reported_on_one_line():
    crashing = typer.Typer()

    @crashing.command()
    @handle_errors
    def lookup():
        raise KeyError("x\ny")

    result = runner.invoke(crashing, [])
    assert result.exit_code == 1
    lines = [line for line in result.output.splitlines() if line.startswith("error:")]
    assert lines == ["error: KeyError: 'x\\ny'"]


def test_typer_exit_passes_through_error_handler():
    quitting = typer.Typer()

    @quitting.command()
    @handle_errors
    def done():
        raise typer.Exit(code=3)

    result = runner.invoke(quitting, [])
    assert result.exit_code == 3
    assert "error:" not in result.output


def test_config_set_and_reset_round_trip():
    try:
        result = _invoke("config", "set", "band-z", "2.5")
        assert result.exit_code == 0, result.output
        assert config.band_z == 2.5
        with open(config.config_file, "rb") as f:
            assert tomli.load(f) == {"band_z": 2.5}

        shown = _invoke("config", "show")
        assert shown.exit_code == 0, shown.output
        assert "config" in shown.output

        result = _invoke("config", "reset", "band_z")
        assert result.exit_code == 0, result.output
        assert config.band_z == 1.96
        with open(config.config_file, "rb") as f:
            assert tomli.load(f) == {}
    finally:
        config.band_z = 1.96


def test_config_set_rejects_bad_values():
    bad = _invoke("config", "set", "band_z", "0")
    assert bad.exit_code == 2
    assert "error: ParameterError" in bad.output
    assert config.band_z == 1.96
    unknown = _invoke("config", "set", "no_such_key", "1")
    assert unknown.exit_code == 2
    assert "unknown config key" in unknown.output
    assert _invoke("config", "set", "save_dir", "/tmp").exit_code == 2
