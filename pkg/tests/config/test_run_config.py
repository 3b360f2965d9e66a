"""Configuration layering: defaults, pyproject, environment, overrides."""

from pathlib import Path

import pytest

from twistbench.config import DEFAULT_P, RunConfig, find_pyproject, load_config
from twistbench.errors import ConfigError, PreconditionError


@pytest.fixture
def pyproject(tmp_path: Path) -> Path:
    path = tmp_path / "pyproject.toml"
    path.write_text("[tool.twistbench]\np = 31013\ntrials = 4\n", encoding="utf-8")
    return path


def test_defaults(tmp_path):
    cfg = load_config(pyproject=tmp_path / "missing.toml", env={})
    assert cfg == RunConfig()
    assert cfg.p == DEFAULT_P


def test_pyproject_table(pyproject):
    cfg = load_config(pyproject=pyproject, env={})
    assert (cfg.p, cfg.trials, cfg.seed) == (31013, 4, 0)


def test_environment_beats_file(pyproject):
    cfg = load_config(pyproject=pyproject, env={"TWISTBENCH_TRIALS": "9", "TWISTBENCH_SEED": " "})
    assert cfg.trials == 9
    assert cfg.seed == 0


def test_overrides_beat_environment(pyproject):
    cfg = load_config(pyproject=pyproject, env={"TWISTBENCH_P": "32003"}, p=31013, seed=None, out="r.json")
    assert cfg.p == 31013
    assert cfg.out == Path("r.json")
    assert cfg.to_dict()["out"] == "r.json"


@pytest.mark.parametrize("changes", [{"p": 2}, {"p": 32001}, {"trials": 0}, {"jobs": 0}, {"max_period": 0}])
def test_invalid_values(changes):
    with pytest.raises(ConfigError):
        RunConfig(**changes)


def test_bad_environment_value(tmp_path):
    with pytest.raises(ConfigError):
        load_config(pyproject=tmp_path / "none.toml", env={"TWISTBENCH_P": "seven"})


def test_unknown_override(tmp_path):
    with pytest.raises(PreconditionError):
        load_config(pyproject=tmp_path / "none.toml", env={}, colour="red")


def test_unreadable_pyproject(tmp_path):
    path = tmp_path / "pyproject.toml"
    path.write_text("[tool.twistbench\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_config(pyproject=path, env={})


def test_find_pyproject_walks_up(tmp_path, pyproject):
    nested = tmp_path / "a" / "b"
    nested.mkdir(parents=True)
    assert find_pyproject(nested) == pyproject.resolve()


def test_replace():
    assert RunConfig().replace(seed=5).seed == 5
