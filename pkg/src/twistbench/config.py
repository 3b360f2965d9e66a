# config.py - Run configuration
# Resolution order, later wins: defaults, [tool.twistbench] in pyproject.toml,
# TWISTBENCH_* environment variables, explicit overrides (CLI flags).

from __future__ import annotations

import dataclasses
import os
import tomllib
from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import galois

from twistbench.errors import ConfigError
from twistbench.log import get_logger

log = get_logger(__name__)

DEFAULT_P = 32003

ENV_KEYS = {
    "p": "TWISTBENCH_P",
    "seed": "TWISTBENCH_SEED",
    "trials": "TWISTBENCH_TRIALS",
    "jobs": "TWISTBENCH_JOBS",
    "max_degree": "TWISTBENCH_MAX_DEGREE",
    "max_period": "TWISTBENCH_MAX_PERIOD",
}


@dataclass(frozen=True)
class RunConfig:
    p: int = DEFAULT_P
    seed: int = 0
    trials: int = 16
    max_degree: int = 16
    max_period: int = 6
    jobs: int = 1
    out: Path | None = None
    verbose: bool = False

    def __post_init__(self) -> None:
        if self.p < 3 or not galois.is_prime(self.p):
            raise ConfigError(f"p must be an odd prime, got {self.p}")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be >= 1, got {self.jobs}")
        if self.max_degree < 1 or self.max_period < 1:
            raise ConfigError("max_degree and max_period must be positive")

    def replace(self, **changes: Any) -> RunConfig:
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict[str, Any]:
        data = dataclasses.asdict(self)
        data["out"] = str(self.out) if self.out is not None else None
        return data


def find_pyproject(start: Path | None = None) -> Path | None:
    """Nearest pyproject.toml at or above start (default: cwd)."""
    here = (start or Path.cwd()).resolve()
    for directory in (here, *here.parents):
        candidate = directory / "pyproject.toml"
        if candidate.is_file():
            return candidate
    return None


def _read_tool_table(pyproject: Path) -> dict[str, Any]:
    try:
        with pyproject.open("rb") as fh:
            data = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot read {pyproject}: {exc}") from exc
    return dict(data.get("tool", {}).get("twistbench", {}))


def _int_value(name: str, raw: Any) -> int:
    try:
        return int(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from exc


def load_config(
    pyproject: Path | None = None,
    env: Mapping[str, str] | None = None,
    **overrides: Any,
) -> RunConfig:
    """Resolve a RunConfig from file, environment and explicit overrides.

    Overrides whose value is None are ignored so click options without a
    value fall through to the lower layers.
    """
    env = os.environ if env is None else env
    values: dict[str, Any] = {}

    path = pyproject if pyproject is not None else find_pyproject()
    if path is not None and path.is_file():
        table = _read_tool_table(path)
        unknown = set(table) - {f.name for f in dataclasses.fields(RunConfig)}
        if unknown:
            log.warning("ignoring unknown [tool.twistbench] keys: %s", sorted(unknown))
        for key in ENV_KEYS:
            if key in table:
                values[key] = _int_value(key, table[key])

    for key, var in ENV_KEYS.items():
        if var in env and env[var].strip():
            values[key] = _int_value(var, env[var])

    for key, value in overrides.items():
        if value is None:
            continue
        if key == "out":
            values[key] = Path(value)
        elif key == "verbose":
            values[key] = bool(value)
        elif key in ENV_KEYS:
            values[key] = _int_value(key, value)
        else:
            raise ConfigError(f"unknown configuration key {key!r}")

    return RunConfig(**values)
