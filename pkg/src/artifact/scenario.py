"""Strict TOML loaders for scenario and ratio-program input files.

Unknown keys are rejected at every level: a typo in an experiment file
should fail loudly instead of silently running a different model.  All
diagnostics carry the file name and the offending section or field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import tomli

from .errors import ConfigurationError
from .lfp import LfpInstance
from .prob import JointSourcePmf, ObservationChannel, TestChannel


@dataclass(frozen=True)
class SimulationSettings:
    """The [simulation] block: pool sizes, trials per pool, seed."""

    l_values: tuple[int, ...]
    trials: int
    seed: int


@dataclass(frozen=True)
class GaussianSettings:
    """The [gaussian] block: context-shift variance and a noise grid."""

    sigma_s2: float
    sigma_n2_grid: tuple[float, ...]


@dataclass(frozen=True)
class Scenario:
    """A parsed scenario file; optional blocks are None when absent."""

    source: JointSourcePmf
    observation: ObservationChannel
    dictionary: Optional[tuple[TestChannel, ...]]
    simulation: Optional[SimulationSettings]
    gaussian: Optional[GaussianSettings]


def _load_toml(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomli.load(fh)
    except FileNotFoundError:
        raise ConfigurationError(f"{path}: no such file") from None
    except OSError as exc:
        raise ConfigurationError(f"{path}: {exc}") from None
    except tomli.TOMLDecodeError as exc:
        # tomli reports line and column in the message
        raise ConfigurationError(f"{path}: {exc}") from None


def _check_keys(mapping: dict, allowed: set[str], where: str) -> None:
    unknown = sorted(set(mapping) - allowed)
    if unknown:
        raise ConfigurationError(f"{where}: unknown key(s) {unknown}")


def _require(mapping: dict, key: str, where: str) -> object:
    if key not in mapping:
        raise ConfigurationError(f"{where}: missing required key '{key}'")
    return mapping[key]


def _as_int(value: object, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigurationError(f"{where}: expected an integer, got {value!r}")
    return value


def _as_number(value: object, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigurationError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _as_number_list(value: object, where: str) -> list[float]:
    if not isinstance(value, list) or not value:
        raise ConfigurationError(f"{where}: expected a nonempty array of numbers")
    return [_as_number(v, f"{where}[{k}]") for k, v in enumerate(value)]


def _as_array(value: object, where: str) -> np.ndarray:
    try:
        arr = np.array(value, dtype=float)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{where}: expected a rectangular numeric array") from None
    if arr.dtype != float or arr.size == 0:
        raise ConfigurationError(f"{where}: expected a nonempty numeric array")
    return arr


def _parse_source(block: object, where: str) -> JointSourcePmf:
    if not isinstance(block, dict):
        raise ConfigurationError(f"{where}: expected a table")
    _check_keys(block, {"x_size", "s_size", "probs"}, where)
    x_size = _as_int(_require(block, "x_size", where), f"{where}.x_size")
    s_size = _as_int(_require(block, "s_size", where), f"{where}.s_size")
    probs = _as_array(_require(block, "probs", where), f"{where}.probs")
    try:
        return JointSourcePmf(x_size=x_size, s_size=s_size, probs=probs)
    except ConfigurationError as exc:
        raise ConfigurationError(f"{where}: {exc}") from None


def _parse_observation(block: object, where: str) -> ObservationChannel:
    if not isinstance(block, dict):
        raise ConfigurationError(f"{where}: expected a table")
    _check_keys(block, {"y_size", "rows"}, where)
    y_size = _as_int(_require(block, "y_size", where), f"{where}.y_size")
    rows = _as_array(_require(block, "rows", where), f"{where}.rows")
    try:
        return ObservationChannel(y_size=y_size, rows=rows)
    except ConfigurationError as exc:
        raise ConfigurationError(f"{where}: {exc}") from None


def _parse_dictionary(block: object, where: str) -> tuple[TestChannel, ...]:
    if not isinstance(block, list) or not block:
        raise ConfigurationError(
            f"{where}: expected one or more [[dictionary]] tables")
    channels = []
    for k, entry in enumerate(block):
        sub = f"{where}[{k}]"
        if not isinstance(entry, dict):
            raise ConfigurationError(f"{sub}: expected a table")
        _check_keys(entry, {"u_size", "rows"}, sub)
        u_size = _as_int(_require(entry, "u_size", sub), f"{sub}.u_size")
        rows = _as_array(_require(entry, "rows", sub), f"{sub}.rows")
        try:
            channels.append(TestChannel(u_size=u_size, rows=rows))
        except ConfigurationError as exc:
            raise ConfigurationError(f"{sub}: {exc}") from None
    return tuple(channels)


def _parse_simulation(block: object, where: str) -> SimulationSettings:
    if not isinstance(block, dict):
        raise ConfigurationError(f"{where}: expected a table")
    _check_keys(block, {"l_values", "trials", "seed"}, where)
    raw_l = _require(block, "l_values", where)
    if not isinstance(raw_l, list) or not raw_l:
        raise ConfigurationError(f"{where}.l_values: expected a nonempty array of integers")
    l_values = tuple(_as_int(v, f"{where}.l_values[{k}]") for k, v in enumerate(raw_l))
    trials = _as_int(_require(block, "trials", where), f"{where}.trials")
    seed = _as_int(_require(block, "seed", where), f"{where}.seed")
    if trials < 1:
        raise ConfigurationError(f"{where}.trials: must be at least 1, got {trials}")
    if any(v < 1 for v in l_values):
        raise ConfigurationError(f"{where}.l_values: every pool size must be at least 1")
    if any(b <= a for a, b in zip(l_values, l_values[1:])):
        raise ConfigurationError(f"{where}.l_values: must be strictly increasing")
    if not 0 <= seed < 2 ** 64:
        raise ConfigurationError(f"{where}.seed: must fit an unsigned 64-bit integer")
    return SimulationSettings(l_values=l_values, trials=trials, seed=seed)


def _parse_gaussian(block: object, where: str) -> GaussianSettings:
    if not isinstance(block, dict):
        raise ConfigurationError(f"{where}: expected a table")
    _check_keys(block, {"sigma_s2", "sigma_n2_grid"}, where)
    sigma_s2 = _as_number(_require(block, "sigma_s2", where), f"{where}.sigma_s2")
    grid = _as_number_list(_require(block, "sigma_n2_grid", where), f"{where}.sigma_n2_grid")
    if sigma_s2 < 0.0:
        raise ConfigurationError(f"{where}.sigma_s2: must be nonnegative")
    if any(v <= 0.0 for v in grid):
        raise ConfigurationError(f"{where}.sigma_n2_grid: entries must be positive")
    return GaussianSettings(sigma_s2=sigma_s2, sigma_n2_grid=tuple(grid))


def load_scenario(path: str) -> Scenario:
    """Parse and validate a scenario file; every component is checked."""
    doc = _load_toml(path)
    _check_keys(doc, {"source", "observation", "dictionary", "simulation", "gaussian"},
                str(path))
    if "source" not in doc:
        raise ConfigurationError(f"{path}: missing required [source] section")
    if "observation" not in doc:
        raise ConfigurationError(f"{path}: missing required [observation] section")
    source = _parse_source(doc["source"], f"{path}: [source]")
    observation = _parse_observation(doc["observation"], f"{path}: [observation]")
    if (source.x_size, source.s_size) != (observation.x_size, observation.s_size):
        raise ConfigurationError(
            f"{path}: [observation] rows are for (x, s) = "
            f"({observation.x_size}, {observation.s_size}) but [source] declares "
            f"({source.x_size}, {source.s_size})")
    dictionary = None
    if "dictionary" in doc:
        dictionary = _parse_dictionary(doc["dictionary"], f"{path}: [[dictionary]]")
        for k, ch in enumerate(dictionary):
            if ch.y_size != observation.y_size:
                raise ConfigurationError(
                    f"{path}: [[dictionary]][{k}] has {ch.y_size} rows but the "
                    f"observation channel emits {observation.y_size} letters")
    simulation = None
    if "simulation" in doc:
        simulation = _parse_simulation(doc["simulation"], f"{path}: [simulation]")
    gaussian = None
    if "gaussian" in doc:
        gaussian = _parse_gaussian(doc["gaussian"], f"{path}: [gaussian]")
    return Scenario(source=source, observation=observation, dictionary=dictionary,
                    simulation=simulation, gaussian=gaussian)


def load_lfp_instance(path: str) -> LfpInstance:
    """Parse a ratio-program file: i_max, j_max, row-major a and b, c1, c2."""
    doc = _load_toml(path)
    where = str(path)
    _check_keys(doc, {"i_max", "j_max", "a", "b", "c1", "c2"}, where)
    i_max = _as_int(_require(doc, "i_max", where), f"{where}: i_max")
    j_max = _as_int(_require(doc, "j_max", where), f"{where}: j_max")
    if i_max < 1 or j_max < 1:
        raise ConfigurationError(f"{where}: i_max and j_max must be at least 1")
    a = _as_number_list(_require(doc, "a", where), f"{where}: a")
    b = _as_number_list(_require(doc, "b", where), f"{where}: b")
    if len(a) != i_max * j_max:
        raise ConfigurationError(
            f"{where}: a has {len(a)} entries, expected i_max * j_max = {i_max * j_max}")
    if len(b) != i_max * j_max:
        raise ConfigurationError(
            f"{where}: b has {len(b)} entries, expected i_max * j_max = {i_max * j_max}")
    c1 = _as_number(_require(doc, "c1", where), f"{where}: c1")
    c2 = _as_number(_require(doc, "c2", where), f"{where}: c2")
    try:
        return LfpInstance(a=np.array(a).reshape(i_max, j_max),
                           b=np.array(b).reshape(i_max, j_max), c1=c1, c2=c2)
    except ConfigurationError as exc:
        raise ConfigurationError(f"{where}: {exc}") from None
