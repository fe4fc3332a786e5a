"""Flat key-value run configuration with line-numbered diagnostics.

A config file is plain text: one ``key = value`` pair per line, ``#`` starts
a comment, blank lines are ignored.  Recognized keys:

* ``basis`` -- signal basis, ``xy`` (default) or ``uv``;
* ``seed`` -- integer seed for randomized verification draws;
* ``output`` / ``format`` -- default output path and format (csv or json);
* ``eve.d`` -- appends one attacker playing the symmetric strategy with the
  given disturbance (in [0, 1/2]);
* ``eve.delta_uv`` -- opens an asymmetric attacker; the next line must be
  its ``eve.d_xy`` (both in [0, 1]);
* ``sweep.eve`` / ``sweep.start`` / ``sweep.stop`` / ``sweep.step`` -- the
  varying attacker (1-based) and its disturbance grid, required by the sweep
  and diagram modes.

Attackers act in file order.  Scalar keys may appear at most once.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .attack import AttackScenario, EveParams

MODES = ("analyze", "sweep", "diagram", "verify")
FORMATS = ("csv", "json")


class ConfigError(Exception):
    """Malformed configuration; carries a file/line-tagged message."""


@dataclass
class SweepSpec:
    """One varying attacker disturbance over an inclusive grid."""

    eve: int
    start: float
    stop: float
    step: float

    def values(self) -> list[float]:
        if self.stop < self.start:
            raise ConfigError(
                f"sweep.stop ({self.stop}) is below sweep.start ({self.start})")
        if self.stop == self.start:
            return [self.start]
        count = int((self.stop - self.start) / self.step + 1e-9)
        return [self.start + k * self.step for k in range(count + 1)]


@dataclass
class RunConfig:
    """Everything one CLI invocation needs.

    ``symmetric_d`` lists the per-attacker symmetric disturbances when every
    attacker was declared via ``eve.d`` (the sweep/diagram runners rebuild
    scenarios from it); None if any attacker is asymmetric.
    """

    mode: str
    scenario: AttackScenario
    sweep: SweepSpec | None = None
    output: str | None = None
    output_format: str | None = None
    seed: int = 0
    symmetric_d: tuple[float, ...] | None = None


def _err(path: str, line_no: int, message: str) -> ConfigError:
    return ConfigError(f"{path}:{line_no}: {message}")


def _parse_float(path: str, line_no: int, key: str, raw: str,
                 lo: float, hi: float) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise _err(path, line_no, f"value for {key} is not a number: {raw!r}") from None
    if not lo <= value <= hi:
        raise _err(path, line_no,
                   f"value for {key} must lie in [{lo:g}, {hi:g}], got {raw}")
    return value


def parse_config(path: str | Path, mode: str) -> RunConfig:
    """Parse a config file for the given mode, validating as it goes."""
    path = Path(path)
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}; expected one of {MODES}")
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc

    scalars: dict[str, tuple[int, str]] = {}
    eves: list[EveParams] = []
    # each entry mirrors eves: the symmetric d if declared via eve.d, else None
    symmetric_d: list[float | None] = []
    pending_delta: tuple[int, float] | None = None
    sweep_raw: dict[str, tuple[int, str]] = {}

    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise _err(str(path), line_no, f"expected 'key = value', got {raw_line!r}")
        key, _, raw_value = line.partition("=")
        key = key.strip()
        value = raw_value.strip()
        if not value:
            raise _err(str(path), line_no, f"missing value for {key!r}")

        if key == "eve.d":
            if pending_delta is not None:
                raise _err(str(path), line_no,
                           "eve.delta_uv on line "
                           f"{pending_delta[0]} is missing its eve.d_xy")
            d = _parse_float(str(path), line_no, key, value, 0.0, 0.5)
            eves.append(EveParams.symmetric(d))
            symmetric_d.append(d)
        elif key == "eve.delta_uv":
            if pending_delta is not None:
                raise _err(str(path), line_no,
                           "eve.delta_uv on line "
                           f"{pending_delta[0]} is missing its eve.d_xy")
            pending_delta = (line_no,
                             _parse_float(str(path), line_no, key, value, 0.0, 1.0))
        elif key == "eve.d_xy":
            if pending_delta is None:
                raise _err(str(path), line_no,
                           "eve.d_xy without a preceding eve.delta_uv")
            d_xy = _parse_float(str(path), line_no, key, value, 0.0, 1.0)
            eves.append(EveParams(delta_uv=pending_delta[1], d_xy=d_xy))
            symmetric_d.append(None)
            pending_delta = None
        elif key in ("sweep.eve", "sweep.start", "sweep.stop", "sweep.step"):
            if key in sweep_raw:
                raise _err(str(path), line_no,
                           f"duplicate {key} (first on line {sweep_raw[key][0]})")
            sweep_raw[key] = (line_no, value)
        elif key in ("basis", "seed", "output", "format"):
            if key in scalars:
                raise _err(str(path), line_no,
                           f"duplicate {key} (first on line {scalars[key][0]})")
            scalars[key] = (line_no, value)
        else:
            raise _err(str(path), line_no, f"unknown key {key!r}")

    if pending_delta is not None:
        raise _err(str(path), pending_delta[0],
                   "eve.delta_uv is missing its eve.d_xy")

    basis = "xy"
    if "basis" in scalars:
        line_no, value = scalars["basis"]
        if value not in ("xy", "uv"):
            raise _err(str(path), line_no, f"basis must be xy or uv, got {value!r}")
        basis = value

    seed = 0
    if "seed" in scalars:
        line_no, value = scalars["seed"]
        try:
            seed = int(value)
        except ValueError:
            raise _err(str(path), line_no, f"seed is not an integer: {value!r}") from None

    output = scalars["output"][1] if "output" in scalars else None
    output_format = None
    if "format" in scalars:
        line_no, value = scalars["format"]
        if value not in FORMATS:
            raise _err(str(path), line_no,
                       f"format must be one of {FORMATS}, got {value!r}")
        output_format = value

    scenario = AttackScenario(tuple(eves), signal_basis=basis)

    sweep = None
    if mode in ("sweep", "diagram"):
        missing = [k for k in ("sweep.eve", "sweep.start", "sweep.stop", "sweep.step")
                   if k not in sweep_raw]
        if missing:
            raise ConfigError(
                f"{path}: mode '{mode}' needs {', '.join(missing)}")
        line_no, value = sweep_raw["sweep.eve"]
        try:
            eve_index = int(value)
        except ValueError:
            raise _err(str(path), line_no,
                       f"sweep.eve is not an integer: {value!r}") from None
        if not 1 <= eve_index <= scenario.n:
            raise _err(str(path), line_no,
                       f"sweep.eve {eve_index} out of range: config declares "
                       f"{scenario.n} attacker(s)")
        if any(d is None for d in symmetric_d):
            raise ConfigError(
                f"{path}: sweep and diagram modes need all attackers declared "
                "symmetric via eve.d (the sweep axis is a symmetric disturbance)")
        start_line, start_value = sweep_raw["sweep.start"]
        start = _parse_float(str(path), start_line, "sweep.start", start_value, 0.0, 0.5)
        stop_line, stop_value = sweep_raw["sweep.stop"]
        stop = _parse_float(str(path), stop_line, "sweep.stop", stop_value, 0.0, 0.5)
        step_line, step_value = sweep_raw["sweep.step"]
        step = _parse_float(str(path), step_line, "sweep.step", step_value, 0.0, 0.5)
        if step <= 0.0 and stop != start:
            raise _err(str(path), step_line, "sweep.step must be positive")
        sweep = SweepSpec(eve=eve_index, start=start, stop=stop, step=max(step, 1e-12))
    # outside sweep/diagram modes any sweep.* keys are simply unused, so one
    # config file can drive analyze and diagram runs alike

    all_symmetric = not any(d is None for d in symmetric_d)
    return RunConfig(mode=mode, scenario=scenario, sweep=sweep, output=output,
                     output_format=output_format, seed=seed,
                     symmetric_d=tuple(symmetric_d) if all_symmetric else None)
