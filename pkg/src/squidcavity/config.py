"""Run configuration: JSON files with unit-suffixed keys, strict validation.

Every rate or duration key carries its unit in the name (``_per_s``, ``_hz``,
``_s``) because the operating point mixes Hz, microseconds, and dimensionless
quality factors; a silent unit slip is the likeliest way to get plausible but
wrong numbers.  Unknown keys are rejected with their full path rather than
ignored.  Command-line flags override file values, which override defaults.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from .hamiltonians import FeasibilityParams
from .protocols import GateParams

PROTOCOLS = ("qcpg", "cluster")
SWEEP_PARAMETERS = ("k", "gamma_e", "branch_ratio")

MIN_CHAIN = 2
MAX_CHAIN = 10

# default sweep: cavity decay from the base point up three decades
DEFAULT_SWEEP_VALUES = (5e4, 5e5, 5e6, 5e7)


class ConfigError(ValueError):
    """Invalid or unparseable run configuration."""


@dataclass(frozen=True)
class LindbladSettings:
    steps_per_segment: int = 2000

    def __post_init__(self):
        if self.steps_per_segment < 1:
            raise ConfigError(
                f"steps_per_segment must be >= 1, got {self.steps_per_segment}"
            )


@dataclass(frozen=True)
class SweepSettings:
    parameter: str = "k"
    values: tuple = DEFAULT_SWEEP_VALUES

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise ConfigError(
                f"sweep parameter must be one of {SWEEP_PARAMETERS}, "
                f"got {self.parameter!r}"
            )
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ConfigError("sweep values must be nonempty")
        for v in values:
            if not v >= 0:
                raise ConfigError(f"sweep values must be >= 0, got {v}")
            if self.parameter == "branch_ratio" and v > 1:
                raise ConfigError(f"branch_ratio sweep values must be <= 1, got {v}")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class RunConfig:
    protocol: str = "qcpg"
    n_qubits: int = 4
    fock_cutoff: int = 2
    seed: int = 0
    out_dir: str = "out"
    gate: GateParams = field(default_factory=GateParams)
    feasibility: FeasibilityParams = field(default_factory=FeasibilityParams)
    lindblad: LindbladSettings = field(default_factory=LindbladSettings)
    sweep: SweepSettings = field(default_factory=SweepSettings)

    def __post_init__(self):
        if self.protocol not in PROTOCOLS:
            raise ConfigError(
                f"protocol must be one of {PROTOCOLS}, got {self.protocol!r}"
            )
        for name in ("n_qubits", "fock_cutoff", "seed"):
            if not isinstance(getattr(self, name), int):
                raise ConfigError(f"{name} must be an integer, got {getattr(self, name)!r}")
        if not MIN_CHAIN <= self.n_qubits <= MAX_CHAIN:
            raise ConfigError(
                f"n_qubits must lie in {MIN_CHAIN}..{MAX_CHAIN}, got {self.n_qubits}"
            )
        if self.fock_cutoff < 1:
            raise ConfigError(f"fock_cutoff must be >= 1, got {self.fock_cutoff}")


# JSON key -> dataclass field, with unit suffixes on the JSON side
_GATE_KEYS = {
    "omega_1_per_s": "omega_1",
    "ratio": "ratio",
    "drive_rabi_per_s": "drive_rabi",
    "cavity_time_s": "cavity_time",
    "pulse_duration_s": "pulse_duration",
}
_FEASIBILITY_KEYS = {
    "q_factor": "q_factor",
    "omega_c_hz": "omega_c_hz",
    "gamma_e_per_s": "gamma_e_per_s",
    "g_per_s": "g_per_s",
    "omega_drive_per_s": "omega_drive_per_s",
    "branch_ratio_e_to_0": "branch_ratio_e_to_0",
}
_LINDBLAD_KEYS = {"steps_per_segment": "steps_per_segment"}
_SWEEP_KEYS = {"parameter": "parameter", "values": "values"}
_TOP_SCALARS = ("protocol", "n_qubits", "fock_cutoff", "seed", "out_dir")
_TOP_SECTIONS = ("gate", "feasibility", "lindblad", "sweep")


def _section(data: dict, name: str, key_map: dict, cls):
    raw = data.get(name, {})
    if not isinstance(raw, dict):
        raise ConfigError(f"section {name!r} must be an object, got {type(raw).__name__}")
    unknown = sorted(set(raw) - set(key_map))
    if unknown:
        raise ConfigError(f"unknown key(s) in section {name!r}: {', '.join(unknown)}")
    kwargs = {key_map[k]: v for k, v in raw.items()}
    try:
        return cls(**kwargs)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"section {name!r}: {exc}") from exc


def config_from_dict(data: dict) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError(f"config root must be an object, got {type(data).__name__}")
    unknown = sorted(set(data) - set(_TOP_SCALARS) - set(_TOP_SECTIONS))
    if unknown:
        raise ConfigError(f"unknown top-level key(s): {', '.join(unknown)}")
    kwargs = {k: data[k] for k in _TOP_SCALARS if k in data}
    kwargs["gate"] = _section(data, "gate", _GATE_KEYS, GateParams)
    kwargs["feasibility"] = _section(data, "feasibility", _FEASIBILITY_KEYS, FeasibilityParams)
    kwargs["lindblad"] = _section(data, "lindblad", _LINDBLAD_KEYS, LindbladSettings)
    kwargs["sweep"] = _section(data, "sweep", _SWEEP_KEYS, SweepSettings)
    return RunConfig(**kwargs)


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    return config_from_dict(data)


def config_to_dict(config: RunConfig) -> dict:
    """Inverse of ``config_from_dict``; suitable for a deterministic JSON echo."""
    gate = config.gate
    return {
        "protocol": config.protocol,
        "n_qubits": config.n_qubits,
        "fock_cutoff": config.fock_cutoff,
        "seed": config.seed,
        "out_dir": config.out_dir,
        "gate": {
            "omega_1_per_s": gate.omega_1,
            "ratio": gate.ratio,
            "drive_rabi_per_s": gate.drive_rabi,
            "cavity_time_s": gate.cavity_time,
            "pulse_duration_s": gate.pulse_duration,
        },
        "feasibility": asdict(config.feasibility),
        "lindblad": asdict(config.lindblad),
        "sweep": {"parameter": config.sweep.parameter, "values": list(config.sweep.values)},
    }


def with_updates(config: RunConfig, **updates) -> RunConfig:
    """``dataclasses.replace`` wrapper so callers need not import dataclasses."""
    return replace(config, **updates)
