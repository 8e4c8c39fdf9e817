"""Pulse schedules: rotations, the three-step controlled-phase gate, chains.

The controlled-phase gate between a control and a target SQUID is a sandwich
of three sequential segments:

1. classical pulse on the target, |1> -> |e>,
2. both SQUIDs coupled resonantly to the vacuum cavity for time t_c, with the
   control coupling at omega_1 and the target at omega_2 = ratio * omega_1,
3. classical pulse on the target, |e> -> |1>.

With ratio = sqrt(3) and omega_1 * t_c = pi the cavity interaction returns
every computational input to itself, imprinting a sign only on
|1>_control |e>_target, so the net gate is diag(1, 1, 1, -1) and the cavity
ends back in vacuum.  More generally any (t_c, ratio) obeying

    cos(omega_1 * t_c) = -1      and      omega * t_c = 0 (mod 2*pi)

works, where omega = omega_1 * sqrt(1 + ratio^2); the builder warns when a
schedule violates either condition (it still builds it, which is how the
negative tests exercise broken gates).

Pulse phase convention, derived once and locked in by regression tests: for
the ordered transition (|1>, |e>) a quarter-period pulse maps

    phase pi :  |1> -> +|e>        (step 1)
    phase 0  :  |e> -> +|1>        (step 3)

A wrong choice here flips the sign onto the wrong computational state and
turns the gate into diag(1, -1, 1, 1).

Cluster chains start from every SQUID in |1>; a rotation by pi/4 then
prepares (|0> + |1>)/sqrt(2) on each site with coefficient exactly +1 (from
|0> the same pulse would give the sign-flipped superposition), and the gate
is applied to each neighbouring pair in turn.
"""

from __future__ import annotations

import itertools
import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .hamiltonians import CavityCouplingSpec, DriveSpec
from .hilbert import LEVEL_0, LEVEL_1, LEVEL_E, CompositeState, SpaceLayout, basis_index

# operating-point default for classical pulses (rad/s)
DEFAULT_DRIVE_RABI = 8.5e7

STEP1_PHASE = math.pi
STEP3_PHASE = 0.0

_GATE_CONDITION_TOL = 1e-6


@dataclass(frozen=True)
class DriveSegment:
    spec: DriveSpec
    duration: float


@dataclass(frozen=True)
class CavitySegment:
    spec: CavityCouplingSpec
    duration: float


@dataclass(frozen=True)
class PulseSchedule:
    """Strictly sequential list of timed segments."""

    segments: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        for seg in self.segments:
            if seg.duration < 0:
                raise ValueError(f"segment duration must be >= 0, got {seg.duration}")

    @property
    def total_duration(self) -> float:
        return sum(seg.duration for seg in self.segments)

    def __add__(self, other: "PulseSchedule") -> "PulseSchedule":
        return PulseSchedule(self.segments + other.segments)

    def __iter__(self):
        return iter(self.segments)

    def __len__(self) -> int:
        return len(self.segments)


@dataclass(frozen=True)
class GateParams:
    """Rates and timings of one controlled-phase gate.

    ``cavity_time`` and ``pulse_duration`` default to the minimal-solution
    values pi/omega_1 and pi/(2*drive_rabi); override them to build detuned
    or deliberately broken schedules.
    """

    omega_1: float = 1.8e8
    ratio: float = math.sqrt(3)
    drive_rabi: float = DEFAULT_DRIVE_RABI
    cavity_time: float | None = None
    pulse_duration: float | None = None

    def __post_init__(self):
        if self.omega_1 <= 0:
            raise ValueError(f"omega_1 must be > 0, got {self.omega_1}")
        if self.drive_rabi <= 0:
            raise ValueError(f"drive_rabi must be > 0, got {self.drive_rabi}")

    @property
    def omega_2(self) -> float:
        return self.ratio * self.omega_1

    @property
    def resolved_cavity_time(self) -> float:
        return self.cavity_time if self.cavity_time is not None else math.pi / self.omega_1

    @property
    def resolved_pulse_duration(self) -> float:
        if self.pulse_duration is not None:
            return self.pulse_duration
        return math.pi / (2.0 * self.drive_rabi)


def gate_condition_residuals(params: GateParams) -> tuple[float, float]:
    """How far (cavity_time, ratio) sit from an exact controlled-phase point.

    Returns |cos(omega_1 t) + 1| and the circular distance of omega * t from
    a multiple of 2*pi; both vanish for a working gate.
    """
    t = params.resolved_cavity_time
    phase_residual = abs(math.cos(params.omega_1 * t) + 1.0)
    omega_t = math.hypot(params.omega_1, params.omega_2) * t
    wrapped = math.remainder(omega_t, 2.0 * math.pi)
    return phase_residual, abs(wrapped)


def rotation_pulse(
    site: int,
    transition: tuple[int, int],
    angle: float,
    phase: float = 0.0,
    rabi: float = DEFAULT_DRIVE_RABI,
) -> PulseSchedule:
    """Single-segment schedule rotating the given transition by ``angle``."""
    if not 0.0 <= angle < 2.0 * math.pi:
        raise ValueError(f"angle must lie in [0, 2*pi), got {angle}")
    spec = DriveSpec(target_squid=site, transition=transition, rabi=rabi, phase=phase)
    return PulseSchedule((DriveSegment(spec, duration=angle / rabi),))


def prepare_superposition(site: int, rabi: float = DEFAULT_DRIVE_RABI) -> PulseSchedule:
    """Pulse taking |1> to (|0> + |1>)/sqrt(2) exactly.

    Chain preparation declares |1> as the initial level; from |0> the same
    rotation gives (|0> - |1>)/sqrt(2) instead.
    """
    return rotation_pulse(site, (LEVEL_0, LEVEL_1), math.pi / 4.0, 0.0, rabi)


def qcpg_schedule(
    control_squid: int, target_squid: int, params: GateParams = GateParams()
) -> PulseSchedule:
    """Three-step controlled-phase gate; diag(1, 1, 1, -1) on (control, target)."""
    if control_squid == target_squid:
        raise ValueError("control and target must be distinct SQUIDs")
    if params.ratio <= 0:
        raise ValueError(f"coupling ratio must be > 0, got {params.ratio}")
    phase_res, mod_res = gate_condition_residuals(params)
    if phase_res > _GATE_CONDITION_TOL or mod_res > _GATE_CONDITION_TOL:
        warnings.warn(
            "gate conditions violated: |cos(omega_1 t)+1| = "
            f"{phase_res:.3e}, omega*t mod 2pi = {mod_res:.3e}; "
            "the schedule will not realize a clean controlled-phase gate",
            stacklevel=2,
        )
    pulse_t = params.resolved_pulse_duration
    up = DriveSegment(
        DriveSpec(target_squid, (LEVEL_1, LEVEL_E), params.drive_rabi, STEP1_PHASE),
        duration=pulse_t,
    )
    exchange = CavitySegment(
        CavityCouplingSpec(
            squid_a=control_squid,
            squid_b=target_squid,
            omega_1=params.omega_1,
            omega_2=params.omega_2,
        ),
        duration=params.resolved_cavity_time,
    )
    down = DriveSegment(
        DriveSpec(target_squid, (LEVEL_1, LEVEL_E), params.drive_rabi, STEP3_PHASE),
        duration=pulse_t,
    )
    return PulseSchedule((up, exchange, down))


def cluster_chain_schedule(n_qubits: int, params: GateParams = GateParams()) -> PulseSchedule:
    """Superposition pulses on every site, then a gate on each adjacent pair."""
    if n_qubits < 2:
        raise ValueError(f"cluster chain needs at least 2 qubits, got {n_qubits}")
    schedule = PulseSchedule()
    for site in range(n_qubits):
        schedule = schedule + prepare_superposition(site, params.drive_rabi)
    for site in range(n_qubits - 1):
        schedule = schedule + qcpg_schedule(site, site + 1, params)
    return schedule


def chain_initial_state(n_qubits: int, fock_cutoff: int = 2) -> CompositeState:
    """All SQUIDs in |1>, cavity in vacuum: the declared chain starting point."""
    layout = SpaceLayout(n_qubits, fock_cutoff)
    return _basis(layout, (LEVEL_1,) * n_qubits)


def cluster_state_oracle(n_qubits: int, fock_cutoff: int = 2) -> CompositeState:
    """Direct construction of the linear cluster state, cavity in vacuum.

    Amplitude of bit string b is 2^(-N/2) * (-1)^(sum_i b_i b_{i+1}): equal
    weights with a sign flip for every adjacent |11| pair, exactly what a
    chain of controlled-phase gates on uniform superpositions produces.
    """
    if n_qubits < 2:
        raise ValueError(f"cluster state needs at least 2 qubits, got {n_qubits}")
    layout = SpaceLayout(n_qubits, fock_cutoff)
    amp = np.zeros(layout.total_dim, dtype=complex)
    scale = 2.0 ** (-n_qubits / 2.0)
    for bits in itertools.product((0, 1), repeat=n_qubits):
        sign = (-1) ** sum(bits[i] * bits[i + 1] for i in range(n_qubits - 1))
        amp[basis_index(layout, bits, 0)] = sign * scale
    return CompositeState(layout, amp)


def _basis(layout: SpaceLayout, levels) -> CompositeState:
    amp = np.zeros(layout.total_dim, dtype=complex)
    amp[basis_index(layout, levels, 0)] = 1.0
    return CompositeState(layout, amp)


def segment_to_dict(segment) -> dict:
    """One serializable row per segment: kind, sites, rates, duration."""
    if isinstance(segment, DriveSegment):
        a, b = segment.spec.transition
        return {
            "kind": "drive",
            "sites": [segment.spec.target_squid],
            "transition": f"{'01e'[a]}-{'01e'[b]}",
            "rabi_per_s": segment.spec.rabi,
            "phase_rad": segment.spec.phase,
            "duration_s": segment.duration,
        }
    if isinstance(segment, CavitySegment):
        return {
            "kind": "cavity",
            "sites": [segment.spec.squid_a, segment.spec.squid_b, "cavity"],
            "omega_1_per_s": segment.spec.omega_1,
            "omega_2_per_s": segment.spec.omega_2,
            "duration_s": segment.duration,
        }
    raise TypeError(f"unknown segment type {type(segment).__name__}")


def schedule_to_dicts(schedule: PulseSchedule) -> list[dict]:
    return [segment_to_dict(seg) for seg in schedule]


def schedule_to_json(schedule: PulseSchedule) -> str:
    return json.dumps(schedule_to_dicts(schedule), indent=2, sort_keys=True)
