"""Exact unitary propagation, closed-form exchange dynamics, Lindblad runs.

Unitary segments use exp(-iHt) computed from the Hermitian eigendecomposition
of the segment generator; at the local dimensions involved (at most 27) this
is exact to rounding, so ideal-protocol results carry no integrator error.

Open-system runs integrate the Lindblad master equation

    drho/dt = -i[H, rho] + sum_k ( L_k rho L_k^dag - {L_k^dag L_k, rho}/2 )

with a fixed-step classical 4th-order Runge-Kutta scheme.  Gate segments are
tens of nanoseconds while decay times are microseconds, so the dynamics are
non-stiff at segment scale and a fixed step of duration/2000 leaves the
integrator error far below the decoherence effects under study.  Density
matrix runs are restricted to small composites (two SQUIDs and the cavity);
chain generation is pure-state only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hamiltonians import cavity_coupling_hamiltonian, drive_hamiltonian
from .hilbert import (
    CompositeState,
    DensityMatrix,
    LocalOperator,
    apply_local,
    embedded_matrix,
)
from .protocols import CavitySegment, DriveSegment, PulseSchedule

UNITARITY_TOL = 1e-12
NORM_TOL = 1e-10

# step-size guard: dt * (largest |eigenvalue| of H) <= 1/50
_MAX_PHASE_PER_STEP = 1.0 / 50.0

_LINDBLAD_DIM_LIMIT = 1000
DEFAULT_STEPS_PER_SEGMENT = 2000


@dataclass(frozen=True)
class SegmentPropagator:
    """Local unitary exp(-iHt) for one schedule segment."""

    unitary: LocalOperator
    duration: float
    segment: object | None = None


def propagator(hamiltonian: LocalOperator, t: float) -> SegmentPropagator:
    """exp(-iHt) on H's sites, via Hermitian eigendecomposition."""
    if not hamiltonian.hermitian:
        raise ValueError("propagator requires a Hermitian generator")
    if t < 0:
        raise ValueError(f"duration must be >= 0, got {t}")
    w, v = np.linalg.eigh(hamiltonian.matrix)
    mat = (v * np.exp(-1j * w * t)) @ v.conj().T
    defect = np.max(np.abs(mat.conj().T @ mat - np.eye(mat.shape[0])))
    if defect > UNITARITY_TOL:
        raise ValueError(f"propagator failed unitarity check ({defect:.3e})")
    return SegmentPropagator(
        unitary=LocalOperator(hamiltonian.sites, hamiltonian.local_dims, mat),
        duration=t,
    )


def segment_hamiltonian(segment, fock_cutoff: int) -> LocalOperator:
    """Generator of a schedule segment, built for the given cavity cutoff."""
    if isinstance(segment, DriveSegment):
        return drive_hamiltonian(segment.spec)
    if isinstance(segment, CavitySegment):
        return cavity_coupling_hamiltonian(segment.spec, fock_cutoff)
    raise TypeError(f"unknown segment type {type(segment).__name__}")


def evolve_pure(state: CompositeState, schedule: PulseSchedule) -> CompositeState:
    """Run a schedule segment by segment on a pure state."""
    current = state
    for segment in schedule:
        h = segment_hamiltonian(segment, current.layout.fock_cutoff)
        prop = propagator(h, segment.duration)
        current = apply_local(current, prop.unitary)
        norm = current.norm()
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(
                f"norm drifted to {norm!r} after a unitary segment"
            )
    return current


@dataclass(frozen=True)
class SingleExcitationAmplitudes:
    """Amplitudes of |1,0,0>, |0,1,0>, |0,0,1> during a coupling window."""

    c_100: complex
    c_010: complex
    c_001: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.c_100, self.c_010, self.c_001])


def single_excitation_closed_form(
    omega_1: float, omega_2: float, t: float
) -> SingleExcitationAmplitudes:
    """Exact single-excitation dynamics starting from |1,0,0>.

    With omega = sqrt(omega_1^2 + omega_2^2):

        c_100 = (omega_1^2 cos(omega t) + omega_2^2) / omega^2
        c_010 = omega_1 omega_2 (cos(omega t) - 1) / omega^2
        c_001 = -i (omega_1 / omega) sin(omega t)

    The amplitudes stay normalized for all t.
    """
    if omega_1 <= 0:
        raise ValueError(f"omega_1 must be > 0, got {omega_1}")
    omega = math.hypot(omega_1, omega_2)
    cos_wt = np.cos(omega * t)
    sin_wt = np.sin(omega * t)
    return SingleExcitationAmplitudes(
        c_100=(omega_1**2 * cos_wt + omega_2**2) / omega**2,
        c_010=omega_1 * omega_2 * (cos_wt - 1.0) / omega**2,
        c_001=-1j * (omega_1 / omega) * sin_wt,
    )


def _lindblad_step_count(t_total: float, dt: float) -> int:
    return max(1, math.ceil(t_total / dt))


def _check_step_size(h_full: np.ndarray, dt: float) -> None:
    scale = float(np.max(np.abs(np.linalg.eigvalsh(h_full)))) if h_full.size else 0.0
    if scale > 0 and dt > _MAX_PHASE_PER_STEP / scale:
        raise ValueError(
            f"step size {dt:.3e} too large for Hamiltonian scale {scale:.3e} "
            f"(need dt <= {_MAX_PHASE_PER_STEP / scale:.3e})"
        )


def _lindblad_rhs(rho, drift, drift_dag, l_ops, l_dags):
    # drift = -iH - (1/2) sum L^dag L folds the anticommutator into two
    # matmuls; only the jump terms remain explicit.
    out = drift @ rho + rho @ drift_dag
    for l_op, l_dag in zip(l_ops, l_dags):
        out = out + l_op @ rho @ l_dag
    return out


def _rk4_lindblad(rho, h_full, l_ops, t_total: float, dt: float) -> np.ndarray:
    """Fixed-step RK4 Lindblad integration; rho may carry leading batch axes."""
    n_steps = _lindblad_step_count(t_total, dt)
    step = t_total / n_steps
    l_dags = [l.conj().T for l in l_ops]
    sink = sum((ld @ l for l, ld in zip(l_ops, l_dags)), np.zeros_like(h_full))
    drift = -1j * h_full - 0.5 * sink
    drift_dag = drift.conj().T
    rho = np.array(rho, dtype=complex)
    for _ in range(n_steps):
        k1 = _lindblad_rhs(rho, drift, drift_dag, l_ops, l_dags)
        k2 = _lindblad_rhs(rho + 0.5 * step * k1, drift, drift_dag, l_ops, l_dags)
        k3 = _lindblad_rhs(rho + 0.5 * step * k2, drift, drift_dag, l_ops, l_dags)
        k4 = _lindblad_rhs(rho + step * k3, drift, drift_dag, l_ops, l_dags)
        rho = rho + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return rho


def evolve_lindblad(
    rho0: DensityMatrix,
    hamiltonian: LocalOperator,
    collapse_ops,
    t_total: float,
    dt: float,
) -> DensityMatrix:
    """Integrate the master equation for ``t_total`` with fixed step ``dt``.

    ``rho0`` must live on a full composite layout of dimension <= 1000.  The
    step size must resolve the fastest Hamiltonian phase (dt <= 1/(50 * max
    |eigenvalue|)); trace and Hermiticity are preserved up to integrator
    rounding, not renormalized, so drift is visible to the caller.
    """
    if rho0.layout is None:
        raise ValueError("evolve_lindblad needs a density matrix with a full layout")
    if rho0.dim > _LINDBLAD_DIM_LIMIT:
        raise ValueError(
            f"composite dimension {rho0.dim} exceeds the density-matrix "
            f"limit {_LINDBLAD_DIM_LIMIT}"
        )
    if t_total < 0:
        raise ValueError(f"t_total must be >= 0, got {t_total}")
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    layout = rho0.layout
    h_full = embedded_matrix(hamiltonian, layout)
    _check_step_size(h_full, dt)
    l_full = [embedded_matrix(op, layout) for op in collapse_ops]
    if t_total == 0:
        return DensityMatrix(layout.dims, rho0.matrix.copy(), layout=layout)
    out = _rk4_lindblad(rho0.matrix, h_full, l_full, t_total, dt)
    return DensityMatrix(layout.dims, out, layout=layout)
