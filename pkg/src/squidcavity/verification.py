"""Gate truth tables, fidelities, and cluster-state stabilizer checks."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .evolution import evolve_pure
from .hilbert import (
    SQUID_DIM,
    CompositeState,
    LocalOperator,
    SpaceLayout,
    basis_index,
    basis_state,
    expectation,
)
from .protocols import CavitySegment, DriveSegment, PulseSchedule

COMPUTATIONAL_BASIS = ((0, 0), (0, 1), (1, 0), (1, 1))
CZ_DIAG = np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex)

DEFAULT_ENTRY_TOL = 1e-9
DEFAULT_LEAKAGE_TOL = 1e-10

# X and Z act on the logical {|0>, |1>} pair and leave |e> alone
PAULI_X3 = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=complex)
PAULI_Z3 = np.diag([1.0, -1.0, 1.0]).astype(complex)

_E_POPULATION_WARN = 1e-8
_VACUUM_WARN = 1e-8


def _schedule_squids(schedule: PulseSchedule) -> set[int]:
    squids: set[int] = set()
    for seg in schedule:
        if isinstance(seg, DriveSegment):
            squids.add(seg.spec.target_squid)
        elif isinstance(seg, CavitySegment):
            squids.update((seg.spec.squid_a, seg.spec.squid_b))
    return squids


def computational_propagator(
    schedule: PulseSchedule,
    squid_pair: tuple[int, int] = (0, 1),
    fock_cutoff: int = 2,
) -> tuple[np.ndarray, np.ndarray]:
    """Extract the 4x4 action of a schedule on the computational subspace.

    Column j holds the projection onto (computational x vacuum) of the
    evolved j-th basis input |b1 b2> x |vac>, ordered 00, 01, 10, 11 over
    (first, second) of ``squid_pair``.  Returns (matrix, per-column leakage),
    leakage being the probability that escaped the projected subspace.
    """
    touched = _schedule_squids(schedule)
    if not touched <= set(squid_pair):
        raise ValueError(
            f"schedule touches SQUIDs {sorted(touched - set(squid_pair))} "
            f"outside the pair {squid_pair}"
        )
    layout = SpaceLayout(max(squid_pair) + 1, fock_cutoff)
    out_indices = []
    for bits in COMPUTATIONAL_BASIS:
        levels = [0] * layout.n_squids
        levels[squid_pair[0]], levels[squid_pair[1]] = bits
        out_indices.append(basis_index(layout, levels, 0))
    matrix = np.zeros((4, 4), dtype=complex)
    leakage = np.zeros(4)
    for j, bits in enumerate(COMPUTATIONAL_BASIS):
        levels = [0] * layout.n_squids
        levels[squid_pair[0]], levels[squid_pair[1]] = bits
        final = evolve_pure(basis_state(layout, levels, 0), schedule)
        column = final.amplitudes[out_indices]
        matrix[:, j] = column
        # clamp rounding-level negatives; leakage is a probability
        leakage[j] = max(0.0, 1.0 - float(np.sum(np.abs(column) ** 2)))
    return matrix, leakage


@dataclass
class TruthTableReport:
    """4x4 extracted propagator with phase and leakage diagnostics."""

    matrix: np.ndarray
    phases: np.ndarray
    per_column_leakage: np.ndarray
    leakage: float
    max_entry_error: float
    entry_tol: float
    leakage_tol: float
    passed: bool


def truth_table(
    schedule: PulseSchedule,
    squid_pair: tuple[int, int] = (0, 1),
    fock_cutoff: int = 2,
    entry_tol: float = DEFAULT_ENTRY_TOL,
    leakage_tol: float = DEFAULT_LEAKAGE_TOL,
) -> TruthTableReport:
    """Compare a schedule's computational action against diag(1, 1, 1, -1).

    Phases are normalized to the first nonzero diagonal entry, so the report
    is insensitive to a global phase; the ideal gate reads (0, 0, 0, pi).
    """
    matrix, leakage = computational_propagator(schedule, squid_pair, fock_cutoff)
    ref = 1.0 + 0j
    for j in range(4):
        if abs(matrix[j, j]) > 1e-12:
            ref = matrix[j, j] / abs(matrix[j, j])
            break
    normalized = matrix * np.conj(ref)
    phases = np.angle(np.where(np.abs(np.diag(normalized)) > 1e-12, np.diag(normalized), 1.0))
    # represent angles in [-pi/2, 3pi/2) so the sign flip reads +pi, never
    # -pi, whichever side of the branch cut rounding lands on
    phases = np.mod(phases + np.pi / 2, 2 * np.pi) - np.pi / 2
    max_entry_error = float(np.max(np.abs(normalized - CZ_DIAG)))
    max_leakage = float(np.max(leakage))
    passed = max_entry_error <= entry_tol and max_leakage <= leakage_tol
    return TruthTableReport(
        matrix=matrix,
        phases=phases,
        per_column_leakage=leakage,
        leakage=max_leakage,
        max_entry_error=max_entry_error,
        entry_tol=entry_tol,
        leakage_tol=leakage_tol,
        passed=passed,
    )


def average_gate_fidelity(u_actual: np.ndarray, u_ideal: np.ndarray) -> float:
    """(|Tr(U_ideal^dag U_actual)|^2 + d) / (d(d+1)); 1 iff equal up to phase."""
    u_actual = np.asarray(u_actual, dtype=complex)
    u_ideal = np.asarray(u_ideal, dtype=complex)
    if u_actual.shape != u_ideal.shape or u_actual.ndim != 2 or u_actual.shape[0] != u_actual.shape[1]:
        raise ValueError(
            f"need two square matrices of equal shape, got {u_actual.shape} and {u_ideal.shape}"
        )
    d = u_actual.shape[0]
    overlap = abs(np.trace(u_ideal.conj().T @ u_actual)) ** 2
    return float((overlap + d) / (d * (d + 1)))


def state_fidelity(psi: CompositeState, phi: CompositeState) -> float:
    """|<psi|phi>|^2 for two states on the same layout."""
    if psi.layout != phi.layout:
        raise ValueError(f"layout mismatch: {psi.layout} vs {phi.layout}")
    for name, state in (("first", psi), ("second", phi)):
        norm = state.norm()
        if abs(norm - 1.0) > 1e-8:
            raise ValueError(f"{name} state is not normalized (norm {norm!r})")
    return float(abs(np.vdot(psi.amplitudes, phi.amplitudes)) ** 2)


def cavity_vacuum_population(state: CompositeState) -> float:
    """Probability of the cavity digit being 0."""
    psi = state.amplitudes.reshape(state.layout.dims)
    return float(np.sum(np.abs(psi[..., 0]) ** 2))


def _upper_level_population(state: CompositeState) -> float:
    psi = state.amplitudes.reshape(state.layout.dims)
    logical = psi[(slice(0, 2),) * state.layout.n_squids]
    return 1.0 - float(np.sum(np.abs(logical) ** 2))


def chain_stabilizer(n_qubits: int, i: int) -> LocalOperator:
    """Generator K_i = Z_{i-1} X_i Z_{i+1} (boundary terms drop a neighbour)."""
    if not 0 <= i < n_qubits:
        raise ValueError(f"generator index {i} outside 0..{n_qubits - 1}")
    sites = []
    mats = []
    if i > 0:
        sites.append(i - 1)
        mats.append(PAULI_Z3)
    sites.append(i)
    mats.append(PAULI_X3)
    if i < n_qubits - 1:
        sites.append(i + 1)
        mats.append(PAULI_Z3)
    matrix = mats[0]
    for m in mats[1:]:
        matrix = np.kron(matrix, m)
    return LocalOperator(
        sites=tuple(sites),
        local_dims=(SQUID_DIM,) * len(sites),
        matrix=matrix,
        hermitian=True,
    )


@dataclass
class StabilizerReport:
    expectations: np.ndarray
    min_expectation: float
    cavity_vacuum_population: float


def stabilizer_expectations(state: CompositeState, n_qubits: int) -> StabilizerReport:
    """<K_i> for every chain generator; all +1 on the exact cluster state."""
    if state.layout.n_squids != n_qubits:
        raise ValueError(
            f"state has {state.layout.n_squids} SQUIDs, expected {n_qubits}"
        )
    vacuum = cavity_vacuum_population(state)
    if 1.0 - vacuum > _VACUUM_WARN:
        warnings.warn(
            f"cavity vacuum population is only {vacuum!r}; stabilizers assume "
            "a disentangled cavity",
            stacklevel=2,
        )
    e_pop = _upper_level_population(state)
    if e_pop > _E_POPULATION_WARN:
        warnings.warn(
            f"|e> population {e_pop:.3e} exceeds {_E_POPULATION_WARN:.0e}; "
            "stabilizers act as identity on |e>",
            stacklevel=2,
        )
    values = np.array(
        [expectation(state, chain_stabilizer(n_qubits, i)).real for i in range(n_qubits)]
    )
    return StabilizerReport(
        expectations=values,
        min_expectation=float(values.min()),
        cavity_vacuum_population=vacuum,
    )
