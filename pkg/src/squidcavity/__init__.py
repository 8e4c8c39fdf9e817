"""Simulator for cavity-mediated controlled-phase gates between three-level
SQUIDs and the cluster-state chains they generate.

Conventions fixed across the package: SQUID levels |0>, |1>, |e> are indices
0, 1, 2; tensor factors are ordered SQUID 0, SQUID 1, ..., cavity last; the
cavity factor can be addressed as site -1.
"""

from .config import (
    ConfigError,
    LindbladSettings,
    RunConfig,
    SweepSettings,
    config_from_dict,
    config_to_dict,
    load_config,
    with_updates,
)
from .decoherence import GateProcessResult, fidelity_sweep, qcpg_lindblad_fidelity
from .evolution import (
    DEFAULT_STEPS_PER_SEGMENT,
    SegmentPropagator,
    SingleExcitationAmplitudes,
    evolve_lindblad,
    evolve_pure,
    propagator,
    segment_hamiltonian,
    single_excitation_closed_form,
)
from .feasibility import (
    ANCHORS,
    FeasibilityReport,
    feasibility_report,
    round_to_sig_figures,
)
from .hamiltonians import (
    CavityCouplingSpec,
    DriveSpec,
    FeasibilityParams,
    annihilation,
    cavity_coupling_hamiltonian,
    collapse_operators,
    collapse_operators_from_rates,
    drive_hamiltonian,
    excitation_number,
)
from .hilbert import (
    LEVEL_0,
    LEVEL_1,
    LEVEL_E,
    SQUID_DIM,
    CompositeState,
    DensityMatrix,
    LocalOperator,
    SpaceLayout,
    apply_local,
    basis_index,
    basis_state,
    embedded_matrix,
    expectation,
    reduced_density,
    tensor_state,
)
from .protocols import (
    DEFAULT_DRIVE_RABI,
    CavitySegment,
    DriveSegment,
    GateParams,
    PulseSchedule,
    chain_initial_state,
    cluster_chain_schedule,
    cluster_state_oracle,
    gate_condition_residuals,
    prepare_superposition,
    qcpg_schedule,
    rotation_pulse,
    schedule_to_dicts,
    schedule_to_json,
    segment_to_dict,
)
from .verification import (
    CZ_DIAG,
    StabilizerReport,
    TruthTableReport,
    average_gate_fidelity,
    cavity_vacuum_population,
    chain_stabilizer,
    computational_propagator,
    stabilizer_expectations,
    state_fidelity,
    truth_table,
)

__version__ = "0.1.0"

__all__ = [
    "ANCHORS",
    "CZ_DIAG",
    "CavityCouplingSpec",
    "CavitySegment",
    "CompositeState",
    "ConfigError",
    "DEFAULT_DRIVE_RABI",
    "DEFAULT_STEPS_PER_SEGMENT",
    "DensityMatrix",
    "DriveSegment",
    "DriveSpec",
    "FeasibilityParams",
    "FeasibilityReport",
    "GateParams",
    "GateProcessResult",
    "LEVEL_0",
    "LEVEL_1",
    "LEVEL_E",
    "LindbladSettings",
    "LocalOperator",
    "PulseSchedule",
    "RunConfig",
    "SQUID_DIM",
    "SegmentPropagator",
    "SingleExcitationAmplitudes",
    "SpaceLayout",
    "StabilizerReport",
    "SweepSettings",
    "TruthTableReport",
    "annihilation",
    "apply_local",
    "average_gate_fidelity",
    "basis_index",
    "basis_state",
    "cavity_coupling_hamiltonian",
    "cavity_vacuum_population",
    "chain_initial_state",
    "chain_stabilizer",
    "cluster_chain_schedule",
    "cluster_state_oracle",
    "collapse_operators",
    "collapse_operators_from_rates",
    "computational_propagator",
    "config_from_dict",
    "config_to_dict",
    "drive_hamiltonian",
    "embedded_matrix",
    "evolve_lindblad",
    "evolve_pure",
    "excitation_number",
    "expectation",
    "feasibility_report",
    "fidelity_sweep",
    "gate_condition_residuals",
    "load_config",
    "prepare_superposition",
    "propagator",
    "qcpg_lindblad_fidelity",
    "qcpg_schedule",
    "reduced_density",
    "rotation_pulse",
    "round_to_sig_figures",
    "schedule_to_dicts",
    "schedule_to_json",
    "segment_hamiltonian",
    "segment_to_dict",
    "single_excitation_closed_form",
    "stabilizer_expectations",
    "state_fidelity",
    "tensor_state",
    "truth_table",
    "with_updates",
    "__version__",
]
