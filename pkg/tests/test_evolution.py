import math

import numpy as np
import pytest

from squidcavity import (
    CavityCouplingSpec,
    CavitySegment,
    CompositeState,
    DensityMatrix,
    DriveSpec,
    DriveSegment,
    LocalOperator,
    PulseSchedule,
    SpaceLayout,
    apply_local,
    basis_index,
    basis_state,
    cavity_coupling_hamiltonian,
    collapse_operators_from_rates,
    drive_hamiltonian,
    evolve_lindblad,
    evolve_pure,
    excitation_number,
    expectation,
    propagator,
    single_excitation_closed_form,
    state_fidelity,
    tensor_state,
)


def _coupling_segment(omega_1, omega_2, duration):
    return CavitySegment(CavityCouplingSpec(0, 1, omega_1, omega_2), duration)


def test_propagator_zero_time_is_identity():
    h = drive_hamiltonian(DriveSpec(0, (0, 1), 1.0))
    prop = propagator(h, 0.0)
    np.testing.assert_allclose(prop.unitary.matrix, np.eye(3), atol=1e-15)


def test_propagator_rejects_non_hermitian():
    op = LocalOperator((0,), (3,), np.diag([1.0, 2.0, 3.0]) + np.triu(np.ones(3), 1))
    with pytest.raises(ValueError):
        propagator(op, 1.0)
    with pytest.raises(ValueError):
        propagator(drive_hamiltonian(DriveSpec(0, (0, 1), 1.0)), -1.0)


def test_propagator_unitary_and_composes():
    h = cavity_coupling_hamiltonian(CavityCouplingSpec(0, 1, 1.3, 0.7), n_max=2)
    u1 = propagator(h, 0.4).unitary.matrix
    u2 = propagator(h, 1.1).unitary.matrix
    u12 = propagator(h, 1.5).unitary.matrix
    assert np.max(np.abs(u1.conj().T @ u1 - np.eye(27))) <= 1e-12
    assert np.max(np.abs(u2 @ u1 - u12)) <= 1e-10


def test_drive_quarter_period_rotation():
    # at angle pi/2 with zero phase: |0> -> -|1>, |1> -> |0>
    rabi = 2.0
    h = drive_hamiltonian(DriveSpec(0, (0, 1), rabi, phase=0.0))
    u = propagator(h, (math.pi / 2) / rabi).unitary.matrix
    np.testing.assert_allclose(u[:, 0], [0, -1, 0], atol=1e-12)
    np.testing.assert_allclose(u[:, 1], [1, 0, 0], atol=1e-12)
    np.testing.assert_allclose(u[:, 2], [0, 0, 1], atol=1e-12)


def test_coupling_window_returns_input_at_default_point():
    # omega_2 = sqrt(3) omega_1 and omega_1 t = pi: |1,0,0> comes back with +1
    omega_1 = 2.0
    h = cavity_coupling_hamiltonian(
        CavityCouplingSpec(0, 1, omega_1, math.sqrt(3) * omega_1), n_max=2
    )
    layout = SpaceLayout(2, fock_cutoff=2)
    state = basis_state(layout, (1, 0), 0)
    out = apply_local(state, propagator(h, math.pi / omega_1).unitary)
    i100 = basis_index(layout, (1, 0), 0)
    np.testing.assert_allclose(out.amplitudes[i100], 1.0, atol=1e-12)


def test_evolve_pure_empty_schedule_is_identity():
    layout = SpaceLayout(2)
    state = basis_state(layout, (1, 1))
    out = evolve_pure(state, PulseSchedule())
    np.testing.assert_array_equal(out.amplitudes, state.amplitudes)


def test_evolve_pure_pi_over_4_prepares_superposition():
    rabi = 3.0
    seg = DriveSegment(DriveSpec(0, (0, 1), rabi), (math.pi / 4) / rabi)
    layout = SpaceLayout(1, fock_cutoff=1)
    out = evolve_pure(basis_state(layout, (1,)), PulseSchedule((seg,)))
    plus = tensor_state([np.array([1, 1, 0]) / math.sqrt(2), (1, 0)])
    assert state_fidelity(out, plus) >= 1 - 1e-12


def test_single_excitation_closed_form_anchors():
    amps = single_excitation_closed_form(1.0, 2.0, 0.0)
    np.testing.assert_allclose(amps.as_array(), [1, 0, 0], atol=1e-15)
    # the gate's operating point: a full 2*pi of omega returns the input
    omega_1 = 1.7
    amps = single_excitation_closed_form(omega_1, math.sqrt(3) * omega_1, math.pi / omega_1)
    np.testing.assert_allclose(amps.as_array(), [1, 0, 0], atol=1e-12)
    # symmetric couplings at half period: complete transfer with a sign
    omega = math.hypot(3.0, 3.0)
    amps = single_excitation_closed_form(3.0, 3.0, math.pi / omega)
    np.testing.assert_allclose(amps.as_array(), [0, -1, 0], atol=1e-12)
    with pytest.raises(ValueError):
        single_excitation_closed_form(0.0, 1.0, 1.0)


def test_single_excitation_normalized():
    rng = np.random.default_rng(2)
    for _ in range(25):
        omega_1, omega_2 = rng.uniform(0.1, 5.0, size=2)
        t = rng.uniform(0.0, 20.0)
        amps = single_excitation_closed_form(omega_1, omega_2, t)
        np.testing.assert_allclose(np.sum(np.abs(amps.as_array()) ** 2), 1.0, atol=1e-12)


def test_closed_form_matches_numerical_evolution():
    rng = np.random.default_rng(8)
    layout = SpaceLayout(2, fock_cutoff=2)
    start = basis_state(layout, (1, 0), 0)
    indices = [
        basis_index(layout, (1, 0), 0),
        basis_index(layout, (0, 1), 0),
        basis_index(layout, (0, 0), 1),
    ]
    for _ in range(2):
        omega_1, omega_2 = rng.uniform(0.3, 3.0, size=2)
        omega = math.hypot(omega_1, omega_2)
        for t in np.linspace(0.0, 4 * math.pi / omega, 40):
            seg = _coupling_segment(omega_1, omega_2, t)
            out = evolve_pure(start, PulseSchedule((seg,)))
            want = single_excitation_closed_form(omega_1, omega_2, t).as_array()
            assert np.max(np.abs(out.amplitudes[indices] - want)) <= 1e-8


def test_dark_state_is_stationary():
    omega_1, omega_2 = 1.1, 2.3
    omega = math.hypot(omega_1, omega_2)
    layout = SpaceLayout(2, fock_cutoff=2)
    amp = np.zeros(layout.total_dim, dtype=complex)
    amp[basis_index(layout, (1, 0), 0)] = omega_2 / omega
    amp[basis_index(layout, (0, 1), 0)] = -omega_1 / omega
    dark = CompositeState(layout, amp)
    for t in (0.37, 1.0, 8.5):
        out = evolve_pure(dark, PulseSchedule((_coupling_segment(omega_1, omega_2, t),)))
        assert state_fidelity(out, dark) >= 1 - 1e-10


def test_excitation_number_conserved():
    rng = np.random.default_rng(4)
    layout = SpaceLayout(2, fock_cutoff=2)
    amp = rng.normal(size=27) + 1j * rng.normal(size=27)
    state = CompositeState(layout, amp / np.linalg.norm(amp))
    n_op = excitation_number(2)
    before = expectation(state, n_op).real
    out = evolve_pure(state, PulseSchedule((_coupling_segment(0.9, 1.7, 2.2),)))
    after = expectation(out, n_op).real
    assert abs(after - before) <= 1e-10


def _zero_cavity_hamiltonian(n_max):
    return LocalOperator((-1,), (n_max + 1,), np.zeros((n_max + 1, n_max + 1)), hermitian=True)


def test_lindblad_photon_decay_matches_exponential():
    k = 5e4
    layout = SpaceLayout(1, fock_cutoff=2)
    rho0 = DensityMatrix.from_pure(basis_state(layout, (0,), photons=1))
    ops = collapse_operators_from_rates(k, 0.0, 0.5, n_max=2, squids=())
    t = 2e-5  # one cavity lifetime
    rho = evolve_lindblad(rho0, _zero_cavity_hamiltonian(2), ops, t, dt=t / 500)
    diag = np.real(np.diag(rho.matrix)).reshape(3, 3)
    vacuum = diag[:, 0].sum()
    np.testing.assert_allclose(vacuum, 1 - math.exp(-k * t), atol=1e-6)
    assert abs(rho.trace() - 1.0) <= 1e-8
    assert rho.hermiticity_defect() <= 1e-10
    assert rho.min_eigenvalue() >= -1e-8


def test_lindblad_zero_rates_matches_pure_evolution():
    layout = SpaceLayout(2, fock_cutoff=2)
    seg = _coupling_segment(1.8e8, 1.1e8, 1.2e-8)
    state = basis_state(layout, (1, 0), 0)
    pure = evolve_pure(state, PulseSchedule((seg,)))
    h = cavity_coupling_hamiltonian(seg.spec, 2)
    rho = evolve_lindblad(
        DensityMatrix.from_pure(state), h, [], seg.duration, dt=seg.duration / 2000
    )
    overlap = np.real(np.vdot(pure.amplitudes, rho.matrix @ pure.amplitudes))
    assert overlap >= 1 - 1e-8
    assert abs(rho.trace() - 1.0) <= 1e-8


def test_lindblad_guards():
    layout = SpaceLayout(2, fock_cutoff=2)
    rho0 = DensityMatrix.from_pure(basis_state(layout, (0, 0)))
    h = cavity_coupling_hamiltonian(CavityCouplingSpec(0, 1, 1.8e8, 1.8e8), 2)
    # step too coarse for the Hamiltonian scale
    with pytest.raises(ValueError, match="step size"):
        evolve_lindblad(rho0, h, [], 1e-8, dt=1e-9)
    with pytest.raises(ValueError):
        evolve_lindblad(rho0, h, [], -1.0, dt=1e-12)
    with pytest.raises(ValueError):
        evolve_lindblad(rho0, h, [], 1e-9, dt=0.0)
    # no layout attached
    bare = DensityMatrix((3, 3, 3), rho0.matrix)
    with pytest.raises(ValueError, match="layout"):
        evolve_lindblad(bare, h, [], 1e-9, dt=1e-12)
    # composite dimension above the density-matrix budget
    big = SpaceLayout(2, fock_cutoff=120)
    rho_big = DensityMatrix.from_pure(basis_state(big, (0, 0)))
    with pytest.raises(ValueError, match="dimension"):
        evolve_lindblad(rho_big, _zero_cavity_hamiltonian(120), [], 1e-9, dt=1e-12)


def test_lindblad_zero_duration_returns_copy():
    layout = SpaceLayout(1, fock_cutoff=1)
    rho0 = DensityMatrix.from_pure(basis_state(layout, (1,)))
    out = evolve_lindblad(rho0, _zero_cavity_hamiltonian(1), [], 0.0, dt=1.0)
    np.testing.assert_array_equal(out.matrix, rho0.matrix)
    assert out.matrix is not rho0.matrix
