import math

import numpy as np
import pytest

from squidcavity import (
    CavityCouplingSpec,
    DriveSpec,
    FeasibilityParams,
    SpaceLayout,
    annihilation,
    basis_index,
    cavity_coupling_hamiltonian,
    collapse_operators,
    collapse_operators_from_rates,
    drive_hamiltonian,
    excitation_number,
)


def test_drive_spec_validation():
    with pytest.raises(ValueError):
        DriveSpec(0, (1, 1), 1.0)  # transition levels must differ
    with pytest.raises(ValueError):
        DriveSpec(0, (1, 3), 1.0)
    with pytest.raises(ValueError):
        DriveSpec(0, (0, 1), -1.0)


def test_drive_hamiltonian_matrix_elements():
    spec = DriveSpec(0, (1, 2), rabi=2.0, phase=0.7)
    h = drive_hamiltonian(spec)
    assert h.hermitian
    assert h.sites == (0,)
    np.testing.assert_allclose(h.matrix[1, 2], 2j * np.exp(0.7j))
    np.testing.assert_allclose(h.matrix[2, 1], -2j * np.exp(-0.7j))
    # untouched level stays decoupled
    assert np.all(h.matrix[0, :] == 0) and np.all(h.matrix[:, 0] == 0)


def test_drive_hamiltonian_zero_rabi_is_zero():
    h = drive_hamiltonian(DriveSpec(0, (0, 1), rabi=0.0))
    assert np.all(h.matrix == 0)


def test_annihilation_matrix():
    a = annihilation(2)
    expected = np.array([[0, 1, 0], [0, 0, math.sqrt(2)], [0, 0, 0]])
    np.testing.assert_allclose(a, expected)
    # a |n> = sqrt(n) |n-1>
    for n in range(1, 3):
        ket = np.zeros(3)
        ket[n] = 1.0
        out = a @ ket
        np.testing.assert_allclose(out[n - 1], math.sqrt(n))
    with pytest.raises(ValueError):
        annihilation(-1)


def test_coupling_spec_validation():
    with pytest.raises(ValueError):
        CavityCouplingSpec(0, 0, 1.0, 1.0)
    with pytest.raises(ValueError):
        CavityCouplingSpec(0, 1, -1.0, 1.0)
    spec = CavityCouplingSpec(0, 1, 3.0, 4.0)
    np.testing.assert_allclose(spec.omega, 5.0)


def test_cavity_coupling_single_excitation_elements():
    omega_1, omega_2 = 1.5, 2.5
    h = cavity_coupling_hamiltonian(CavityCouplingSpec(0, 1, omega_1, omega_2), n_max=2)
    assert h.hermitian
    assert h.sites == (0, 1, -1)
    layout = SpaceLayout(2, fock_cutoff=2)
    i100 = basis_index(layout, (1, 0), 0)
    i010 = basis_index(layout, (0, 1), 0)
    i001 = basis_index(layout, (0, 0), 1)
    # the coupling exchanges |1>_squid with a cavity photon
    np.testing.assert_allclose(h.matrix[i001, i100], omega_1)
    np.testing.assert_allclose(h.matrix[i001, i010], omega_2)
    np.testing.assert_allclose(h.matrix[i100, i001], omega_1)
    # |e> does not couple
    ie00 = basis_index(layout, (2, 0), 0)
    assert np.all(h.matrix[ie00, :] == 0)


def test_cavity_coupling_needs_photon_level():
    with pytest.raises(ValueError):
        cavity_coupling_hamiltonian(CavityCouplingSpec(0, 1, 1.0, 1.0), n_max=0)


def test_excitation_number_diagonal():
    n_op = excitation_number(2)
    assert np.all(n_op.matrix == np.diag(np.diag(n_op.matrix)))
    layout = SpaceLayout(2, fock_cutoff=2)
    diag = np.real(np.diag(n_op.matrix))
    assert diag[basis_index(layout, (1, 1), 2)] == 4.0
    # |e> carries no excitation in this counting
    assert diag[basis_index(layout, (2, 0), 0)] == 0.0


def test_excitation_number_commutes_with_coupling():
    h = cavity_coupling_hamiltonian(CavityCouplingSpec(0, 1, 1.0, 2.0), n_max=2)
    n_op = excitation_number(2)
    comm = h.matrix @ n_op.matrix - n_op.matrix @ h.matrix
    assert np.max(np.abs(comm)) <= 1e-12


def test_feasibility_params_defaults_and_validation():
    params = FeasibilityParams()
    np.testing.assert_allclose(params.cavity_decay_per_s, 5e4)
    with pytest.raises(ValueError):
        FeasibilityParams(q_factor=0)
    with pytest.raises(ValueError):
        FeasibilityParams(gamma_e_per_s=-1)
    with pytest.raises(ValueError):
        FeasibilityParams(branch_ratio_e_to_0=1.5)


def test_collapse_operators_count_and_rates():
    ops = collapse_operators_from_rates(4.0, 9.0, 0.5, n_max=2)
    # cavity + (e->0, e->1) per SQUID
    assert len(ops) == 5
    cavity = ops[0]
    assert cavity.sites == (-1,)
    np.testing.assert_allclose(cavity.matrix, 2.0 * annihilation(2))
    e0 = ops[1]
    np.testing.assert_allclose(e0.matrix[0, 2], math.sqrt(4.5))


def test_collapse_operators_drop_zero_rates():
    assert len(collapse_operators_from_rates(0.0, 9.0, 0.5, n_max=2)) == 4
    assert len(collapse_operators_from_rates(4.0, 0.0, 0.5, n_max=2)) == 1
    assert len(collapse_operators_from_rates(4.0, 9.0, 1.0, n_max=2)) == 3
    assert len(collapse_operators_from_rates(0.0, 0.0, 0.5, n_max=2)) == 0
    assert len(collapse_operators_from_rates(4.0, 9.0, 0.5, n_max=2, squids=())) == 1
    with pytest.raises(ValueError):
        collapse_operators_from_rates(-1.0, 0.0, 0.5, n_max=2)
    with pytest.raises(ValueError):
        collapse_operators_from_rates(1.0, 1.0, 2.0, n_max=2)


def test_collapse_operators_from_params():
    ops = collapse_operators(FeasibilityParams(), n_max=2)
    assert len(ops) == 5
    np.testing.assert_allclose(np.max(np.abs(ops[0].matrix)), math.sqrt(5e4 * 2))
