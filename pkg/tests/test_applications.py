import numpy as np
import pytest

import discordlab as dl
from discordlab.errors import NotUnitaryError, OutOfRangeError
from discordlab.linalg import PAULI_Z, PAULIS, haar_unitary
from discordlab.response import OptimizerSettings, unitary_from_angles
from tests.conftest import random_cq_state

FAST = OptimizerSettings(grid_theta=32, grid_phi=32, refine_starts=4)


def test_spectrum_omega_validation():
    assert dl.SpectrumOmega(np.pi / 2).omega == pytest.approx(np.pi / 2)
    for bad in (0.0, -0.3, np.pi / 2 + 0.01):
        with pytest.raises(OutOfRangeError):
            dl.SpectrumOmega(bad)


def test_local_hamiltonian_matrix(rng):
    for _ in range(5):
        angles = dl.LocalUnitaryAngles(rng.uniform(0, np.pi),
                                       rng.uniform(0, 2 * np.pi))
        h = dl.LocalHamiltonian(angles).matrix()
        assert np.abs(h - h.conj().T).max() < 1e-14
        assert abs(np.trace(h)) < 1e-14
        assert np.abs(h @ h - np.eye(2)).max() < 1e-14


def test_helstrom_identical_channels(rng):
    rho = dl.random_state(2, 2, rng)
    u = haar_unitary(2, rng)
    assert dl.helstrom_error(rho, u, u) == pytest.approx(0.5, abs=1e-12)


def test_helstrom_singlet_orthogonal_outputs():
    singlet = dl.werner(1.0)
    err = dl.helstrom_error(singlet, np.eye(2), PAULI_Z)
    assert err == pytest.approx(0.0, abs=1e-10)


def test_helstrom_cq_transmitter_blind_spot():
    # dephasing along its own basis leaves a classical-quantum state fixed, so
    # the two encodings are indistinguishable
    rho = dl.classical_quantum(
        [0.6, 0.4], np.eye(2), [np.diag([0.9, 0.1]), np.diag([0.2, 0.8])]
    )
    err = dl.helstrom_error(rho, np.eye(2), PAULI_Z)
    assert err == pytest.approx(0.5, abs=1e-12)


def test_helstrom_rejects_nonunitary(rng):
    rho = dl.random_state(2, 2, rng)
    with pytest.raises(NotUnitaryError):
        dl.helstrom_error(rho, np.eye(2) * 0.5, np.eye(2))


def test_min_distance_singlet_harmonic():
    got = dl.min_distance_over_spectrum(dl.werner(1.0), dl.SpectrumOmega(np.pi / 2))
    assert got == pytest.approx(2.0, abs=1e-9)


def test_min_distance_vanishes_with_omega(rng):
    rho = dl.random_state(2, 2, rng)
    tiny = dl.min_distance_over_spectrum(rho, dl.SpectrumOmega(1e-3), FAST)
    assert tiny < 5e-3


def test_min_distance_sin_scaling(rng):
    for _ in range(5):
        rho = dl.random_state(2, 2, rng)
        harmonic = dl.min_distance_over_spectrum(
            rho, dl.SpectrumOmega(np.pi / 2), FAST
        )
        for w in (np.pi / 8, np.pi / 4, 3 * np.pi / 8):
            val = dl.min_distance_over_spectrum(rho, dl.SpectrumOmega(w), FAST)
            assert val <= harmonic + 1e-8
            if harmonic > 1e-6:
                assert val / harmonic == pytest.approx(np.sin(w), abs=1e-6)


def test_trace_discord_examples(rng):
    cq = random_cq_state(rng)
    assert dl.trace_discord_of_response(cq) <= 1e-9
    assert dl.worst_case_reading_error(cq) == pytest.approx(0.5, abs=1e-5)

    singlet = dl.werner(1.0)
    assert dl.trace_discord_of_response(singlet) == pytest.approx(1.0, abs=1e-9)
    assert dl.worst_case_reading_error(singlet) == pytest.approx(0.0, abs=1e-9)


def test_trace_discord_against_dense_grid():
    rho = dl.werner(0.9)
    fast = dl.trace_discord_of_response(rho)
    thetas = np.linspace(0, np.pi, 120)
    phis = np.linspace(0, 2 * np.pi, 240, endpoint=False)
    best = np.inf
    mat = rho.matrix
    for th in thetas:
        for ph in phis:
            u = np.kron(unitary_from_angles((th, ph)), np.eye(2))
            diff = u @ mat @ u.conj().T - mat
            d = np.abs(np.linalg.eigvalsh(diff)).sum()
            best = min(best, 0.25 * d * d)
    assert fast == pytest.approx(best, abs=1e-6)


def test_qfi_eigenstate_is_zero():
    ket00 = np.zeros((4, 4), dtype=complex)
    ket00[0, 0] = 1.0
    rho = dl.from_dense(ket00, 2, 2)
    h = dl.LocalHamiltonian(dl.LocalUnitaryAngles(0.0, 0.0))
    assert dl.quantum_fisher_information(rho, h) == pytest.approx(0.0, abs=1e-12)


def test_qfi_bell_state():
    rho = dl.bell_diagonal((1.0, 0.0, 0.0, 0.0))
    h = dl.LocalHamiltonian(dl.LocalUnitaryAngles(0.0, 0.0))
    assert dl.quantum_fisher_information(rho, h) == pytest.approx(4.0, abs=1e-10)


def test_qfi_pure_equals_four_variances(rng):
    for _ in range(10):
        psi = dl.random_pure(2, 2, rng)
        angles = dl.LocalUnitaryAngles(rng.uniform(0, np.pi),
                                       rng.uniform(0, 2 * np.pi))
        ham = dl.LocalHamiltonian(angles)
        big = np.kron(ham.matrix(), np.eye(2))
        mean = np.trace(big @ psi.matrix).real
        second = np.trace(big @ big @ psi.matrix).real
        want = 4.0 * (second - mean * mean)
        got = dl.quantum_fisher_information(psi, ham)
        assert got == pytest.approx(want, abs=1e-10)


def test_qfi_matches_fidelity_susceptibility(rng):
    # d_Bu^2(rho, e^{-i eps H} rho e^{i eps H}) = (QFI/4) eps^2 + O(eps^4)
    eps = 1e-3
    for _ in range(5):
        rho = dl.random_state(2, 2, rng)
        angles = dl.LocalUnitaryAngles(rng.uniform(0, np.pi),
                                       rng.uniform(0, 2 * np.pi))
        ham = dl.LocalHamiltonian(angles)
        big = np.kron(ham.matrix(), np.eye(2))
        w, v = np.linalg.eigh(big)
        u = (v * np.exp(-1j * eps * w)) @ v.conj().T
        moved = u @ rho.matrix @ u.conj().T
        fd = 8.0 * (1.0 - np.sqrt(dl.fidelity(rho.matrix, moved))) / eps**2
        got = dl.quantum_fisher_information(rho, ham)
        assert got == pytest.approx(fd, abs=1e-4)


def _qfi_form_matrix(rho: dl.DensityMatrix) -> np.ndarray:
    """QFI as a quadratic form in the generator axis: n^T M n."""
    q, v = np.linalg.eigh(rho.matrix)
    q = np.clip(q, 0.0, None)
    ms = np.stack([v.conj().T @ np.kron(p, np.eye(2)) @ v for p in PAULIS])
    sums = q[:, None] + q[None, :]
    diffs = q[:, None] - q[None, :]
    mask = sums > 1e-12
    np.fill_diagonal(mask, False)
    weights = np.zeros_like(sums)
    weights[mask] = 2.0 * diffs[mask] ** 2 / sums[mask]
    form = np.empty((3, 3))
    for k in range(3):
        for l in range(3):
            form[k, l] = float(
                (weights * (ms[k] * ms[l].conj()).real).sum()
            )
    return form


def test_interferometric_power_matches_quadratic_form(rng):
    # independent oracle: the axis minimization is the smallest eigenvalue of
    # a 3x3 quadratic form
    for _ in range(5):
        rho = dl.random_state(2, 2, rng)
        closed = 0.25 * float(np.linalg.eigvalsh(_qfi_form_matrix(rho))[0])
        got = dl.interferometric_power(rho)
        assert got == pytest.approx(closed, abs=1e-9)


def test_interferometric_power_examples(rng):
    bell = dl.bell_diagonal((1.0, 0.0, 0.0, 0.0))
    assert dl.interferometric_power(bell) == pytest.approx(1.0, abs=1e-9)
    # symmetry: the Bell state's QFI is 4 on every axis
    for _ in range(5):
        angles = dl.LocalUnitaryAngles(rng.uniform(0, np.pi),
                                       rng.uniform(0, 2 * np.pi))
        got = dl.quantum_fisher_information(bell, dl.LocalHamiltonian(angles))
        assert got == pytest.approx(4.0, abs=1e-10)

    cq = random_cq_state(rng)
    assert dl.interferometric_power(cq) == pytest.approx(0.0, abs=1e-7)

    a = dl.random_pure(1, 2, rng).matrix
    b = dl.random_pure(1, 2, rng).matrix
    product = dl.from_dense(np.kron(a, b), 2, 2)
    assert dl.interferometric_power(product) == pytest.approx(0.0, abs=1e-9)
