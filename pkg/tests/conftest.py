import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import discordlab as dl
from discordlab.linalg import haar_unitary

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture
def rng():
    return np.random.default_rng(20260817)


def random_cq_state(rng: np.random.Generator, dim_b: int = 2) -> dl.DensityMatrix:
    """Random classical-quantum state: haar basis on A, random B blocks."""
    basis = haar_unitary(2, rng)
    p = rng.dirichlet(np.ones(2))
    blocks = [dl.random_state(1, dim_b, rng).matrix for _ in range(2)]
    return dl.classical_quantum(p, basis, blocks)


def random_kraus_pair_on_b(rng: np.random.Generator, dim_b: int = 2):
    """Two Kraus operators on B forming a CPTP map: K_i = (U_i sqrt(M_i))
    with M_1 + M_2 = identity."""
    a = rng.standard_normal((dim_b, dim_b)) + 1j * rng.standard_normal((dim_b, dim_b))
    h = a @ a.conj().T
    h /= np.trace(h).real
    w, v = np.linalg.eigh(h)
    w = np.clip(w, 0.0, 1.0)
    m1 = (v * w) @ v.conj().T
    m2 = np.eye(dim_b) - m1
    k = []
    for m in (m1, m2):
        wm, vm = np.linalg.eigh(m)
        root = (vm * np.sqrt(np.clip(wm, 0.0, None))) @ vm.conj().T
        k.append(haar_unitary(dim_b, rng) @ root)
    return k


def apply_channel_on_b(mat: np.ndarray, kraus, dim_a: int = 2) -> np.ndarray:
    dim_b = kraus[0].shape[0]
    out = np.zeros_like(mat)
    for k in kraus:
        big = np.kron(np.eye(dim_a, dtype=complex), k)
        out = out + big @ mat @ big.conj().T
    return out
