"""Operational uses of the response measures.

Unitary-channel discrimination (Helstrom error and its worst-case over the
encoding axis), the spectrum-dependence of the discrimination distance, local
quantum Fisher information, and the interferometric power of a probe state.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from ._nm import nelder_mead_batched  # noqa: F401  (re-exported for callers)
from .errors import (
    DimensionMismatchError,
    NotUnitaryError,
    OptimizerFailureError,
    OutOfRangeError,
)
from .linalg import PAULIS
from .metrics import MetricKind, trace_distance
from .response import (
    DEFAULT_SETTINGS,
    LocalUnitaryAngles,
    OptimizerSettings,
    SphereProblem,
    directions,
    discord_of_response,
    expand_on_a,
    minimize_over_axes,
    unitary_from_angles,
)
from .states import DensityMatrix


@dataclass(frozen=True)
class SpectrumOmega:
    """Unitary spectrum {e^{i omega}, e^{-i omega}} up to a global phase;
    omega = pi/2 is the harmonic case {+1, -1}."""

    omega: float

    def __post_init__(self):
        if not 0.0 < self.omega <= np.pi / 2.0 + 1e-12:
            raise OutOfRangeError(
                f"omega must lie in (0, pi/2], got {self.omega}"
            )


@dataclass(frozen=True)
class LocalHamiltonian:
    """Traceless qubit generator n . sigma with spectrum {+1, -1}."""

    angles: LocalUnitaryAngles

    def matrix(self) -> np.ndarray:
        return unitary_from_angles(self.angles)


def _check_unitary(u, dim: int, name: str) -> np.ndarray:
    m = np.asarray(u, dtype=complex)
    if m.shape != (dim, dim):
        raise DimensionMismatchError(
            f"{name} must be {dim}x{dim}, got shape {m.shape}"
        )
    res = float(np.linalg.norm(m.conj().T @ m - np.eye(dim)))
    if res > tol.UNITARY_TOL:
        raise NotUnitaryError(
            f"{name} unitarity residual {res:.3e} exceeds {tol.UNITARY_TOL:.1e}"
        )
    return m


def helstrom_error(rho: DensityMatrix, u1, u2) -> float:
    """Minimum error probability for distinguishing the two local encodings."""
    v1 = _check_unitary(u1, rho.dim_a, "u1")
    v2 = _check_unitary(u2, rho.dim_a, "u2")
    eye = np.eye(rho.dim_b, dtype=complex)
    b1, b2 = np.kron(v1, eye), np.kron(v2, eye)
    d = trace_distance(b1 @ rho.matrix @ b1.conj().T,
                       b2 @ rho.matrix @ b2.conj().T)
    return float(np.clip(0.5 * (1.0 - 0.5 * d), 0.0, 0.5))


def min_distance_over_spectrum(rho: DensityMatrix, s: SpectrumOmega,
                               settings: OptimizerSettings = DEFAULT_SETTINGS) -> float:
    """Smallest trace distance between rho and U rho U^dag over unitaries with
    the given spectrum, optimizing the conjugating axis."""
    if rho.dim_a != 2:
        raise OutOfRangeError(f"axis search needs dim_a = 2, got {rho.dim_a}")
    mat = rho.matrix
    dim_b = rho.dim_b
    cos_w, sin_w = np.cos(s.omega), np.sin(s.omega)
    eye2 = np.eye(2, dtype=complex)

    def _units(points):
        axes = np.einsum("mk,kij->mij", directions(points), PAULIS)
        return expand_on_a(cos_w * eye2 + 1j * sin_w * axes, dim_b)

    def eval_points(points, idx):
        u = _units(points)
        t = u @ mat @ u.conj().transpose(0, 2, 1) - mat
        return np.abs(np.linalg.eigvalsh(t)).sum(axis=1)

    def eval_grid(grid, ids):
        return eval_points(grid, ids)[None, :]

    vals, _, _, conv = minimize_over_axes(
        SphereProblem(eval_points, eval_grid, 1), settings
    )
    if not bool(conv[0]):
        raise OptimizerFailureError("axis search did not converge")
    return float(max(vals[0], 0.0))


def trace_discord_of_response(rho: DensityMatrix,
                              settings: OptimizerSettings = DEFAULT_SETTINGS) -> float:
    """Quarter of the squared minimum harmonic trace distance."""
    return discord_of_response(rho, MetricKind.TRACE, settings).value


def worst_case_reading_error(rho: DensityMatrix,
                             settings: OptimizerSettings = DEFAULT_SETTINGS) -> float:
    """Helstrom error against the least favorable harmonic encoding axis."""
    value = trace_discord_of_response(rho, settings)
    return float(np.clip(0.5 * (1.0 - np.sqrt(value)), 0.0, 0.5))


def quantum_fisher_information(rho: DensityMatrix, h: LocalHamiltonian) -> float:
    """QFI of the phase family e^{-i t H_A} rho e^{i t H_A}.

    Spectral form over eigenpairs (q_i, |phi_i>); pairs with q_i + q_j below
    1e-12 are excluded, matching the summation constraint q_i + q_j != 0.
    """
    q, v = np.linalg.eigh(rho.matrix)
    q = np.clip(q, 0.0, None)
    big = np.kron(h.matrix(), np.eye(rho.dim_b, dtype=complex))
    m = v.conj().T @ big @ v
    sums = q[:, None] + q[None, :]
    diffs = q[:, None] - q[None, :]
    mask = sums > 1e-12
    np.fill_diagonal(mask, False)
    weights = np.zeros_like(sums)
    weights[mask] = 2.0 * diffs[mask] ** 2 / sums[mask]
    return float((weights * np.abs(m) ** 2).sum())


def interferometric_power(rho: DensityMatrix,
                          settings: OptimizerSettings = DEFAULT_SETTINGS) -> float:
    """Quarter of the QFI minimized over the generator axis."""
    if rho.dim_a != 2:
        raise OutOfRangeError(f"axis search needs dim_a = 2, got {rho.dim_a}")
    q, v = np.linalg.eigh(rho.matrix)
    q = np.clip(q, 0.0, None)
    eye = np.eye(rho.dim_b, dtype=complex)
    paulis_big = np.stack([
        v.conj().T @ np.kron(p, eye) @ v for p in PAULIS
    ])
    sums = q[:, None] + q[None, :]
    diffs = q[:, None] - q[None, :]
    mask = sums > 1e-12
    np.fill_diagonal(mask, False)
    weights = np.zeros_like(sums)
    weights[mask] = 2.0 * diffs[mask] ** 2 / sums[mask]

    def eval_points(points, idx):
        g = np.einsum("mk,kij->mij", directions(points), paulis_big)
        return np.einsum("ij,mij->m", weights, np.abs(g) ** 2)

    def eval_grid(grid, ids):
        return eval_points(grid, ids)[None, :]

    vals, _, _, conv = minimize_over_axes(
        SphereProblem(eval_points, eval_grid, 1), settings
    )
    if not bool(conv[0]):
        raise OptimizerFailureError("generator-axis search did not converge")
    return float(max(0.25 * vals[0], 0.0))
