"""Dense complex linear algebra for small (d <= 8) matrices.

Thin, validating wrappers around LAPACK via numpy. All functions are pure;
the seeded generator passed to :func:`haar_unitary` is the only stateful
object and is never shared between callers.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import tolerances as tol
from .errors import (
    ConvergenceFailureError,
    NonSquareError,
    NotHermitianError,
    NotPSDError,
    UnsupportedDimensionError,
)

MAX_DIM = 8

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = np.stack([PAULI_X, PAULI_Y, PAULI_Z])


class EigenDecomposition(NamedTuple):
    """Ascending eigenvalues and the matching orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


def as_square(m) -> np.ndarray:
    """Coerce to a finite square complex ndarray or raise."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquareError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(float))):
        raise NonSquareError("matrix contains non-finite entries")
    return a


def hermiticity_residual(m: np.ndarray) -> float:
    return float(np.abs(m - m.conj().T).max()) if m.size else 0.0


def hermitian_eig(h, *, herm_tol: float = tol.HERMITIAN_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    m = as_square(h)
    res = hermiticity_residual(m)
    if res > herm_tol:
        raise NotHermitianError(
            f"hermiticity violated: entrywise residual {res:.3e} exceeds {herm_tol:.1e}"
        )
    values, vectors = np.linalg.eigh(m)
    return EigenDecomposition(values, vectors)


def psd_sqrt(m, *, clamp: float = tol.PSD_CLAMP,
             herm_tol: float = tol.HERMITIAN_TOL) -> np.ndarray:
    """Hermitian square root of a PSD matrix.

    Eigenvalues in [clamp, 0) are treated as round-off and clamped to zero; an
    eigenvalue below clamp is a genuine positivity violation and raises.
    """
    values, vectors = hermitian_eig(m, herm_tol=herm_tol)
    low = float(values.min()) if values.size else 0.0
    if low < clamp:
        raise NotPSDError(
            f"positivity violated: smallest eigenvalue {low:.3e} below {clamp:.1e}"
        )
    w = np.clip(values, 0.0, None)
    w[w < w.max(initial=0.0) * tol.EIG_RELATIVE_FLOOR] = 0.0
    root = np.sqrt(w)
    return (vectors * root) @ vectors.conj().T


def general_eigenvalues(m) -> np.ndarray:
    """Eigenvalues (complex, unordered multiset) of a general square matrix."""
    a = as_square(m)
    if a.shape[0] > MAX_DIM:
        raise UnsupportedDimensionError(
            f"dimension {a.shape[0]} exceeds supported maximum {MAX_DIM}"
        )
    try:
        return np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ConvergenceFailureError(f"eigenvalue iteration failed: {exc}") from exc


def trace_norm(m) -> float:
    """Sum of singular values."""
    a = as_square(m)
    return float(np.linalg.svd(a, compute_uv=False).sum())


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random d x d unitary via QR of a complex Ginibre matrix.

    The R-diagonal phases are divided out so the distribution is exactly Haar
    rather than QR-convention biased.
    """
    if d < 1:
        raise UnsupportedDimensionError(f"dimension must be >= 1, got {d}")
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r).copy()
    mags = np.abs(diag)
    # zero pivots have probability zero; guard anyway
    phases = np.where(mags > 0, diag / np.where(mags > 0, mags, 1.0), 1.0)
    return q * phases
