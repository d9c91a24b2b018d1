"""Contractive distances between density matrices and the fidelity sandwich.

Fidelity goes through a Hermitian eigensolve of sqrt(r1) r2 sqrt(r1), which is
robust for rank-deficient inputs. All radicands clamp tiny negative round-off
to zero before taking square roots.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .errors import DimensionMismatchError
from .linalg import psd_sqrt, trace_norm
from .states import DensityMatrix


class MetricKind(enum.Enum):
    TRACE = "trace"
    HELLINGER = "hellinger"
    BURES = "bures"

    @property
    def inv_normalization(self) -> float:
        """Prefactor that maps the squared distance onto [0, 1]."""
        return 0.25 if self is MetricKind.TRACE else 0.5


@dataclass(frozen=True)
class SandwichBounds:
    lower: float   # squared Bures distance
    mid: float     # trace distance
    upper: float   # twice the Bures distance
    holds: bool


def _dense(r) -> np.ndarray:
    return r.matrix if isinstance(r, DensityMatrix) else np.asarray(r, dtype=complex)


def _pair(r1, r2) -> tuple[np.ndarray, np.ndarray]:
    a, b = _dense(r1), _dense(r2)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a, b


def _clamped_sqrt(x: float, clamp: float = tol.RADICAND_CLAMP) -> float:
    return float(np.sqrt(x)) if x > 0.0 else (0.0 if x >= clamp else float(np.sqrt(x)))


def fidelity(r1, r2) -> float:
    """Uhlmann fidelity (tr sqrt(sqrt(r1) r2 sqrt(r1)))^2."""
    a, b = _pair(r1, r2)
    s = psd_sqrt(a)
    w = np.clip(np.linalg.eigvalsh(s @ b @ s), 0.0, None)
    # zero eigenvalues of the product carry O(eps) solver noise that the
    # square root would amplify to ~1e-8; treat them as exact zeros
    w[w < w.max(initial=0.0) * tol.EIG_RELATIVE_FLOOR] = 0.0
    root = np.sqrt(w).sum()
    return float(np.clip(root * root, 0.0, 1.0))


def trace_distance(r1, r2) -> float:
    """Trace norm of the difference; ranges over [0, 2] for states."""
    a, b = _pair(r1, r2)
    return trace_norm(a - b)


def hellinger_distance(r1, r2) -> float:
    """Frobenius distance between the matrix square roots."""
    a, b = _pair(r1, r2)
    diff = psd_sqrt(a) - psd_sqrt(b)
    return _clamped_sqrt(float(np.trace(diff @ diff).real))


def bures_distance(r1, r2) -> float:
    """sqrt(2 (1 - sqrt(F)))."""
    root_f = _clamped_sqrt(fidelity(r1, r2))
    return _clamped_sqrt(2.0 * (1.0 - min(root_f, 1.0)))


def sandwich_check(r1, r2, *, slack: float = 1e-10) -> SandwichBounds:
    """Bures-trace bracketing: d_Bu^2 <= d_Tr <= 2 d_Bu."""
    d_tr = trace_distance(r1, r2)
    d_bu = bures_distance(r1, r2)
    lower = d_bu * d_bu
    upper = 2.0 * d_bu
    holds = (lower <= d_tr + slack) and (d_tr <= upper + slack)
    return SandwichBounds(lower, d_tr, upper, holds)
