"""Two-qubit (and general bipartite) density matrix construction and sampling.

Constructors validate on the way in, so everything downstream can assume a
well-formed state: Hermitian, unit trace, eigenvalues bounded below by a small
round-off floor.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import tolerances as tol
from .errors import (
    DimensionMismatchError,
    InvalidProbabilitiesError,
    InvalidSpectrumError,
    NotHermitianError,
    NotPSDError,
    NotUnitaryError,
    NotUnitTraceError,
    OutOfRangeError,
    OutOfRegionError,
)
from .linalg import as_square, haar_unitary, hermiticity_residual

# Bell vectors, columns ordered as the spectrum components gamma_1..gamma_4:
# (|00>+|11>)/sqrt2, (|00>-|11>)/sqrt2, (|01>+|10>)/sqrt2, (|01>-|10>)/sqrt2
_s = 1.0 / np.sqrt(2.0)
BELL_BASIS = np.array(
    [
        [_s, _s, 0.0, 0.0],
        [0.0, 0.0, _s, _s],
        [0.0, 0.0, _s, -_s],
        [_s, -_s, 0.0, 0.0],
    ],
    dtype=complex,
)


def singlet_vector() -> np.ndarray:
    return BELL_BASIS[:, 3].copy()


@dataclass(frozen=True)
class DensityMatrix:
    """Validated bipartite density matrix."""

    matrix: np.ndarray
    dim_a: int
    dim_b: int

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b


@dataclass(frozen=True)
class BellDiagonalSpectrum:
    """Probability weights over the four Bell projectors."""

    gamma: tuple[float, float, float, float]

    def __post_init__(self):
        g = np.asarray(self.gamma, dtype=float)
        if g.shape != (4,):
            raise InvalidSpectrumError(f"expected 4 weights, got shape {g.shape}")
        if np.any(g < -tol.SPECTRUM_SUM_TOL) or np.any(g > 1 + tol.SPECTRUM_SUM_TOL):
            raise InvalidSpectrumError(f"weights outside [0, 1]: {self.gamma}")
        s = float(g.sum())
        if abs(s - 1.0) > tol.SPECTRUM_SUM_TOL:
            raise InvalidSpectrumError(
                f"weights must sum to 1 within {tol.SPECTRUM_SUM_TOL:.1e}, got {s!r}"
            )
        object.__setattr__(self, "gamma", tuple(float(x) for x in g))


def coerce_spectrum(gamma) -> BellDiagonalSpectrum:
    if isinstance(gamma, BellDiagonalSpectrum):
        return gamma
    return BellDiagonalSpectrum(tuple(gamma))


def from_dense(m, dim_a: int, dim_b: int, *,
               herm_tol: float = tol.HERMITIAN_TOL,
               trace_tol: float = tol.TRACE_TOL,
               eig_floor: float = tol.EIGENVALUE_FLOOR) -> DensityMatrix:
    """Validate a dense matrix as a density matrix on A (x) B."""
    a = as_square(m)
    d = dim_a * dim_b
    if a.shape[0] != d:
        raise DimensionMismatchError(
            f"matrix size {a.shape[0]} does not equal dim_a*dim_b = {d}"
        )
    res = hermiticity_residual(a)
    if res > herm_tol:
        raise NotHermitianError(
            f"hermiticity violated: entrywise residual {res:.3e} exceeds {herm_tol:.1e}"
        )
    tr = complex(np.trace(a))
    if abs(tr - 1.0) > trace_tol:
        raise NotUnitTraceError(
            f"unit trace violated: trace {tr!r} differs from 1 by {abs(tr - 1.0):.3e}"
        )
    low = float(np.linalg.eigvalsh(a).min())
    if low < eig_floor:
        raise NotPSDError(
            f"positivity violated: smallest eigenvalue {low:.3e} below {eig_floor:.1e}"
        )
    a = a.copy()
    a.setflags(write=False)
    return DensityMatrix(a, dim_a, dim_b)


def bell_diagonal(gamma) -> DensityMatrix:
    """Bell-diagonal state sum_i gamma_i |bell_i><bell_i|."""
    spec = coerce_spectrum(gamma)
    g = np.asarray(spec.gamma)
    m = (BELL_BASIS * g) @ BELL_BASIS.conj().T
    return from_dense(m, 2, 2)


def werner(f: float) -> DensityMatrix:
    """Weight f on the singlet, (1-f)/3 on each of the other Bell projectors."""
    f = float(f)
    if not 0.0 <= f <= 1.0:
        raise OutOfRangeError(f"werner parameter must lie in [0, 1], got {f}")
    g = (1.0 - f) / 3.0
    return bell_diagonal((g, g, g, f))


def classical_quantum(probs, basis_a, rho_b) -> DensityMatrix:
    """sum_i p_i |i_A><i_A| (x) rho_B^(i) for an orthonormal basis of A."""
    p = np.asarray(probs, dtype=float)
    if np.any(p < -1e-12):
        raise InvalidProbabilitiesError(f"negative probability in {probs}")
    if abs(p.sum() - 1.0) > 1e-10:
        raise InvalidProbabilitiesError(
            f"probabilities must sum to 1, got {p.sum()!r}"
        )
    vecs = [np.asarray(v, dtype=complex).ravel() for v in basis_a]
    dim_a = vecs[0].size
    if len(vecs) != dim_a or len(vecs) != p.size:
        raise DimensionMismatchError(
            f"need {dim_a} basis vectors and probabilities, got {len(vecs)}, {p.size}"
        )
    gram = np.array([[vi.conj() @ vj for vj in vecs] for vi in vecs])
    if np.abs(gram - np.eye(dim_a)).max() > 1e-10:
        raise NotUnitaryError("basis_a is not orthonormal")
    mats = [np.asarray(r.matrix if isinstance(r, DensityMatrix) else r, dtype=complex)
            for r in rho_b]
    dim_b = mats[0].shape[0]
    if any(m.shape != (dim_b, dim_b) for m in mats) or len(mats) != dim_a:
        raise DimensionMismatchError("rho_b entries must share one square B dimension")
    out = np.zeros((dim_a * dim_b, dim_a * dim_b), dtype=complex)
    for pi, vi, mi in zip(p, vecs, mats):
        out += pi * np.kron(np.outer(vi, vi.conj()), mi)
    return from_dense(out, dim_a, dim_b)


def purity(rho: DensityMatrix) -> float:
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    return float(np.trace(m @ m).real)


def apply_local_unitary(rho: DensityMatrix, u_a,
                        *, unitary_tol: float = tol.UNITARY_TOL) -> DensityMatrix:
    """(U_A (x) I_B) rho (U_A (x) I_B)^dag."""
    u = as_square(u_a)
    if u.shape[0] != rho.dim_a:
        raise DimensionMismatchError(
            f"unitary size {u.shape[0]} does not match dim_a {rho.dim_a}"
        )
    res = float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])))
    if res > unitary_tol:
        raise NotUnitaryError(f"unitarity residual {res:.3e} exceeds {unitary_tol:.1e}")
    big = np.kron(u, np.eye(rho.dim_b, dtype=complex))
    return from_dense(big @ rho.matrix @ big.conj().T, rho.dim_a, rho.dim_b)


def partial_trace(rho: DensityMatrix, keep: str) -> np.ndarray:
    """Reduced state on subsystem 'a' or 'b' as a dense matrix."""
    da, db = rho.dim_a, rho.dim_b
    t = rho.matrix.reshape(da, db, da, db)
    if keep == "a":
        return np.einsum("ibjb->ij", t)
    if keep == "b":
        return np.einsum("aiaj->ij", t)
    raise OutOfRangeError(f"keep must be 'a' or 'b', got {keep!r}")


# --- maximally-quantum-correlated families -------------------------------
#
# Constructors accept the full mathematical domain of each closed form; the
# narrower purity windows where each family furnishes the survey boundary
# live in the explorer region table.

MQ_B_DOMAIN = (1.0 / 3.0, 5.0 / 9.0)
MQ_C_DOMAIN = (0.34, 0.56)
MQ_D_DOMAIN = (0.5, 1.0)


def _check_domain(p: float, lo: float, hi: float, family: str) -> float:
    p = float(p)
    if not lo - 1e-12 <= p <= hi + 1e-12:
        raise OutOfRegionError(
            f"family {family} is defined for purity in [{lo:.6g}, {hi:.6g}], got {p}"
        )
    return min(max(p, lo), hi)


def mq_family_b(P: float) -> DensityMatrix:
    """Rank <= 4 family with constant response discord 1/3; purity exactly P."""
    p = _check_domain(P, *MQ_B_DOMAIN, "b")
    b = 2.0 + np.sqrt(6.0) * np.sqrt(3.0 * p - 1.0)
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = m[0, 3] = m[3, 0] = 1.0
    m[1, 1] = 4.0 - b
    m[2, 2] = b
    return from_dense(m / 6.0, 2, 2)


def mq_family_c(P: float) -> DensityMatrix:
    """Rank-3 family with tuned corner coherence; constants are 2-decimal fits.

    The smaller middle diagonal entry crosses zero near the top of the domain;
    it is clamped to zero and the matrix renormalized, shifting the purity by
    less than the family's 1e-2 tolerance.
    """
    p = _check_domain(P, *MQ_C_DOMAIN, "c")
    K = 0.03 + 0.35 * p
    rad = 7.0 * p - 24.0 * K * K + 8.0 * K - 3.0
    if rad < 0:
        raise OutOfRegionError(
            f"family c closed form has no real solution at purity {p}"
        )
    c = (1.0 + 8.0 * K + np.sqrt(2.0) * np.sqrt(rad)) / 7.0
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = K
    m[3, 3] = c - K
    m[0, 3] = m[3, 0] = np.sqrt(K * (c - K))
    m[1, 1] = (1.0 + 4.0 * K - 3.0 * c) / 2.0
    m[2, 2] = (1.0 - 4.0 * K + c) / 2.0
    if m[1, 1].real < 0.0:
        m[1, 1] = 0.0
        m /= np.trace(m).real
    return from_dense(m, 2, 2)


def mq_family_d(P: float) -> DensityMatrix:
    """Rank-2 family: entangled pure component mixed with |10><10|; purity exactly P."""
    p = _check_domain(P, *MQ_D_DOMAIN, "d")
    d = (1.0 - np.sqrt(2.0 * p - 1.0)) / 2.0
    eta = mq_family_d_angle(p)
    ce, se = np.cos(eta), np.sin(eta)
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = (1.0 - d) * ce * ce
    m[3, 3] = (1.0 - d) * se * se
    m[0, 3] = m[3, 0] = (1.0 - d) * ce * se
    m[2, 2] = d
    return from_dense(m, 2, 2)


def mq_family_d_angle(P: float) -> float:
    """Mixing angle eta of the rank-2 family at purity P."""
    p = float(P)
    root = np.sqrt(2.0 * p - 1.0)
    num = 2.0 * p + np.sqrt((1.0 - p) * (-p + 2.0 * root + 3.0)) - 2.0
    den = -0.5 * (root + 1.0) ** 2
    return 0.5 * np.arccos(np.clip(num / den, -1.0, 1.0))


# --- sampling -------------------------------------------------------------

def random_state(dim_a: int, dim_b: int, rng: np.random.Generator) -> DensityMatrix:
    """Eigenvalues uniform on the simplex, eigenvectors Haar."""
    d = dim_a * dim_b
    cuts = np.sort(rng.random(d - 1))
    eigs = np.diff(np.concatenate(([0.0], cuts, [1.0])))
    v = haar_unitary(d, rng)
    m = (v * eigs) @ v.conj().T
    m = 0.5 * (m + m.conj().T)
    return from_dense(m, dim_a, dim_b)


def random_pure(dim_a: int, dim_b: int, rng: np.random.Generator) -> DensityMatrix:
    """Rank-1 projector onto a Haar-random vector."""
    d = dim_a * dim_b
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    v /= np.linalg.norm(v)
    return from_dense(np.outer(v, v.conj()), dim_a, dim_b)


# --- state file parsing ----------------------------------------------------

def state_from_spec(obj: dict) -> DensityMatrix:
    """Build a state from the JSON state-file object.

    Accepted shapes: {"dense": [[[re, im], ...], ...], "dims": [da, db]} or
    {"family": name, ...} with family-specific parameters.
    """
    if not isinstance(obj, dict):
        raise DimensionMismatchError("state spec must be a JSON object")
    if "dense" in obj:
        dims = obj.get("dims", [2, 2])
        if len(dims) != 2:
            raise DimensionMismatchError(f"dims must have two entries, got {dims}")
        rows = obj["dense"]
        try:
            m = np.array(
                [[complex(e[0], e[1]) for e in row] for row in rows], dtype=complex
            )
        except (TypeError, IndexError) as exc:
            raise DimensionMismatchError(
                "dense entries must be [re, im] pairs"
            ) from exc
        return from_dense(m, int(dims[0]), int(dims[1]))
    family = obj.get("family")
    if family == "werner":
        return werner(obj["f"])
    if family == "bell_diagonal":
        return bell_diagonal(obj["gamma"])
    if family in ("mq_b", "mq_c", "mq_d"):
        builder = {"mq_b": mq_family_b, "mq_c": mq_family_c, "mq_d": mq_family_d}
        return builder[family](obj["purity"])
    if family == "classical_quantum":
        if obj.get("basis", "computational") != "computational":
            raise OutOfRangeError(f"unsupported basis {obj['basis']!r}")
        probs = obj["probs"]
        dim_a = len(probs)
        basis = list(np.eye(dim_a, dtype=complex))
        rho_b = [
            np.array([[complex(e[0], e[1]) for e in row] for row in mat], dtype=complex)
            for mat in obj["rho_b"]
        ]
        return classical_quantum(probs, basis, rho_b)
    raise OutOfRangeError(f"unknown state family {family!r}")
