"""Discord of response and related measures for two-qubit states.

The minimization domain for a qubit subsystem A is the set of local unitaries
with spectrum {+1, -1} up to a global phase, i.e. the Hermitian unitaries
n(theta, phi) . sigma. The optimizer runs a coarse (theta, phi) grid followed
by simplex refinement from the best cells; both stages are vectorized across
states and starts so surveys stay cheap.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import tolerances as tol
from ._nm import nelder_mead_batched
from .errors import (
    NotPureError,
    OptimizerFailureError,
    OutOfRangeError,
    UnsupportedDimensionError,
)
from .linalg import PAULIS, general_eigenvalues
from .metrics import MetricKind, fidelity, hellinger_distance, trace_distance
from .states import BELL_BASIS, DensityMatrix, coerce_spectrum, purity


@dataclass(frozen=True)
class LocalUnitaryAngles:
    """Spherical coordinates of the unitary axis: n . sigma with
    n = (sin theta cos phi, sin theta sin phi, cos theta)."""

    theta: float
    phi: float


@dataclass(frozen=True)
class DiscordResult:
    metric: MetricKind
    value: float
    argmin: LocalUnitaryAngles
    objective_evals: int
    converged: bool


@dataclass(frozen=True)
class CqParameters:
    """Classical-quantum state parameters: measurement basis on A plus the
    mixing weight and the two conditional B Bloch vectors."""

    alpha: float
    beta: float
    p: float
    bloch_1: tuple[float, float, float]
    bloch_2: tuple[float, float, float]


@dataclass(frozen=True)
class GeometricDiscordResult:
    value: float
    argmax_cq: CqParameters
    restarts_used: int


@dataclass(frozen=True)
class OptimizerSettings:
    """Grid-then-refine search configuration over the axis sphere."""

    grid_theta: int = 64
    grid_phi: int = 64
    refine_starts: int = 5
    fatol: float = tol.DEFAULT_FATOL
    maxiter: int = 500


DEFAULT_SETTINGS = OptimizerSettings()

# feasible memory budget for one batched grid evaluation
_GRID_BLOCK = 1 << 18


def _angles(a) -> tuple[float, float]:
    if isinstance(a, LocalUnitaryAngles):
        return float(a.theta), float(a.phi)
    th, ph = a
    return float(th), float(ph)


def directions(points: np.ndarray) -> np.ndarray:
    """(m, 2) angles -> (m, 3) unit axis vectors."""
    th, ph = points[:, 0], points[:, 1]
    st = np.sin(th)
    return np.stack([st * np.cos(ph), st * np.sin(ph), np.cos(th)], axis=1)


def axis_unitaries(points: np.ndarray) -> np.ndarray:
    """(m, 2) angles -> (m, 2, 2) Hermitian unitaries n . sigma."""
    return np.einsum("mk,kij->mij", directions(points), PAULIS)


def expand_on_a(u: np.ndarray, dim_b: int) -> np.ndarray:
    """Batched kron with the identity on B: (m, 2, 2) -> (m, 2*dim_b, 2*dim_b)."""
    eye = np.eye(dim_b, dtype=complex)
    m = u.shape[0]
    return np.einsum("mij,kl->mikjl", u, eye).reshape(m, 2 * dim_b, 2 * dim_b)


def unitary_from_angles(a) -> np.ndarray:
    """2x2 Hermitian unitary with spectrum {+1, -1} along the given axis."""
    th, ph = _angles(a)
    return axis_unitaries(np.array([[th, ph]]))[0]


def batched_sqrt_psd(mats: np.ndarray) -> np.ndarray:
    """Hermitian square roots of a stack of PSD matrices."""
    w, v = np.linalg.eigh(mats)
    w = np.clip(w, 0.0, None)
    # suppress sqrt-amplified solver noise on zero eigenvalues
    w[w < w.max(axis=-1, keepdims=True) * tol.EIG_RELATIVE_FLOOR] = 0.0
    return np.einsum("sij,sj,skj->sik", v, np.sqrt(w), v.conj())


# --- generic sphere minimizer ----------------------------------------------
#
# A problem supplies two views of the same objective: a gather-based pointwise
# evaluator used by the simplex refiner, and a grid evaluator that amortizes
# unitary construction across all states of a block.

@dataclass(frozen=True)
class SphereProblem:
    eval_points: Callable[[np.ndarray, np.ndarray], np.ndarray]
    eval_grid: Callable[[np.ndarray, np.ndarray], np.ndarray]
    n_states: int


def _grid_angles(n_theta: int, n_phi: int) -> np.ndarray:
    th = (np.arange(n_theta) + 0.5) * (np.pi / n_theta)
    ph = (np.arange(n_phi) + 0.5) * (2.0 * np.pi / n_phi)
    tt, pp = np.meshgrid(th, ph, indexing="ij")
    return np.stack([tt.ravel(), pp.ravel()], axis=1)


def minimize_over_axes(problem: SphereProblem, settings: OptimizerSettings):
    """Two-stage minimum of a smooth function on the axis sphere, per state.

    Returns (values (S,), angle pairs (S, 2), objective evals, converged (S,)).
    """
    grid = _grid_angles(settings.grid_theta, settings.grid_phi)
    n_grid = grid.shape[0]
    n_states = problem.n_states
    block = max(1, _GRID_BLOCK // n_grid)

    grid_vals = np.empty((n_states, n_grid))
    for lo in range(0, n_states, block):
        ids = np.arange(lo, min(lo + block, n_states))
        grid_vals[ids] = problem.eval_grid(grid, ids)
    evals = n_states * n_grid

    k = min(settings.refine_starts, n_grid)
    top = np.argsort(grid_vals, axis=1, kind="stable")[:, :k]
    x0 = grid[top.ravel()]
    lane_state = np.repeat(np.arange(n_states), k)

    def fn(points, lanes):
        return problem.eval_points(points, lane_state[lanes])

    step = np.array([0.5 * np.pi / settings.grid_theta,
                     np.pi / settings.grid_phi])
    xb, fb, refine_evals, conv = nelder_mead_batched(
        fn, x0, step=step, fatol=settings.fatol, maxiter=settings.maxiter
    )
    evals += refine_evals

    fb = fb.reshape(n_states, k)
    xb = xb.reshape(n_states, k, 2)
    conv = conv.reshape(n_states, k)
    best = np.argmin(fb, axis=1)
    rows = np.arange(n_states)
    return fb[rows, best], xb[rows, best], evals, conv[rows, best]


def _bures_problem(mats: np.ndarray) -> SphereProblem:
    roots = batched_sqrt_psd(mats)
    dim_b = mats.shape[1] // 2

    def eval_points(points, idx):
        u = expand_on_a(axis_unitaries(points), dim_b)
        a = roots[idx]
        w = np.linalg.eigvalsh(a @ u @ a)
        return 1.0 - np.abs(w).sum(axis=1)

    def eval_grid(grid, ids):
        u = expand_on_a(axis_unitaries(grid), dim_b)
        t = np.einsum("sij,gjk,skl->sgil", roots[ids], u, roots[ids])
        w = np.linalg.eigvalsh(t)
        return 1.0 - np.abs(w).sum(axis=2)

    return SphereProblem(eval_points, eval_grid, mats.shape[0])


def _trace_problem(mats: np.ndarray) -> SphereProblem:
    dim_b = mats.shape[1] // 2

    def eval_points(points, idx):
        u = expand_on_a(axis_unitaries(points), dim_b)
        r = mats[idx]
        w = np.linalg.eigvalsh(u @ r @ u - r)
        s = np.abs(w).sum(axis=1)
        return 0.25 * s * s

    def eval_grid(grid, ids):
        u = expand_on_a(axis_unitaries(grid), dim_b)
        r = mats[ids]
        t = np.einsum("gij,sjk,gkl->sgil", u, r, u) - r[:, None]
        s = np.abs(np.linalg.eigvalsh(t)).sum(axis=2)
        return 0.25 * s * s

    return SphereProblem(eval_points, eval_grid, mats.shape[0])


def _hellinger_problem(mats: np.ndarray) -> SphereProblem:
    roots = batched_sqrt_psd(mats)
    dim_b = mats.shape[1] // 2

    def eval_points(points, idx):
        u = expand_on_a(axis_unitaries(points), dim_b)
        a = roots[idx]
        overlap = np.einsum("mij,mjk,mkl,mli->m", a, u, a, u).real
        return np.clip(1.0 - overlap, 0.0, None)

    def eval_grid(grid, ids):
        u = expand_on_a(axis_unitaries(grid), dim_b)
        a = roots[ids]
        overlap = np.einsum("sij,gjk,skl,gli->sg", a, u, a, u).real
        return np.clip(1.0 - overlap, 0.0, None)

    return SphereProblem(eval_points, eval_grid, mats.shape[0])


_PROBLEMS = {
    MetricKind.BURES: _bures_problem,
    MetricKind.TRACE: _trace_problem,
    MetricKind.HELLINGER: _hellinger_problem,
}


def discord_batch(mats: np.ndarray, metric: MetricKind,
                  settings: OptimizerSettings = DEFAULT_SETTINGS):
    """Response discord for a stack of states sharing dim_a = 2.

    Internal batched entry point; returns (values, angles, evals, converged).
    """
    vals, angles, evals, conv = minimize_over_axes(
        _PROBLEMS[metric](np.asarray(mats, dtype=complex)), settings
    )
    return np.clip(vals, 0.0, 1.0), angles, evals, conv


def _require_qubit_a(rho: DensityMatrix):
    if rho.dim_a != 2:
        raise UnsupportedDimensionError(
            f"harmonic-spectrum axis parameterization needs dim_a = 2, got {rho.dim_a}"
        )


def discord_of_response(rho: DensityMatrix,
                        metric: MetricKind = MetricKind.BURES,
                        settings: OptimizerSettings = DEFAULT_SETTINGS) -> DiscordResult:
    """Minimize the normalized squared response distance over the axis sphere."""
    _require_qubit_a(rho)
    vals, angles, evals, conv = discord_batch(
        rho.matrix[None], metric, settings
    )
    if not bool(conv[0]):
        raise OptimizerFailureError(
            "simplex refinement did not reach the spread tolerance from any start"
        )
    return DiscordResult(
        metric=metric,
        value=float(vals[0]),
        argmin=LocalUnitaryAngles(float(angles[0, 0]), float(angles[0, 1])),
        objective_evals=int(evals),
        converged=bool(conv[0]),
    )


def response_objective(rho: DensityMatrix, a, metric: MetricKind,
                       *, fast: bool = True) -> float:
    """Normalized squared distance between rho and its image under one axis unitary.

    The Bures branch defaults to the eigenvalue-sum form 1 - sum_i |xi_i(rho U)|;
    with ``fast=False`` it evaluates the explicit Uhlmann fidelity instead.
    """
    _require_qubit_a(rho)
    u = np.kron(unitary_from_angles(a), np.eye(rho.dim_b, dtype=complex))
    if metric is MetricKind.BURES:
        if fast:
            xi = general_eigenvalues(rho.matrix @ u)
            return float(np.clip(1.0 - np.abs(xi).sum(), 0.0, 1.0))
        moved = u @ rho.matrix @ u.conj().T
        return float(np.clip(1.0 - np.sqrt(fidelity(rho, moved)), 0.0, 1.0))
    moved = u @ rho.matrix @ u.conj().T
    if metric is MetricKind.TRACE:
        d = trace_distance(rho.matrix, moved)
    else:
        d = hellinger_distance(rho.matrix, moved)
    return float(metric.inv_normalization * d * d)


# --- Bell-diagonal closed form ----------------------------------------------

# cyclic permutations of the first three weights; each realizes one perfect
# pairing of the four Bell projectors, and each pairing is attained on one
# Pauli axis of the minimization sphere
_PAIRINGS = (
    ((0, 1, 2, 3), (0.0, 0.0)),               # z axis
    ((1, 2, 0, 3), (np.pi / 2, np.pi / 2)),   # y axis
    ((2, 0, 1, 3), (np.pi / 2, 0.0)),         # x axis
)


def bell_diagonal_discord(gamma) -> float:
    """Closed-form Bures response discord of a Bell-diagonal state."""
    return bell_diagonal_discord_argmin(gamma)[0]


def bell_diagonal_discord_argmin(gamma) -> tuple[float, LocalUnitaryAngles]:
    g = np.asarray(coerce_spectrum(gamma).gamma)
    best_val, best_angles = np.inf, (0.0, 0.0)
    for perm, angles in _PAIRINGS:
        q = g[list(perm)]
        val = 1.0 - 2.0 * (np.sqrt(q[0] * q[1]) + np.sqrt(q[2] * q[3]))
        if val < best_val - 1e-15:
            best_val, best_angles = val, angles
    return float(np.clip(best_val, 0.0, 1.0)), LocalUnitaryAngles(*best_angles)


def bell_diagonal_root_fidelity(gamma, a) -> float:
    """Closed-form root fidelity between a Bell-diagonal state and its image
    under the harmonic rotation about the given axis.

    Equals sum_i |xi_i(rho_gamma U_A)|; the quartic characteristic polynomial
    factors into two quadratics with product of roots gamma1 gamma2 gamma3
    gamma4, which keeps both root pairs real and lets the absolute values
    drop.
    """
    g = np.asarray(coerce_spectrum(gamma).gamma)
    th, ph = _angles(a)
    n = directions(np.array([[th, ph]]))[0]
    wx, wy, wz = n[0] * n[0], n[1] * n[1], n[2] * n[2]
    z = ((g[0] * g[2] + g[1] * g[3]) * wx
         + (g[1] * g[2] + g[0] * g[3]) * wy
         + (g[0] * g[1] + g[2] * g[3]) * wz)
    prod = g.prod()
    w = np.sqrt(max(z * z - 4.0 * prod, 0.0))
    return float(np.sqrt(2.0) * (np.sqrt(max(z - w, 0.0)) + np.sqrt(z + w)))


# --- pure states -------------------------------------------------------------

def entanglement_of_response_pure(psi: DensityMatrix,
                                  settings: OptimizerSettings = DEFAULT_SETTINGS) -> float:
    """1 - max_U |<psi| U_A |psi>|^2 over axis unitaries, for pure inputs."""
    _require_qubit_a(psi)
    if abs(purity(psi) - 1.0) > tol.PURE_TOL:
        raise NotPureError(
            f"purity {purity(psi)!r} differs from 1 beyond {tol.PURE_TOL:.1e}"
        )
    w, v = np.linalg.eigh(psi.matrix)
    vec = v[:, -1]
    dim_b = psi.dim_b

    def eval_points(points, idx):
        u = expand_on_a(axis_unitaries(points), dim_b)
        amp = np.einsum("i,mij,j->m", vec.conj(), u, vec)
        return 1.0 - np.abs(amp)

    problem = SphereProblem(eval_points, lambda grid, ids: eval_points(grid, ids)[None, :], 1)
    vals, _, _, conv = minimize_over_axes(problem, settings)
    if not bool(conv[0]):
        raise OptimizerFailureError("overlap maximization did not converge")
    overlap = 1.0 - float(vals[0])
    return float(np.clip(1.0 - overlap * overlap, 0.0, 1.0))


# --- Werner closed forms ------------------------------------------------------

def werner_discord(f: float) -> float:
    """Bures response discord of the Werner state with singlet weight f."""
    f = float(f)
    if not 0.0 <= f <= 1.0:
        raise OutOfRangeError(f"werner parameter must lie in [0, 1], got {f}")
    return float(
        np.clip(1.0 - (2.0 / 3.0) * (1.0 - f)
                - 2.0 * np.sqrt(max(f - f * f, 0.0)) / np.sqrt(3.0), 0.0, 1.0)
    )


def werner_purity(f: float) -> float:
    f = float(f)
    return f * f + (1.0 - f) ** 2 / 3.0


def werner_f_roots(P: float) -> tuple[float, float]:
    """The two singlet weights with purity P; returns (low root, high root)."""
    P = float(P)
    if not 0.25 - 1e-12 <= P <= 1.0 + 1e-12:
        raise OutOfRangeError(f"werner purity must lie in [1/4, 1], got {P}")
    s = np.sqrt(max(12.0 * P - 3.0, 0.0))
    return (1.0 - s) / 4.0, (1.0 + s) / 4.0


def werner_discord_vs_purity(P: float, branch: str) -> float:
    """Werner discord as a function of purity along one f-root branch.

    branch 'plus' follows the low root f = (1 - sqrt(12P - 3))/4, defined for
    P in [1/4, 1/3]; branch 'minus' follows the high root, defined on [1/4, 1].
    """
    lo, hi = werner_f_roots(P)
    if branch == "plus":
        if P > 1.0 / 3.0 + 1e-12:
            raise OutOfRangeError(
                f"plus branch is defined for purity in [1/4, 1/3], got {P}"
            )
        return werner_discord(max(lo, 0.0))
    if branch == "minus":
        return werner_discord(min(hi, 1.0))
    raise OutOfRangeError(f"branch must be 'plus' or 'minus', got {branch!r}")


# --- Bures geometric discord --------------------------------------------------

_GEO_NORM = 2.0 / (2.0 - np.sqrt(2.0))

# fixed measurement bases for the structured (conditional-dephasing) starts
_GEO_BASES = (
    (0.0, 0.0),
    (np.pi / 4, 0.0),
    (np.pi / 4, np.pi / 2),
    (np.pi / 8, 0.0),
    (3 * np.pi / 8, 0.0),
    (np.pi / 8, np.pi / 4),
    (np.pi / 4, np.pi / 4),
    (3 * np.pi / 8, np.pi / 2),
)

# coordinate scales of the 9 search parameters
_GEO_SCALE = np.array([np.pi, 2 * np.pi, np.pi,
                       np.pi, 2 * np.pi, np.pi,
                       np.pi, 2 * np.pi, np.pi])


def _cq_matrices(params: np.ndarray) -> np.ndarray:
    """(m, 9) raw parameters -> (m, 4, 4) classical-quantum states."""
    al, be, u = params[:, 0], params[:, 1], params[:, 2]
    ca, sa = np.cos(al), np.sin(al)
    phase = np.exp(1j * be)
    a0 = np.stack([ca + 0j, phase * sa], axis=1)
    a1 = np.stack([-np.conj(phase) * sa, ca + 0j], axis=1)
    p0 = np.einsum("mi,mj->mij", a0, a0.conj())
    p1 = np.einsum("mi,mj->mij", a1, a1.conj())
    p = np.sin(u) ** 2

    def bloch_state(block):
        th, ph, w = block[:, 0], block[:, 1], block[:, 2]
        r = np.sin(w) ** 2
        n = r[:, None] * directions(np.stack([th, ph], axis=1))
        return 0.5 * (np.eye(2, dtype=complex)
                      + np.einsum("mk,kij->mij", n, PAULIS))

    r1 = bloch_state(params[:, 3:6])
    r2 = bloch_state(params[:, 6:9])
    m = params.shape[0]
    t1 = np.einsum("mab,mcd->macbd", p0, r1).reshape(m, 4, 4)
    t2 = np.einsum("mab,mcd->macbd", p1, r2).reshape(m, 4, 4)
    return p[:, None, None] * t1 + (1.0 - p)[:, None, None] * t2


def _bloch_to_params(n: np.ndarray) -> tuple[float, float, float]:
    r = float(np.linalg.norm(n))
    if r < 1e-14:
        return 0.0, 0.0, 0.0
    th = float(np.arccos(np.clip(n[2] / r, -1.0, 1.0)))
    ph = float(np.arctan2(n[1], n[0])) % (2.0 * np.pi)
    w = float(np.arcsin(np.sqrt(min(r, 1.0))))
    return th, ph, w


def _dephasing_start(mat: np.ndarray, alpha: float, beta: float) -> np.ndarray:
    """Parameters of the A-basis conditional dephasing of a state: the cq
    state obtained by measuring A in the (alpha, beta) basis."""
    ca, sa = np.cos(alpha), np.sin(alpha)
    phase = np.exp(1j * beta)
    a0 = np.array([ca, phase * sa])
    a1 = np.array([-np.conj(phase) * sa, ca])
    t = mat.reshape(2, 2, 2, 2)
    out = [alpha, beta]
    conds = []
    weights = []
    for v in (a0, a1):
        cond = np.einsum("a,abcd,c->bd", v.conj(), t, v)
        w = float(np.trace(cond).real)
        weights.append(max(w, 0.0))
        conds.append(cond / w if w > 1e-14 else np.eye(2, dtype=complex) / 2.0)
    total = weights[0] + weights[1]
    p = weights[0] / total if total > 0 else 0.5
    out.append(float(np.arcsin(np.sqrt(np.clip(p, 0.0, 1.0)))))
    for cond in conds:
        n = np.array([np.trace(cond @ s).real for s in PAULIS])
        out.extend(_bloch_to_params(n))
    return np.array(out)


def _kronecker_lattice(count: int, dims: int) -> np.ndarray:
    """Deterministic low-discrepancy points in the unit cube."""
    primes = np.array([2, 3, 5, 7, 11, 13, 17, 19, 23], dtype=float)[:dims]
    alpha = np.sqrt(primes) % 1.0
    k = np.arange(1, count + 1)[:, None]
    return (k * alpha) % 1.0


def _geo_starts(mat: np.ndarray, restarts: int) -> np.ndarray:
    starts = [_dephasing_start(mat, a, b) for a, b in _GEO_BASES[:restarts]]
    extra = restarts - len(starts)
    if extra > 0:
        lattice = _kronecker_lattice(extra, 9) * _GEO_SCALE
        starts.extend(lattice)
    return np.array(starts)


def geometric_discord_batch(mats: np.ndarray, *, restarts: int = 32,
                            fatol: float = 1e-12, maxiter: int = 2500):
    """Bures geometric discord for a stack of two-qubit states.

    Returns (values (S,), best raw parameters (S, 9), evals, converged (S,)).
    """
    mats = np.asarray(mats, dtype=complex)
    n_states = mats.shape[0]
    roots = batched_sqrt_psd(mats)
    x0 = np.concatenate([_geo_starts(m, restarts) for m in mats])
    lane_state = np.repeat(np.arange(n_states), restarts)

    def fn(points, lanes):
        sigma = _cq_matrices(points)
        a = roots[lane_state[lanes]]
        w = np.clip(np.linalg.eigvalsh(a @ sigma @ a), 0.0, None)
        # without the floor, sqrt turns O(eps) noise on zero eigenvalues
        # into an O(1e-8) jitter that stalls the simplex contraction
        w[w < w.max(axis=-1, keepdims=True) * tol.EIG_RELATIVE_FLOOR] = 0.0
        return -np.sqrt(w).sum(axis=1)

    xb, fb, evals, conv = nelder_mead_batched(
        fn, x0, step=0.15, fatol=fatol, maxiter=maxiter
    )
    fb = fb.reshape(n_states, restarts)
    xb = xb.reshape(n_states, restarts, 9)
    conv = conv.reshape(n_states, restarts)
    best = np.argmin(fb, axis=1)
    rows = np.arange(n_states)
    root_f = np.clip(-fb[rows, best], 0.0, 1.0)
    values = np.clip(_GEO_NORM * (1.0 - root_f), 0.0, 1.0)
    return values, xb[rows, best], evals, conv[rows, best]


def geometric_discord_bures(rho: DensityMatrix, *, restarts: int = 32,
                            fatol: float = 1e-12,
                            maxiter: int = 2500) -> GeometricDiscordResult:
    """Normalized Bures distance to the farthest-fidelity classical-quantum state."""
    _require_qubit_a(rho)
    if rho.dim_b != 2:
        raise UnsupportedDimensionError(
            f"classical-quantum search is parameterized for dim_b = 2, got {rho.dim_b}"
        )
    values, params, _, conv = geometric_discord_batch(
        rho.matrix[None], restarts=restarts, fatol=fatol, maxiter=maxiter
    )
    if not bool(conv[0]):
        raise OptimizerFailureError(
            "classical-quantum search did not reach the spread tolerance"
        )
    x = params[0]
    r1 = float(np.sin(x[5]) ** 2)
    r2 = float(np.sin(x[8]) ** 2)
    d1 = directions(x[None, 3:5])[0] * r1
    d2 = directions(x[None, 6:8])[0] * r2
    record = CqParameters(
        alpha=float(x[0] % np.pi),
        beta=float(x[1] % (2.0 * np.pi)),
        p=float(np.sin(x[2]) ** 2),
        bloch_1=tuple(float(v) for v in d1),
        bloch_2=tuple(float(v) for v in d2),
    )
    return GeometricDiscordResult(float(values[0]), record, restarts)
