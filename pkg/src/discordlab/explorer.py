"""Survey of the (purity, Bures response discord) plane.

Monte-Carlo scan of random two-qubit states, greedy hill-climbing at fixed
purity, the piecewise analytic upper boundary, and the purity-region table
with its observed family crossovers.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import OutOfRangeError
from .metrics import MetricKind
from .response import (
    DEFAULT_SETTINGS,
    OptimizerSettings,
    discord_batch,
    discord_of_response,
    werner_discord_vs_purity,
)
from .states import (
    DensityMatrix,
    from_dense,
    mq_family_c,
    mq_family_d_angle,
    purity,
    random_state,
)


@dataclass(frozen=True)
class BoundaryRecord:
    purity: float
    discord: float
    provenance: str
    seed_index: int


@dataclass(frozen=True)
class Region:
    label: str
    purity_lo: float
    purity_hi: float


REGIONS = (
    Region("a", 0.25, 1.0 / 3.0),
    Region("b", 1.0 / 3.0, 0.39),
    Region("c", 0.39, 0.53),
    Region("d", 0.53, 0.94),
    Region("e", 0.94, 1.0),
)

# lighter optimizer profile for bulk surveys; a consistency test pins it to the
# full default profile within 1e-9
SCAN_SETTINGS = OptimizerSettings(grid_theta=32, grid_phi=32, refine_starts=4)

_SCAN_CHUNK = 512


def classify_region(P: float) -> Region:
    """Containing region; shared endpoints resolve to the lower region."""
    p = _check_purity(P)
    for region in REGIONS:
        if p <= region.purity_hi + 1e-12:
            return region
    return REGIONS[-1]


def _check_purity(P: float) -> float:
    p = float(P)
    if not 0.25 - 1e-12 <= p <= 1.0 + 1e-12:
        raise OutOfRangeError(f"purity must lie in [1/4, 1], got {P}")
    return min(max(p, 0.25), 1.0)


def family_d_discord(P: float) -> float:
    """Bures response discord of the rank-2 boundary family, in closed form.

    The state lives on span{cos(eta)|00> + sin(eta)|11>, |10>}, so the
    eigenvalue-sum objective reduces to a 2x2 block whose trace norm is
    maximized either on the z axis or in the equatorial plane.
    """
    p = _check_purity(P)
    if p < 0.5:
        raise OutOfRangeError(f"rank-2 family needs purity >= 1/2, got {P}")
    d = (1.0 - math.sqrt(2.0 * p - 1.0)) / 2.0
    eta = mq_family_d_angle(p)
    axis = d + (1.0 - d) * abs(math.cos(2.0 * eta))
    planar = 2.0 * math.sqrt(max(d * (1.0 - d), 0.0)) * math.cos(eta)
    return float(np.clip(1.0 - max(axis, planar), 0.0, 1.0))


def region_c_curve(P: float) -> float:
    """Printed approximate boundary on the rank-3 stretch (constants rounded)."""
    p = float(P)
    r = math.sqrt(max((2.8 - p) * (p - 0.34), 0.0))
    inner = 0.013 * p * p + 0.19 + (0.09 * r - 0.09) * p - 0.2 * r
    return 0.3 * p - 0.35 * r + 0.88 - 1.7 * math.sqrt(max(inner, 0.0))


def composite_boundary(P: float) -> float:
    """Piecewise upper boundary of the admissible (purity, discord) region."""
    p = _check_purity(P)
    label = classify_region(p).label
    if label == "a":
        return werner_discord_vs_purity(p, "plus")
    if label == "b":
        return 1.0 / 3.0
    if label == "c":
        return region_c_curve(p)
    if label == "d":
        return family_d_discord(p)
    return werner_discord_vs_purity(p, "minus")


def observed_crossovers(settings: OptimizerSettings = DEFAULT_SETTINGS) -> dict:
    """Purities where adjacent boundary families actually intersect.

    The printed region edges are rounded to two decimals; this measures the
    crossings of the implemented family curves themselves.
    """
    def c_value(p):
        return discord_of_response(
            mq_family_c(p), MetricKind.BURES, settings
        ).value

    bc = brentq(lambda p: c_value(p) - 1.0 / 3.0, 0.36, 0.44, xtol=1e-6)
    cd = brentq(lambda p: c_value(p) - family_d_discord(p), 0.50, 0.545,
                xtol=1e-6)
    de = brentq(
        lambda p: family_d_discord(p) - werner_discord_vs_purity(p, "minus"),
        0.90, 0.975, xtol=1e-9,
    )
    return {"bc": float(bc), "cd": float(cd), "de": float(de)}


# --- Monte-Carlo scan ---------------------------------------------------------

def _sample_rng(seed: int, index: int) -> np.random.Generator:
    # one generator per sample so results never depend on chunking or workers
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index)]))


def _scan_chunk(seed: int, start: int, count: int,
                settings: OptimizerSettings) -> list[BoundaryRecord]:
    mats = np.empty((count, 4, 4), dtype=complex)
    purities = np.empty(count)
    for j in range(count):
        rho = random_state(2, 2, _sample_rng(seed, start + j))
        mats[j] = rho.matrix
        purities[j] = purity(rho)
    values, _, _, _ = discord_batch(mats, MetricKind.BURES, settings)
    return [
        BoundaryRecord(float(purities[j]), float(values[j]), "random", start + j)
        for j in range(count)
    ]


def scan(n_samples: int, seed: int, *, workers: int = 1,
         settings: OptimizerSettings = SCAN_SETTINGS) -> list[BoundaryRecord]:
    """Bures response discord of ``n_samples`` random states.

    Sample ``i`` is drawn from a generator derived from (seed, i), and work is
    split into fixed-size chunks reassembled in order, so output is identical
    for any worker count.
    """
    if n_samples < 1:
        raise OutOfRangeError(f"need at least one sample, got {n_samples}")
    spans = [
        (lo, min(_SCAN_CHUNK, n_samples - lo))
        for lo in range(0, n_samples, _SCAN_CHUNK)
    ]
    if workers <= 1:
        chunks = [_scan_chunk(seed, lo, c, settings) for lo, c in spans]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_scan_chunk, seed, lo, c, settings) for lo, c in spans
            ]
            chunks = [f.result() for f in futures]
    return [record for chunk in chunks for record in chunk]


def records_to_csv(records) -> str:
    """Serialize records with full float round-trip precision, LF endings."""
    lines = ["purity,discord,provenance,seed_index"]
    for r in records:
        lines.append(
            f"{r.purity:.17g},{r.discord:.17g},{r.provenance},{r.seed_index}"
        )
    return "\n".join(lines) + "\n"


# --- hill climbing --------------------------------------------------------------

def _project_to_purity(eigs: np.ndarray, target: float,
                       tol_purity: float = 1e-6) -> np.ndarray:
    """Rescale simplex deviations from uniform so sum(w^2) hits the target."""
    d = eigs.size
    w = np.clip(eigs, 0.0, None)
    w = w / w.sum()
    uniform = 1.0 / d
    for _ in range(100):
        dev = w - uniform
        norm2 = float(dev @ dev)
        if norm2 < 1e-30:
            if abs(target - uniform) < tol_purity:
                return w
            # re-seed a direction when starting exactly at the center
            dev = np.linspace(-1.0, 1.0, d)
            dev -= dev.mean()
            norm2 = float(dev @ dev)
        t = math.sqrt(max(target - uniform, 0.0) / norm2)
        w = uniform + t * dev
        if w.min() >= 0.0:
            break
        w = np.clip(w, 0.0, None)
        w = w / w.sum()
    current = float(w @ w)
    if abs(current - target) > tol_purity:
        raise OutOfRangeError(
            f"cannot reach purity {target} from this spectrum (got {current})"
        )
    return w


def hill_climb(start: DensityMatrix, steps: int, step_size: float,
               rng: np.random.Generator, *,
               settings: OptimizerSettings = SCAN_SETTINGS,
               final_settings: OptimizerSettings = DEFAULT_SETTINGS) -> BoundaryRecord:
    """Greedy discord ascent under random Hermitian kicks at fixed purity.

    Each proposal perturbs the state, restores positivity and unit trace, and
    rescales the eigenvalue deviations to the starting purity; kicks shrink on
    rejection. The returned record re-evaluates the winner at full precision.
    """
    target = purity(start)
    current = np.asarray(start.matrix, dtype=complex)
    best_val = float(
        discord_batch(current[None], MetricKind.BURES, settings)[0][0]
    )
    sigma = float(step_size)
    d = current.shape[0]
    held = None  # a direction that just worked is retried until it fails
    for _ in range(int(steps)):
        if held is None:
            g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            h = (g + g.conj().T) / 2.0
            h /= np.linalg.norm(h)
        else:
            h = held
        cand = current + sigma * h
        cand = (cand + cand.conj().T) / 2.0
        w, v = np.linalg.eigh(cand)
        try:
            w = _project_to_purity(w, target)
        except OutOfRangeError:
            sigma *= 0.9
            held = None
            continue
        cand = (v * w) @ v.conj().T
        val = float(discord_batch(cand[None], MetricKind.BURES, settings)[0][0])
        if val > best_val:
            best_val = val
            current = cand
            held = h
            sigma = min(sigma * 1.1, step_size * 4.0)
        else:
            held = None
            sigma = max(sigma * 0.95, step_size * 1e-3)
    final_state = from_dense(current, start.dim_a, start.dim_b)
    final = discord_of_response(final_state, MetricKind.BURES, final_settings)
    return BoundaryRecord(float(purity(final_state)), final.value,
                          "hill_climbed", -1)
