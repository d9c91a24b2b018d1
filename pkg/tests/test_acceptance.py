"""Acceptance gate: one test (and one printed PASS/FAIL line) per shipping
criterion.  Run with ``pytest tests/test_acceptance.py -s`` to see the lines.

These are intentionally heavier than the unit suite (the scan criterion alone
draws 10^5 random states); expect the module to take several minutes on one
core.
"""
import time

import numpy as np

import discordlab as dl
from discordlab.explorer import (
    composite_boundary,
    observed_crossovers,
    records_to_csv,
    scan,
)
from discordlab.metrics import MetricKind, sandwich_check
from discordlab.response import response_objective, unitary_from_angles
from tests.conftest import apply_channel_on_b, random_cq_state, random_kraus_pair_on_b

SCAN_SAMPLES = 100_000
SCAN_SEED = 20260817


def _line(num: int, label: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"criterion {num:02d} {status}: {label}{suffix}")
    assert ok, f"criterion {num:02d} {label}{suffix}"


def test_01_bell_diagonal_closed_form_matches_optimizer():
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        gamma = rng.dirichlet(np.ones(4))
        closed = dl.bell_diagonal_discord(gamma)
        found = dl.discord_of_response(dl.bell_diagonal(gamma)).value
        worst = max(worst, abs(closed - found))
    elapsed = time.perf_counter() - start
    _line(1, "bell-diagonal closed form matches the optimizer",
          worst <= 1e-7 and elapsed < 60.0,
          f"worst |diff| {worst:.2e}, {elapsed:.1f}s")


def test_02_werner_closed_forms():
    worst_f = 0.0
    for f in np.linspace(0.0, 1.0, 50):
        closed = dl.werner_discord(f)
        found = dl.discord_of_response(dl.werner(f)).value
        worst_f = max(worst_f, abs(closed - found))
    worst_branch = 0.0
    for P in np.linspace(0.25, 1.0 / 3.0, 25):
        low, _ = dl.werner_f_roots(P)
        worst_branch = max(worst_branch, abs(
            dl.werner_discord_vs_purity(P, "plus") - dl.werner_discord(low)
        ))
    for P in np.linspace(0.25, 1.0, 25):
        _, high = dl.werner_f_roots(P)
        worst_branch = max(worst_branch, abs(
            dl.werner_discord_vs_purity(P, "minus") - dl.werner_discord(high)
        ))
    _line(2, "werner closed form and purity branches",
          worst_f <= 1e-8 and worst_branch <= 1e-10,
          f"vs optimizer {worst_f:.2e}, branch {worst_branch:.2e}")


def test_03_plateau_region():
    worst = 0.0
    for P in np.linspace(1.0 / 3.0, 0.39, 20):
        value = dl.discord_of_response(dl.mq_family_b(P)).value
        worst = max(worst, abs(value - 1.0 / 3.0))
    _line(3, "rank-3 family holds the 1/3 plateau", worst <= 1e-6,
          f"worst |D - 1/3| {worst:.2e}")


def test_04_response_dominates_geometric_on_grid():
    start = time.perf_counter()
    gammas = []
    for g in np.linspace(0.0, 0.5, 40):
        for t in np.linspace(0.0, 1.0, 40):
            rest = 1.0 - 2.0 * g - t
            if rest >= -1e-12:
                gammas.append((g, g, t, max(rest, 0.0)))
    responses = np.array([dl.bell_diagonal_discord(g) for g in gammas])
    mats = np.stack([dl.bell_diagonal(g).matrix for g in gammas])
    geo = np.empty(len(gammas))
    for lo in range(0, len(gammas), 64):
        geo[lo:lo + 64] = dl.geometric_discord_batch(
            mats[lo:lo + 64], restarts=32
        )[0]
    elapsed = time.perf_counter() - start
    gap = float((responses - geo).min())
    _line(4, "response discord dominates geometric discord on the grid",
          gap >= -1e-6 and elapsed < 600.0,
          f"{len(gammas)} points, min gap {gap:+.2e}, {elapsed:.0f}s")


def test_05_scan_respects_maximal_boundary():
    records = scan(SCAN_SAMPLES, SCAN_SEED, workers=1)
    excess = max(r.discord - composite_boundary(r.purity) for r in records)

    def worst_gap(maker, lo, hi):
        gaps = []
        for P in np.linspace(lo, hi, 8):
            d = dl.discord_of_response(maker(P)).value
            gaps.append(abs(d - composite_boundary(P)))
        return max(gaps)

    gap_b = worst_gap(dl.mq_family_b, 1.0 / 3.0 + 1e-9, 0.389)
    gap_d = worst_gap(dl.mq_family_d, 0.532, 0.938)
    gap_c = worst_gap(dl.mq_family_c, 0.392, 0.528)
    _line(5, "scan stays under the boundary and the families attain it",
          excess <= 1e-6 and gap_b <= 1e-6 and gap_d <= 1e-6 and gap_c <= 0.02,
          f"{len(records)} records, max excess {excess:+.2e}, "
          f"b {gap_b:.1e}, d {gap_d:.1e}, c {gap_c:.3f}")


def test_05b_observed_crossovers_near_printed_values():
    found = observed_crossovers()
    printed = {"bc": 0.39, "cd": 0.53, "de": 0.94}
    worst = max(abs(found[k] - printed[k]) for k in printed)
    _line(5, "region crossovers sit at the printed purities", worst <= 0.01,
          ", ".join(f"{k} {found[k]:.4f}" for k in ("bc", "cd", "de")))


def test_06_pure_state_discord_entanglement_relation():
    rng = np.random.default_rng(606)
    worst = 0.0
    for _ in range(500):
        psi = dl.random_pure(2, 2, rng)
        discord = dl.discord_of_response(psi).value
        ent = dl.entanglement_of_response_pure(psi)
        worst = max(worst, abs(discord - (1.0 - np.sqrt(1.0 - ent))))
    _line(6, "pure states: discord equals 1 - sqrt(1 - entanglement)",
          worst <= 1e-8, f"worst |diff| {worst:.2e}")


def test_07_trace_bures_sandwich():
    rng = np.random.default_rng(707)
    ok = True
    for _ in range(1000):
        a = dl.random_state(2, 2, rng)
        b = dl.random_state(2, 2, rng)
        ok = ok and sandwich_check(a, b, slack=1e-10).holds
    _line(7, "squared Bures <= trace <= twice Bures on random pairs", ok,
          "1000 pairs")


def test_08_subharmonic_spectra_scale_by_sine():
    rng = np.random.default_rng(808)
    worst_ratio = 0.0
    monotone = True
    for _ in range(200):
        rho = dl.random_state(2, 2, rng)
        harmonic = dl.min_distance_over_spectrum(rho, dl.SpectrumOmega(np.pi / 2))
        for w in (np.pi / 8, np.pi / 4, 3 * np.pi / 8):
            d = dl.min_distance_over_spectrum(rho, dl.SpectrumOmega(w))
            monotone = monotone and d <= harmonic + 1e-9
            if harmonic > 1e-9:
                worst_ratio = max(worst_ratio, abs(d / harmonic - np.sin(w)))
    _line(8, "narrow-spectrum distances are sine multiples of the harmonic one",
          monotone and worst_ratio <= 1e-6, f"worst ratio error {worst_ratio:.2e}")


def test_09_fast_objective_matches_fidelity_route():
    rng = np.random.default_rng(909)
    worst = 0.0
    for _ in range(500):
        rho = dl.random_state(2, 2, rng)
        angles = (rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi))
        fast = response_objective(rho, angles, MetricKind.BURES, fast=True)
        slow = response_objective(rho, angles, MetricKind.BURES, fast=False)
        worst = max(worst, abs(fast - slow))
    _line(9, "eigenvalue-sum objective matches the explicit fidelity objective",
          worst <= 1e-9, f"worst |diff| {worst:.2e}")


def test_10_faithfulness():
    rng = np.random.default_rng(1010)
    worst_cq = 0.0
    for _ in range(100):
        worst_cq = max(worst_cq, dl.discord_of_response(random_cq_state(rng)).value)
    least_generic = np.inf
    for _ in range(100):
        rho = dl.random_state(2, 2, rng)
        least_generic = min(least_generic, dl.discord_of_response(rho).value)
    _line(10, "zero exactly on classical-quantum states",
          worst_cq <= 1e-7 and least_generic > 1e-6,
          f"cq max {worst_cq:.2e}, generic min {least_generic:.2e}")


def test_11_invariance_and_contractivity():
    rng = np.random.default_rng(1111)
    metrics = (MetricKind.BURES, MetricKind.TRACE, MetricKind.HELLINGER)
    worst_inv = 0.0
    for i in range(100):
        metric = metrics[i % 3]
        rho = dl.random_state(2, 2, rng)
        u = np.kron(dl.haar_unitary(2, rng), dl.haar_unitary(2, rng))
        moved = dl.from_dense(u @ rho.matrix @ u.conj().T, 2, 2)
        worst_inv = max(worst_inv, abs(
            dl.discord_of_response(moved, metric).value
            - dl.discord_of_response(rho, metric).value
        ))
    worst_growth = -np.inf
    for i in range(100):
        metric = metrics[i % 3]
        rho = dl.random_state(2, 2, rng)
        mapped = dl.from_dense(
            apply_channel_on_b(rho.matrix, random_kraus_pair_on_b(rng)), 2, 2
        )
        worst_growth = max(worst_growth, (
            dl.discord_of_response(mapped, metric).value
            - dl.discord_of_response(rho, metric).value
        ))
    _line(11, "invariant under local unitaries, contractive under noise on B",
          worst_inv <= 1e-7 and worst_growth <= 1e-7,
          f"invariance {worst_inv:.2e}, growth {worst_growth:+.2e}")


def test_12_scan_is_deterministic_across_workers():
    lone = records_to_csv(scan(256, 909, workers=1))
    pooled = records_to_csv(scan(256, 909, workers=8))
    _line(12, "scan output is byte-identical for 1 and 8 workers",
          lone.encode() == pooled.encode(), "256 samples")
