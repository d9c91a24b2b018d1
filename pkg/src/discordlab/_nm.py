"""Vectorized multi-start Nelder-Mead simplex minimizer.

Runs many independent simplex searches in lockstep so the objective can be
evaluated as one batched numpy call per phase. Lanes that reach the value
spread tolerance retire from the working set, so cost tracks the number of
still-active lanes. Everything is deterministic: no randomness, stable sorts,
mask-driven branching.
"""
from __future__ import annotations

from typing import Callable

import numpy as np

from . import tolerances as tol

# objective: fn(points (m, n), lane_indices (m,)) -> values (m,)
Objective = Callable[[np.ndarray, np.ndarray], np.ndarray]


def nelder_mead_batched(
    fn: Objective,
    x0: np.ndarray,
    *,
    step,
    fatol: float = tol.DEFAULT_FATOL,
    maxiter: int = 500,
):
    """Minimize ``fn`` independently in every lane of ``x0``.

    :param fn: batched objective; receives stacked points and the global lane
        index of each point (so per-lane constants can be gathered).
    :param x0: (L, n) starting points, one simplex seeded per lane.
    :param step: initial simplex edge length, scalar or per-coordinate (n,).
    :param fatol: a lane converges when max-min of its simplex values <= fatol.
    :param maxiter: iteration cap per lane.
    :returns: (xbest (L, n), fbest (L,), evals, converged (L,) bool)
    """
    x0 = np.atleast_2d(np.asarray(x0, dtype=float))
    lanes, n = x0.shape
    step = np.broadcast_to(np.asarray(step, dtype=float), (n,))

    simplex = np.repeat(x0[:, None, :], n + 1, axis=1)
    for k in range(n):
        simplex[:, k + 1, k] += step[k]

    all_ids = np.arange(lanes)
    flat_pts = simplex.reshape(lanes * (n + 1), n)
    flat_ids = np.repeat(all_ids, n + 1)
    values = np.asarray(fn(flat_pts, flat_ids), dtype=float).reshape(lanes, n + 1)
    evals = lanes * (n + 1)

    converged = np.zeros(lanes, dtype=bool)
    active = all_ids.copy()

    for _ in range(maxiter):
        order = np.argsort(values[active], axis=1, kind="stable")
        sub = np.arange(active.size)[:, None]
        simplex[active] = simplex[active][sub, order]
        values[active] = values[active][sub, order]

        spread = values[active, -1] - values[active, 0]
        done = spread <= fatol
        converged[active[done]] = True
        active = active[~done]
        if active.size == 0:
            break

        sx = simplex[active]
        sv = values[active]
        centroid = sx[:, :n, :].mean(axis=1)
        xworst = sx[:, n, :]
        fbest, fsecond, fworst = sv[:, 0], sv[:, n - 1], sv[:, n]

        xrefl = 2.0 * centroid - xworst
        frefl = np.asarray(fn(xrefl, active), dtype=float)
        evals += active.size

        expand_mask = frefl < fbest
        accept_mask = ~expand_mask & (frefl < fsecond)
        contract_mask = ~expand_mask & ~accept_mask
        outside = contract_mask & (frefl < fworst)

        second_pts = np.where(
            expand_mask[:, None],
            3.0 * centroid - 2.0 * xworst,                      # expansion
            np.where(
                outside[:, None],
                1.5 * centroid - 0.5 * xworst,                  # outside contraction
                0.5 * centroid + 0.5 * xworst,                  # inside contraction
            ),
        )
        need_second = expand_mask | contract_mask
        fsecond_eval = np.full(active.size, np.inf)
        if need_second.any():
            idx = np.flatnonzero(need_second)
            fsecond_eval[idx] = np.asarray(
                fn(second_pts[idx], active[idx]), dtype=float
            )
            evals += idx.size

        new_pt = xrefl.copy()
        new_val = frefl.copy()

        take_exp = expand_mask & (fsecond_eval < frefl)
        new_pt[take_exp] = second_pts[take_exp]
        new_val[take_exp] = fsecond_eval[take_exp]

        ok_out = outside & (fsecond_eval <= frefl)
        ok_in = contract_mask & ~outside & (fsecond_eval < fworst)
        take_con = ok_out | ok_in
        new_pt[take_con] = second_pts[take_con]
        new_val[take_con] = fsecond_eval[take_con]

        shrink = contract_mask & ~take_con
        replace = ~shrink
        if replace.any():
            ridx = np.flatnonzero(replace)
            simplex[active[ridx], n, :] = new_pt[ridx]
            values[active[ridx], n] = new_val[ridx]

        if shrink.any():
            sidx = active[np.flatnonzero(shrink)]
            best = simplex[sidx, 0, :][:, None, :]
            shrunk = best + 0.5 * (simplex[sidx, 1:, :] - best)
            simplex[sidx, 1:, :] = shrunk
            flat = shrunk.reshape(sidx.size * n, n)
            ids = np.repeat(sidx, n)
            values[sidx, 1:] = np.asarray(fn(flat, ids), dtype=float).reshape(
                sidx.size, n
            )
            evals += sidx.size * n

    order = np.argsort(values, axis=1, kind="stable")
    first = order[:, 0]
    xbest = simplex[all_ids, first]
    fbest = values[all_ids, first]
    return xbest, fbest, evals, converged
