"""Command-line entry points.

Subcommands: discord (single-state evaluation), scan (randomized purity
sweep), figure1 (response vs geometric comparison grid), boundary (piecewise
maximal curve), reading (discrimination error and spectrum sweep).

Exit codes: 0 success, 2 invalid input, 3 method/metric mismatch, 4 output
I/O failure.  Partially written output files are removed on failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DiscordLabError, OutOfRangeError
from .explorer import REGIONS, classify_region, composite_boundary, records_to_csv, scan
from .metrics import MetricKind
from .response import (
    DEFAULT_SETTINGS,
    OptimizerSettings,
    bell_diagonal_discord,
    bell_diagonal_discord_argmin,
    discord_of_response,
    geometric_discord_batch,
)
from .states import (
    BELL_BASIS,
    DensityMatrix,
    bell_diagonal,
    mq_family_b,
    mq_family_c,
    mq_family_d,
    purity,
    state_from_spec,
    werner,
)

TOL_ENV = "DISCORD_LAB_TOL"

_FAMILIES = ("werner", "bell_diagonal", "mq_b", "mq_c", "mq_d")


class MethodMismatch(Exception):
    """Requested method is not applicable to the given state or metric."""


@dataclass(frozen=True)
class RunConfig:
    """Resolved options for one CLI invocation."""

    command: str
    state_source: Optional[str] = None
    family: Optional[str] = None
    family_f: Optional[float] = None
    family_gamma: Optional[tuple] = None
    family_purity: Optional[float] = None
    metric: str = "bures"
    method: str = "optimize"
    samples: int = 100000
    seed: Optional[int] = None
    threads: int = 1
    output_path: Optional[str] = None
    grid_resolution: int = 40
    tolerance: Optional[float] = None


def _settings(config: RunConfig) -> OptimizerSettings:
    if config.tolerance is None:
        return DEFAULT_SETTINGS
    return OptimizerSettings(fatol=config.tolerance)


def _env_tolerance() -> Optional[float]:
    raw = os.environ.get(TOL_ENV)
    if raw is None or raw.strip() == "":
        return None
    try:
        value = float(raw)
    except ValueError:
        raise OutOfRangeError(f"{TOL_ENV} must be a float, got {raw!r}")
    if not 0.0 < value < 1.0:
        raise OutOfRangeError(f"{TOL_ENV} must lie in (0, 1), got {value}")
    return value


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _json_text(obj, indent: int = 0) -> str:
    """JSON with floats serialized at 17 significant digits."""
    pad = "  " * indent
    if isinstance(obj, dict):
        items = ",\n".join(
            f'{pad}  {json.dumps(k)}: {_json_text(v, indent + 1).lstrip()}'
            for k, v in obj.items()
        )
        return f"{pad}{{\n{items}\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        items = ",\n".join(_json_text(v, indent + 1) for v in obj)
        return f"{pad}[\n{items}\n{pad}]"
    if isinstance(obj, bool) or obj is None:
        return pad + json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return pad + str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return pad + _fmt(obj)
    return pad + json.dumps(obj)


def _emit(text: str, path: Optional[str]) -> None:
    """Write atomically to path, or to stdout when no path is given."""
    if path is None:
        sys.stdout.write(text)
        return
    tmp = path + ".tmp"
    try:
        with open(tmp, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError:
        for leftover in (tmp, path):
            try:
                if os.path.exists(leftover):
                    os.remove(leftover)
            except OSError:
                pass
        raise


def _load_state(config: RunConfig) -> DensityMatrix:
    if config.state_source is not None:
        try:
            with open(config.state_source, "r", encoding="utf-8") as fh:
                payload = json.load(fh)
        except OSError as exc:
            raise OutOfRangeError(f"cannot read state file: {exc}")
        except json.JSONDecodeError as exc:
            raise OutOfRangeError(f"state file is not valid JSON: {exc}")
        return state_from_spec(payload)
    if config.family is None:
        raise OutOfRangeError("provide either --state or --family")
    name = config.family
    if name == "werner":
        if config.family_f is None:
            raise OutOfRangeError("--family werner requires --f")
        return werner(config.family_f)
    if name == "bell_diagonal":
        if config.family_gamma is None:
            raise OutOfRangeError("--family bell_diagonal requires --gamma")
        return bell_diagonal(config.family_gamma)
    if config.family_purity is None:
        raise OutOfRangeError(f"--family {name} requires --purity")
    maker = {"mq_b": mq_family_b, "mq_c": mq_family_c, "mq_d": mq_family_d}[name]
    return maker(config.family_purity)


def _bell_projection(rho: DensityMatrix):
    """Bell-basis diagonal of rho, or None when off-diagonal weight remains."""
    mat = rho.matrix
    rot = BELL_BASIS.conj().T @ mat @ BELL_BASIS
    gamma = np.real(np.diag(rot)).copy()
    rebuilt = (BELL_BASIS * gamma) @ BELL_BASIS.conj().T
    if float(np.abs(mat - rebuilt).max()) > 1e-10:
        return None
    gamma = np.clip(gamma, 0.0, None)
    total = gamma.sum()
    if total <= 0.0:
        return None
    return tuple(gamma / total)


def cmd_discord(config: RunConfig) -> int:
    state = _load_state(config)
    metric = MetricKind(config.metric)
    if config.method == "analytic":
        if metric is not MetricKind.BURES:
            raise MethodMismatch(
                "analytic closed form is only available for the bures metric"
            )
        gamma = _bell_projection(state)
        if gamma is None:
            raise MethodMismatch(
                "analytic method requires a Bell-diagonal state; "
                "use --method optimize for general input"
            )
        value, angles = bell_diagonal_discord_argmin(gamma)
        theta, phi = angles.theta, angles.phi
    else:
        result = discord_of_response(state, metric, _settings(config))
        value, theta, phi = result.value, result.argmin.theta, result.argmin.phi
    report = {
        "metric": metric.value,
        "value": float(value),
        "argmin_theta": float(theta),
        "argmin_phi": float(phi),
        "method": config.method,
        "purity": purity(state),
    }
    _emit(_json_text(report) + "\n", config.output_path)
    return 0


def cmd_scan(config: RunConfig) -> int:
    if config.seed is None:
        raise OutOfRangeError("scan requires --seed")
    if config.samples < 1:
        raise OutOfRangeError(f"--samples must be >= 1, got {config.samples}")
    if config.threads < 1:
        raise OutOfRangeError(f"--threads must be >= 1, got {config.threads}")
    start = time.perf_counter()
    records = scan(config.samples, config.seed, workers=config.threads)
    wall = time.perf_counter() - start
    _emit(records_to_csv(records), config.output_path)
    if config.output_path is not None:
        meta = {
            "seed": int(config.seed),
            "samples": int(config.samples),
            "wall_time_s": float(wall),
        }
        _emit(_json_text(meta) + "\n", config.output_path + ".meta.json")
    return 0


def cmd_figure1(config: RunConfig) -> int:
    res = config.grid_resolution
    if res < 2:
        raise OutOfRangeError(f"--resolution must be >= 2, got {res}")
    g_axis = np.linspace(0.0, 0.5, res)
    t_axis = np.linspace(0.0, 1.0, res)
    gammas = []
    coords = []
    for g in g_axis:
        for t in t_axis:
            rest = 1.0 - 2.0 * g - t
            if rest < -1e-12:
                continue
            gammas.append((g, g, t, max(rest, 0.0)))
            coords.append((g, t))
    mats = np.stack([bell_diagonal(g).matrix for g in gammas])
    responses = [bell_diagonal_discord(g) for g in gammas]
    geo = np.empty(len(gammas))
    block = 64
    for lo in range(0, len(gammas), block):
        geo[lo:lo + block] = geometric_discord_batch(mats[lo:lo + block])[0]
    lines = ["gamma1,gamma3,d_response,d_geometric,difference"]
    for (g, t), dr, dg in zip(coords, responses, geo):
        lines.append(
            f"{_fmt(g)},{_fmt(t)},{_fmt(dr)},{_fmt(dg)},{_fmt(dr - dg)}"
        )
    _emit("\n".join(lines) + "\n", config.output_path)
    return 0


def cmd_boundary(config: RunConfig) -> int:
    res = config.grid_resolution
    if res < 2:
        raise OutOfRangeError(f"--resolution must be >= 2, got {res}")
    purities = np.linspace(REGIONS[0].purity_lo, 1.0, res)
    lines = ["purity,boundary,region"]
    for p in purities:
        lines.append(
            f"{_fmt(p)},{_fmt(composite_boundary(p))},{classify_region(p).label}"
        )
    _emit("\n".join(lines) + "\n", config.output_path)
    return 0


def cmd_reading(config: RunConfig) -> int:
    from .applications import (
        SpectrumOmega,
        min_distance_over_spectrum,
        trace_discord_of_response,
        worst_case_reading_error,
    )

    state = _load_state(config)
    settings = _settings(config)
    trace_value = trace_discord_of_response(state, settings)
    worst = worst_case_reading_error(state, settings)
    omegas = (np.pi / 8.0, np.pi / 4.0, 3.0 * np.pi / 8.0, np.pi / 2.0)
    distances = [
        min_distance_over_spectrum(state, SpectrumOmega(w), settings)
        for w in omegas
    ]
    harmonic = distances[-1]
    sweep = []
    for w, d in zip(omegas, distances):
        ratio = d / harmonic if harmonic > 1e-12 else 0.0
        sweep.append({
            "omega": float(w),
            "min_distance": float(d),
            "sin_omega": float(np.sin(w)),
            "ratio_to_harmonic": float(ratio),
        })
    report = {
        "trace_discord": float(trace_value),
        "worst_case_error": float(worst),
        "purity": purity(state),
        "omega_sweep": sweep,
    }
    _emit(_json_text(report) + "\n", config.output_path)
    return 0


def _add_state_flags(sub) -> None:
    sub.add_argument("--state", help="path to a JSON state description")
    sub.add_argument("--family", choices=_FAMILIES)
    sub.add_argument("--f", type=float, dest="family_f",
                     help="singlet weight for --family werner")
    sub.add_argument("--gamma", help="four comma-separated Bell weights")
    sub.add_argument("--purity", type=float, dest="family_purity",
                     help="target purity for the mq_* families")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discordlab",
        description="Response-based quantum correlation measures for "
                    "qubit-qudit states.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_discord = subs.add_parser("discord", help="evaluate one state")
    _add_state_flags(p_discord)
    p_discord.add_argument("--metric", default="bures",
                           choices=[m.value for m in MetricKind])
    p_discord.add_argument("--method", default="optimize",
                           choices=["optimize", "analytic"])
    p_discord.add_argument("--out", dest="output_path")

    p_scan = subs.add_parser("scan", help="random-state purity sweep")
    p_scan.add_argument("--samples", type=int, default=100000)
    p_scan.add_argument("--seed", type=int, required=True)
    p_scan.add_argument("--threads", type=int, default=1)
    p_scan.add_argument("--out", dest="output_path")

    p_fig = subs.add_parser("figure1",
                            help="response vs geometric comparison grid")
    p_fig.add_argument("--resolution", type=int, default=40,
                       dest="grid_resolution")
    p_fig.add_argument("--out", dest="output_path")

    p_bound = subs.add_parser("boundary", help="maximal discord curve")
    p_bound.add_argument("--resolution", type=int, default=200,
                         dest="grid_resolution")
    p_bound.add_argument("--out", dest="output_path")

    p_read = subs.add_parser("reading", help="discrimination error report")
    _add_state_flags(p_read)
    p_read.add_argument("--out", dest="output_path")

    return parser


def _parse_gamma(raw: Optional[str]):
    if raw is None:
        return None
    parts = raw.split(",")
    if len(parts) != 4:
        raise OutOfRangeError(
            f"--gamma needs four comma-separated values, got {len(parts)}"
        )
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise OutOfRangeError(f"--gamma values must be floats, got {raw!r}")


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        state_source=getattr(args, "state", None),
        family=getattr(args, "family", None),
        family_f=getattr(args, "family_f", None),
        family_gamma=_parse_gamma(getattr(args, "gamma", None)),
        family_purity=getattr(args, "family_purity", None),
        metric=getattr(args, "metric", "bures"),
        method=getattr(args, "method", "optimize"),
        samples=getattr(args, "samples", 100000),
        seed=getattr(args, "seed", None),
        threads=getattr(args, "threads", 1),
        output_path=getattr(args, "output_path", None),
        grid_resolution=getattr(args, "grid_resolution", 40),
        tolerance=_env_tolerance(),
    )


_COMMANDS = {
    "discord": cmd_discord,
    "scan": cmd_scan,
    "figure1": cmd_figure1,
    "boundary": cmd_boundary,
    "reading": cmd_reading,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        return _COMMANDS[args.command](config)
    except MethodMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DiscordLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: output failed: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
