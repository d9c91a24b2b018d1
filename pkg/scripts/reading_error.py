"""Reading-error and metrology sweep over the Werner family.

For each singlet weight f this evaluates the trace-metric response discord,
the worst-case discrimination error over harmonic unitary pairs, and the
interferometric power, then writes the sweep as CSV.
"""
import argparse
import sys

import numpy as np

from discordlab import (
    interferometric_power,
    purity,
    trace_discord_of_response,
    werner,
    worst_case_reading_error,
)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=30)
    ap.add_argument("--f-min", type=float, default=0.25)
    ap.add_argument("--f-max", type=float, default=1.0)
    ap.add_argument("--out", default="reading_error.csv")
    args = ap.parse_args(argv)

    rows = []
    for f in np.linspace(args.f_min, args.f_max, args.points):
        state = werner(f)
        rows.append((
            f,
            purity(state),
            trace_discord_of_response(state),
            worst_case_reading_error(state),
            interferometric_power(state),
        ))

    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write("f,purity,trace_discord,worst_case_error,interferometric_power\n")
        for row in rows:
            fh.write(",".join(f"{x:.17g}" for x in row) + "\n")

    print(f"{len(rows)} points -> {args.out}")
    first, last = rows[0], rows[-1]
    print(f"f={first[0]:.2f}: discord {first[2]:.4f}, error {first[3]:.4f}")
    print(f"f={last[0]:.2f}: discord {last[2]:.4f}, error {last[3]:.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
