#!/usr/bin/env python3
"""Fit the ground-leakage rate across temperatures and check Boltzmann scaling.

For each inverse temperature the script prepares an encoded state, evolves it
under the thermal jump model, fits an exponential to the ground-sector
population, and compares the fitted rate against the first-order prediction:
3 g^2 n(beta, delta), the three absorption channels out of the ground sector,
each opening across the delta gap to the first excited sector.

Example:
    python3 scripts/run_temperature_sweep.py --betas 2,3,4,5,6 --g 0.1
"""

import argparse
import csv
import math
import sys

import numpy as np

from supercoherent import SystemSpec, temperature_sweep


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--betas",
        default="2,3,4,5,6",
        help="comma-separated inverse temperatures in units of 1/delta",
    )
    parser.add_argument("--delta", type=float, default=1.0, help="interaction gap")
    parser.add_argument("--g", type=float, default=0.1, help="bath coupling")
    parser.add_argument("--out", default=None, help="optional CSV output path")
    args = parser.parse_args(argv)

    betas = [float(b) for b in args.betas.split(",") if b.strip()]
    spec = SystemSpec(4, args.delta)
    points = temperature_sweep(spec, betas, g=args.g)

    print(f"n=4, delta={args.delta}, g={args.g}")
    print(f"{'beta':>8} {'occupation':>14} {'gamma_fit':>14} {'gamma/theory':>14}")
    first_order = 3.0 * args.g**2
    for point in points:
        theory = first_order * point.occupation
        ratio = point.gamma / theory if theory > 0 else math.nan
        print(
            f"{point.beta:8.3f} {point.occupation:14.6e} "
            f"{point.gamma:14.6e} {ratio:14.6f}"
        )

    usable = [p for p in points if 3.0 <= p.beta * args.delta <= 6.0]
    if len(usable) >= 2:
        xs = np.array([p.beta * args.delta for p in usable])
        ys = np.log([p.gamma for p in usable])
        slope = np.polyfit(xs, ys, 1)[0]
        print(f"log(gamma) slope vs beta*delta over [3, 6]: {slope:.4f} (expect -1)")

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(["beta", "occupation", "gamma_fit"])
            for point in points:
                writer.writerow([point.beta, point.occupation, point.gamma])
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
