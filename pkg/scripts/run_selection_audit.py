#!/usr/bin/env python3
"""Audit single-spin matrix elements against the sector selection rules.

Scans every single-spin operator component in the labeled angular-momentum
basis and tabulates, per qubit and axis, the largest matrix element that
would violate the rules: total-sector changes beyond +-1, and any coupling
between the two ground-sector states.  Also reports the ladder identity
residual for the last spin and, for four qubits, the error-detection check
on the ground block.

Example:
    python3 scripts/run_selection_audit.py --n 4
"""

import argparse
import sys

from supercoherent import (
    AXES,
    error_detection_check,
    selection_rule_scan,
    step_identity_residual,
)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=4, help="number of qubits (2-8)")
    args = parser.parse_args(argv)
    n = args.n

    print(f"{n} qubits")
    print("ladder identity residual for the last spin:")
    for axis in AXES:
        print(f"  axis {axis}: {step_identity_residual(n, axis):.3e}")

    print(
        f"{'qubit':>6} {'axis':>5} {'|dJ|>1':>11} {'ground->ground':>15} "
        f"{'sectors touched':>20}"
    )
    for qubit in range(1, n + 1):
        for axis in AXES:
            report = selection_rule_scan(n, qubit, axis)
            sectors = ", ".join(
                f"{a:g}->{b:g}" for a, b, count in report.sector_counts if count
            )
            print(
                f"{qubit:6d} {axis:>5} {report.max_forbidden_delta_j:11.3e} "
                f"{report.max_ground_to_ground:15.3e}   {sectors}"
            )

    if n == 4:
        passed, worst = error_detection_check()
        verdict = "pass" if passed else "FAIL"
        print(
            f"error detection on the two-dimensional ground block: {verdict} "
            f"(largest single-spin element {worst:.3e})"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
