"""Acceptance gate: the quantitative claims this package exists to verify.

Each test checks one headline property end to end at its stated tolerance
and prints a single machine-readable pass/fail line (run with ``pytest -s``
to see them).  Everything is exact dense numerics; nothing here is
stochastic.
"""

import math
import time
import warnings

import numpy as np

from supercoherent.basis import enumerate_paths, path_multiplicity
from supercoherent.cli import EXIT_OK, main
from supercoherent.lindblad import (
    build_model,
    evolve,
    liouvillian,
    thermal_occupation,
)
from supercoherent.logical import (
    eight_qubit_ground_space,
    encode,
    fidelity_grid_optimum,
    gate_fidelity,
    logical_algebra_rank,
    projected_generator,
)
from supercoherent.operators import (
    AXES,
    SystemSpec,
    collective_hamiltonian,
    single_spin_operator,
    total_spin_squared,
)
from supercoherent.selection import (
    ground_block,
    selection_rule_scan,
    step_identity_residual,
)


def _report(index: int, name: str, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {index:02d}] {status} {name}: {detail}")
    assert ok, f"criterion {index:02d} {name}: {detail}"


def test_criterion_01_hamiltonian_identity_and_spectrum():
    start = time.perf_counter()
    worst = 0.0
    for n in (2, 3, 4, 8):
        spec = SystemSpec(n, 1.0)
        direct = collective_hamiltonian(spec, "spin-squared")
        pairwise = collective_hamiltonian(spec, "pairwise-heisenberg")
        worst = max(worst, float(np.abs(direct - pairwise).max()))
    evals = np.linalg.eigvalsh(collective_hamiltonian(SystemSpec(4, 1.0)))
    counts = {}
    for e in evals:
        key = round(float(e), 6) + 0.0  # normalize -0.0
        counts[key] = counts.get(key, 0) + 1
    spectrum_ok = counts == {0.0: 2, 1.0: 9, 3.0: 5}
    elapsed = time.perf_counter() - start
    ok = worst < 1e-12 and spectrum_ok and elapsed < 1.0
    _report(
        1,
        "hamiltonian-identity-and-spectrum",
        ok,
        f"form mismatch {worst:.2e}, levels {counts}, {elapsed:.2f}s",
    )


def test_criterion_02_ground_degeneracy_counts():
    start = time.perf_counter()
    paths4 = enumerate_paths(4, 0.0)
    paths8 = enumerate_paths(8, 0.0)
    count_ok = len(paths4) == 2 and len(paths8) == 14
    formula_ok = path_multiplicity(4, 0.0) == 2 and path_multiplicity(8, 0.0) == 14
    # independent oracle: dimension of the zero eigenspace of the spin square
    null4 = int(np.sum(np.abs(np.linalg.eigvalsh(total_spin_squared(4, 4))) < 1e-8))
    null8 = int(np.sum(np.abs(np.linalg.eigvalsh(total_spin_squared(8, 8))) < 1e-8))
    eigen_ok = null4 == 2 and null8 == 14
    elapsed = time.perf_counter() - start
    ok = count_ok and formula_ok and eigen_ok and elapsed < 5.0
    _report(
        2,
        "ground-degeneracy-counts",
        ok,
        f"paths 4:{len(paths4)} 8:{len(paths8)}, eigenspaces 4:{null4} 8:{null8}, "
        f"{elapsed:.2f}s",
    )


def test_criterion_03_step_identity():
    start = time.perf_counter()
    worst = 0.0
    for n in (2, 3, 4):
        for axis in AXES:
            worst = max(worst, step_identity_residual(n, axis))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-10 and elapsed < 10.0
    _report(3, "step-identity", ok, f"worst residual {worst:.2e}, {elapsed:.2f}s")


def test_criterion_04_selection_rules():
    worst_dj = 0.0
    worst_ground = 0.0
    for qubit in range(1, 5):
        for axis in AXES:
            report = selection_rule_scan(4, qubit, axis)
            worst_dj = max(worst_dj, report.max_forbidden_delta_j)
            worst_ground = max(worst_ground, report.max_ground_to_ground)
    ok = worst_dj < 1e-12 and worst_ground < 1e-12
    _report(
        4,
        "selection-rules",
        ok,
        f"|delta J| > 1 elements {worst_dj:.2e}, ground-to-ground {worst_ground:.2e}",
    )


def test_criterion_05_error_detection():
    worst = 0.0
    for qubit in range(1, 5):
        for axis in AXES:
            block = ground_block(single_spin_operator(axis, qubit, 4))
            worst = max(worst, float(np.abs(block).max()))
    two_qubit = ground_block(
        single_spin_operator("z", 1, 4) @ single_spin_operator("z", 2, 4)
    )
    scalar_part = (np.trace(two_qubit) / 2.0) * np.eye(2)
    deviation = float(np.abs(two_qubit - scalar_part).max())
    ok = worst < 1e-12 and deviation > 1e-3
    _report(
        5,
        "error-detection",
        ok,
        f"single-qubit blocks {worst:.2e}, two-qubit deviation {deviation:.2e}",
    )


def test_criterion_06_thermal_leakage_scaling(thermal_sweep):
    rates, elapsed = thermal_sweep
    ratio = rates[4.0] / rates[2.0]
    expected = thermal_occupation(4.0, 1.0) / thermal_occupation(2.0, 1.0)
    ratio_err = abs(ratio / expected - 1.0)
    xs = np.array([3.0, 4.0, 5.0, 6.0])
    slope = float(np.polyfit(xs, np.log([rates[x] for x in xs]), 1)[0])
    ok = ratio_err < 0.05 and abs(slope + 1.0) < 0.1 and elapsed < 120.0
    _report(
        6,
        "thermal-leakage-scaling",
        ok,
        f"rate ratio off by {ratio_err:.1%}, log-slope {slope:.3f}, {elapsed:.1f}s",
    )


def test_criterion_07_zero_temperature_fixed_point():
    spec = SystemSpec(4, 1.0)
    model = build_model(spec, math.inf, g=0.1, gamma0=0.0)
    psi = encode(0.6, 0.8j).vector
    rho = np.outer(psi, psi.conj())
    generator_norm = float(np.abs(liouvillian(model) @ rho.reshape(-1)).max())
    trajectory = evolve(model, rho, 100.0 / spec.delta)
    worst_leak = float(trajectory.leakage.max())
    drift = float(np.abs(trajectory.states[-1] - rho).max())
    ok = worst_leak < 1e-10 and generator_norm < 1e-12
    _report(
        7,
        "zero-temperature-fixed-point",
        ok,
        f"leakage {worst_leak:.2e} over t=100, generator {generator_norm:.2e}, "
        f"state drift {drift:.2e}",
    )


def test_criterion_08_logical_su2():
    g12 = projected_generator((1, 2))
    diag_err = float(np.abs(g12 - np.diag([-1.0, 1.0])).max())
    rank = logical_algebra_rank((1, 2), (2, 3))
    ok = diag_err < 1e-12 and rank == 3
    _report(8, "logical-su2", ok, f"E12 block error {diag_err:.2e}, algebra rank {rank}")


def test_criterion_09_gate_tradeoff_optimum():
    worst_arg = 0.0
    worst_val = 0.0
    for beta in (1.0, 2.0, 5.0):
        numeric, value = fidelity_grid_optimum(beta, 1.0, 1e-3)
        worst_arg = max(worst_arg, abs(numeric - 1.0 / beta))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")  # beta = 1 puts the optimum at the gap
            analytic = gate_fidelity(1.0 / beta, 1.0, beta)
        closed_form = (1.0 / beta) * math.exp(beta - 1.0)
        worst_val = max(worst_val, abs(value - closed_form), abs(analytic - closed_form))
    ok = worst_arg <= 1e-3 + 1e-12 and worst_val < 1e-9
    _report(
        9,
        "gate-tradeoff-optimum",
        ok,
        f"argmax off by {worst_arg:.2e} (grid 1e-3), value off by {worst_val:.2e}",
    )


def test_criterion_10_eight_qubit_ground_space():
    summary = eight_qubit_ground_space()
    ok = (
        summary.dimension == 14
        and summary.product_residual < 1e-10
        and summary.exchange_residual < 1e-10
    )
    _report(
        10,
        "eight-qubit-ground-space",
        ok,
        f"dimension {summary.dimension}, product residual "
        f"{summary.product_residual:.2e}, exchange residual "
        f"{summary.exchange_residual:.2e} over 28 pairs",
    )


def test_criterion_11_cli_determinism(tmp_path):
    invocations = [
        ["spectrum", "--n", "4", "--delta", "1.0"],
        ["spectrum", "--n", "4", "--format", "json"],
        ["paths", "--n", "8", "--j", "0"],
        ["selection", "--n", "4"],
        ["lindblad", "--beta-list", "2,4", "--g", "0.1"],
        ["fidelity", "--beta-list", "1,2,5"],
    ]
    identical = True
    for index, args in enumerate(invocations):
        first = tmp_path / f"run{index}a.out"
        second = tmp_path / f"run{index}b.out"
        for path in (first, second):
            code = main(args + ["--out", str(path)])
            identical = identical and code == EXIT_OK
        identical = identical and first.read_bytes() == second.read_bytes()
    _report(
        11,
        "cli-determinism",
        identical,
        f"{len(invocations)} invocations, each run twice, byte-identical outputs",
    )
