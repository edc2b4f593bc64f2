"""Selection rules for single-qubit spin operators in the labeled basis.

The final-step operator O on n qubits satisfies {O, s_axis^(n)} =
S_axis^(n).  Taken between labeled basis states this gives

    (O_bra + O_ket) <bra| s_axis^(n) |ket> = m delta_{labels},

where O_* are the +-(J_{n-1} + 1/2) step values of the two paths.  Every
selection rule checked here follows: matrix elements of a single-qubit
spin component vanish unless the total spin changes by at most one, and
the J = 0 multiplets connect only to J = 1 (never to each other), which
is what makes the ground multiplets of the collective Hamiltonian an
error-detecting code for single-qubit errors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import (
    LabeledState,
    basis_matrix,
    build_basis_state,
    enumerate_paths,
    full_labeled_basis,
)
from .operators import (
    AXES,
    Axis,
    _check_axis,
    _check_qubit_count,
    _check_qubit_index,
    exchange_operator,
    single_spin_operator,
)

# matrix elements forbidden by a selection rule must vanish to this tolerance
FORBIDDEN_ATOL = 1e-12
# residuals of operator identities built from sums of many terms
IDENTITY_ATOL = 1e-10
# largest register for which exhaustive scans stay cheap
MAX_SCAN_QUBITS = 8


def matrix_element(bra: LabeledState, op: np.ndarray, ket: LabeledState) -> complex:
    """<bra| op |ket> for labeled states of matching dimension."""
    if bra.vector.shape != ket.vector.shape:
        raise ValueError("bra and ket live in different registers")
    if op.shape != (bra.vector.shape[0], ket.vector.shape[0]):
        raise ValueError(f"operator shape {op.shape} does not match the states")
    return complex(bra.vector.conj() @ op @ ket.vector)


def _scan_size_check(n: int) -> None:
    _check_qubit_count(n)
    if n > MAX_SCAN_QUBITS:
        raise ValueError(f"exhaustive scans are limited to n <= {MAX_SCAN_QUBITS}, got {n}")


def step_identity_residual(n: int, axis: Axis = "z") -> float:
    """Worst-case residual of the anticommutator identity on all label pairs.

    Computes max |(O_bra + O_ket) <bra| s_axis^(n) |ket> - m delta| over
    the complete labeled basis quantized along ``axis``.
    """
    _check_axis(axis)
    _scan_size_check(n)
    if n < 2:
        raise ValueError("the step identity needs at least 2 qubits")
    states = full_labeled_basis(n, axis)
    matrix = basis_matrix(states)
    spin = single_spin_operator(axis, n, n)
    elements = matrix.conj().T @ spin @ matrix
    step_values = np.array([s.path.step_value for s in states])
    projections = np.array([s.m for s in states])
    lhs = (step_values[:, None] + step_values[None, :]) * elements
    residual = lhs - np.diag(projections)
    return float(np.abs(residual).max())


@dataclass(frozen=True)
class MatrixElementReport:
    """Exhaustive matrix elements of one single-qubit spin component.

    ``elements[a, b]`` is <states[a]| s_axis^(qubit) |states[b]>.  The
    summary fields hold the largest magnitudes found in sectors that the
    selection rules say must vanish.
    """

    n: int
    qubit: int
    axis: Axis
    states: tuple[LabeledState, ...]
    elements: np.ndarray
    max_forbidden_delta_j: float
    max_ground_to_ground: float
    max_ground_off_partner: float
    sector_counts: tuple[tuple[float, float, int], ...]

    @property
    def respects_selection_rules(self) -> bool:
        worst = max(
            self.max_forbidden_delta_j,
            self.max_ground_to_ground,
            self.max_ground_off_partner,
        )
        return worst < FORBIDDEN_ATOL

    def nonzero_elements(self, threshold: float = FORBIDDEN_ATOL):
        """Yield (bra, ket, value) for every element above ``threshold``."""
        rows, cols = np.nonzero(np.abs(self.elements) > threshold)
        for a, b in zip(rows, cols):
            yield self.states[a], self.states[b], complex(self.elements[a, b])


def selection_rule_scan(n: int, qubit: int, axis: Axis = "z") -> MatrixElementReport:
    """All labeled-basis matrix elements of s_axis^(qubit) on ``n`` qubits."""
    _check_axis(axis)
    _scan_size_check(n)
    _check_qubit_index(qubit, n)
    states = full_labeled_basis(n, axis)
    matrix = basis_matrix(states)
    spin = single_spin_operator(axis, qubit, n)
    elements = matrix.conj().T @ spin @ matrix

    j_final = np.array([s.final_j for s in states])
    delta_j = np.abs(j_final[:, None] - j_final[None, :])
    magnitude = np.abs(elements)

    forbidden = delta_j > 1.0 + 1e-9
    max_forbidden = float(magnitude[forbidden].max()) if forbidden.any() else 0.0

    ground = j_final == 0.0
    both_ground = ground[:, None] & ground[None, :]
    max_ground_to_ground = float(magnitude[both_ground].max()) if both_ground.any() else 0.0

    partner = j_final == 1.0
    off_partner = (ground[:, None] & ~partner[None, :] & ~ground[None, :]) | (
        ground[None, :] & ~partner[:, None] & ~ground[:, None]
    )
    max_ground_off_partner = float(magnitude[off_partner].max()) if off_partner.any() else 0.0

    counts: dict[tuple[float, float], int] = {}
    rows, cols = np.nonzero(magnitude > FORBIDDEN_ATOL)
    for a, b in zip(rows, cols):
        key = (float(j_final[a]), float(j_final[b]))
        counts[key] = counts.get(key, 0) + 1
    sector_counts = tuple((jb, jk, counts[(jb, jk)]) for jb, jk in sorted(counts))

    return MatrixElementReport(
        n=n,
        qubit=qubit,
        axis=axis,
        states=tuple(states),
        elements=elements,
        max_forbidden_delta_j=max_forbidden,
        max_ground_to_ground=max_ground_to_ground,
        max_ground_off_partner=max_ground_off_partner,
        sector_counts=sector_counts,
    )


def ground_codewords(n: int = 4) -> tuple[LabeledState, ...]:
    """Labeled J = 0 states of the register, in lexicographic path order."""
    _scan_size_check(n)
    if n % 2 != 0:
        raise ValueError(f"only even registers have J = 0 multiplets, got n={n}")
    return tuple(build_basis_state(p, 0.0, "z") for p in enumerate_paths(n, 0.0))


def ground_block(op: np.ndarray, n: int = 4) -> np.ndarray:
    """Matrix of ``op`` restricted to the J = 0 multiplets of ``n`` qubits."""
    codewords = ground_codewords(n)
    matrix = basis_matrix(list(codewords))
    if op.shape != (matrix.shape[0], matrix.shape[0]):
        raise ValueError(f"operator shape {op.shape} does not match n={n}")
    return matrix.conj().T @ op @ matrix


def error_detection_check(n: int = 4) -> tuple[bool, float]:
    """Verify that every single-qubit spin component vanishes on the code space.

    Returns (passed, worst magnitude) over all qubits and axes: the
    projected blocks P_0 s_axis^(i) P_0 must be zero for the J = 0
    multiplets to detect arbitrary single-qubit errors.
    """
    worst = 0.0
    for i in range(1, n + 1):
        for axis in AXES:
            block = ground_block(single_spin_operator(axis, i, n), n)
            worst = max(worst, float(np.abs(block).max()))
    return worst < FORBIDDEN_ATOL, worst


def exchange_conjugation_check(i: int, n: int, axis: Axis = "z") -> float:
    """Residual of s_axis^(i) = E_{i n} s_axis^(n) E_{i n}.

    Conjugating the last-qubit spin by the exchange with qubit ``i``
    relocates it, which is how the step identity for the last qubit
    constrains every other qubit as well.
    """
    _check_axis(axis)
    _check_qubit_count(n)
    _check_qubit_index(i, n)
    if i == n:
        raise ValueError("pick a qubit other than the last one")
    swap = exchange_operator(i, n, n)
    relocated = swap @ single_spin_operator(axis, n, n) @ swap
    return float(np.abs(relocated - single_spin_operator(axis, i, n)).max())
