"""Collective-spin operators on n qubits as dense complex matrices.

Conventions, used consistently across the package:

* spin components are half the Pauli matrices (hbar = 1), so a single
  qubit satisfies [s_x, s_y] = i s_z;
* qubit 1 is the leftmost (most significant) tensor factor: the
  computational basis state |b1 b2 ... bn> has index
  b1 * 2^(n-1) + ... + bn, and |0> is spin up (projection +1/2 along z);
* everything is a dense complex double-precision matrix.  The qubit count
  is capped at 10 (dimension 1024), which keeps exact diagonalization
  cheap and removes any need for sparse machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

Axis = Literal["x", "y", "z"]

AXES: tuple[Axis, Axis, Axis] = ("x", "y", "z")

MAX_QUBITS = 10

# absolute tolerance for Hermiticity checks and entrywise operator identities
MATRIX_ATOL = 1e-12
# absolute tolerance when matching eigenvalues to J(J+1) multiplets
EIGENVALUE_ATOL = 1e-8

_PAULI: dict[str, np.ndarray] = {
    "x": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}

HamiltonianForm = Literal["spin-squared", "pairwise-heisenberg"]


def _check_axis(axis: str) -> None:
    if axis not in _PAULI:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")


def _check_qubit_count(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise ValueError(f"qubit count must be an integer, got {n!r}")
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"qubit count must be in 1..{MAX_QUBITS}, got {n}")


def _check_qubit_index(i: int, n: int) -> None:
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)):
        raise ValueError(f"qubit index must be an integer, got {i!r}")
    if not 1 <= i <= n:
        raise ValueError(f"qubit index must be in 1..{n}, got {i}")


def levi_civita(alpha: str, beta: str, gamma: str) -> int:
    """Totally antisymmetric symbol on the axis labels (x, y, z)."""
    order = "xyz"
    for label in (alpha, beta, gamma):
        _check_axis(label)
    if len({alpha, beta, gamma}) < 3:
        return 0
    perm = order.index(alpha), order.index(beta), order.index(gamma)
    even = perm in ((0, 1, 2), (1, 2, 0), (2, 0, 1))
    return 1 if even else -1


@dataclass(frozen=True)
class SystemSpec:
    """Qubit count and overall energy scale of the collective Hamiltonian.

    ``delta`` is the spacing parameter in whatever energy unit the caller
    works in (hbar = 1, so time is measured in 1/delta).  A convenient
    physical anchor is delta ~ 0.1 meV, for which k_B T = delta at roughly
    1 K.
    """

    n: int
    delta: float = 1.0

    def __post_init__(self) -> None:
        _check_qubit_count(self.n)
        if not self.delta > 0:
            raise ValueError(f"delta must be positive, got {self.delta!r}")

    @property
    def dim(self) -> int:
        return 2**self.n


def single_spin_operator(axis: Axis, i: int, n: int) -> np.ndarray:
    """Spin-1/2 component along ``axis`` acting on qubit ``i`` of ``n``."""
    _check_axis(axis)
    _check_qubit_count(n)
    _check_qubit_index(i, n)
    left = np.eye(2 ** (i - 1), dtype=complex)
    right = np.eye(2 ** (n - i), dtype=complex)
    return np.kron(np.kron(left, _PAULI[axis] / 2.0), right)


def partial_collective_spin(axis: Axis, k: int, n: int) -> np.ndarray:
    """Sum of single-qubit spin components over the first ``k`` qubits."""
    _check_axis(axis)
    _check_qubit_count(n)
    _check_qubit_index(k, n)
    dim = 2**n
    out = np.zeros((dim, dim), dtype=complex)
    for i in range(1, k + 1):
        out += single_spin_operator(axis, i, n)
    return out


def total_spin_squared(k: int, n: int) -> np.ndarray:
    """Squared magnitude of the collective spin of the first ``k`` qubits."""
    _check_qubit_count(n)
    _check_qubit_index(k, n)
    dim = 2**n
    out = np.zeros((dim, dim), dtype=complex)
    for axis in AXES:
        s = partial_collective_spin(axis, k, n)
        out += s @ s
    return out


def exchange_operator(i: int, j: int, n: int) -> np.ndarray:
    """Swap of qubits ``i`` and ``j``: E = I/2 + 2 s_i . s_j.

    The result is a real symmetric permutation matrix (E^2 = I).
    """
    _check_qubit_count(n)
    _check_qubit_index(i, n)
    _check_qubit_index(j, n)
    if not i < j:
        raise ValueError(f"need i < j, got i={i}, j={j}")
    dim = 2**n
    out = 0.5 * np.eye(dim, dtype=complex)
    for axis in AXES:
        out += 2.0 * single_spin_operator(axis, i, n) @ single_spin_operator(axis, j, n)
    return out


def collective_hamiltonian(spec: SystemSpec, form: HamiltonianForm = "spin-squared") -> np.ndarray:
    """Collective-spin Hamiltonian H = (delta/2) * (total spin)^2.

    ``form`` selects between the direct construction from squared partial
    sums and the algebraically equivalent pairwise Heisenberg expansion
    (delta/2) * [sum_{i != j} s_i . s_j + (3n/4) I]; the two agree
    entrywise to machine precision and the second form exists mainly as a
    cross-check.
    """
    n = spec.n
    dim = spec.dim
    if form == "spin-squared":
        return (spec.delta / 2.0) * total_spin_squared(n, n)
    if form == "pairwise-heisenberg":
        out = (3.0 * n / 4.0) * np.eye(dim, dtype=complex)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                for axis in AXES:
                    term = single_spin_operator(axis, i, n) @ single_spin_operator(axis, j, n)
                    out += 2.0 * term  # ordered sum over i != j
        return (spec.delta / 2.0) * out
    raise ValueError(f"unknown Hamiltonian form {form!r}")


def final_step_operator(n: int) -> np.ndarray:
    """Operator distinguishing how the last qubit couples to the rest.

    O = -I/4 + (total spin of n qubits)^2 - (total spin of first n-1)^2.
    Its eigenvalues are +-(J_{n-1} + 1/2) where J_{n-1} is the collective
    spin of the first n-1 qubits, and it anticommutes with the last-qubit
    spin components up to the collective projection:
    {O, s_axis^(n)} = S_axis^(n).
    """
    _check_qubit_count(n)
    if n < 2:
        raise ValueError(f"final step operator needs at least 2 qubits, got n={n}")
    dim = 2**n
    out = -0.25 * np.eye(dim, dtype=complex)
    out += total_spin_squared(n, n)
    out -= total_spin_squared(n - 1, n)
    return out
