"""Angular-momentum addition paths and the labeled eigenbasis they generate.

An n-qubit register decomposes under the collective spin algebra into
multiplets labeled by the total spin J.  A basis adapted to that
decomposition is built by coupling one spin-1/2 at a time: the running
totals (J_1, ..., J_n) form a path that starts at J_1 = 1/2 and steps by
+-1/2 while staying non-negative.  The prefix (J_1, ..., J_{n-1}) indexes
the degenerate copies of each J_n multiplet, and the projection m along
the chosen quantization axis completes the label.

Coupling coefficients follow the Condon-Shortley phase convention, so
every basis vector is reproducible bit for bit.  Quantization along x or
y is obtained by applying a global rotation generated by the collective
spin, which commutes with every partial total-spin square and therefore
preserves all path labels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .operators import (
    AXES,
    Axis,
    _check_axis,
    _check_qubit_count,
    partial_collective_spin,
    total_spin_squared,
)

# residual tolerance for the defining eigenvector equations of a labeled state
LABEL_RESIDUAL_ATOL = 1e-10
# tolerance for orthonormality of a full labeled basis
ORTHONORMALITY_ATOL = 1e-10

_UP = np.array([1.0, 0.0], dtype=complex)
_DOWN = np.array([0.0, 1.0], dtype=complex)


def _is_half_integer(x: float) -> bool:
    return float(2 * x).is_integer()


@dataclass(frozen=True)
class SpinPath:
    """Sequence of running total spins (J_1, ..., J_n) for n coupled qubits."""

    steps: tuple[float, ...]

    def __post_init__(self) -> None:
        steps = tuple(float(j) for j in self.steps)
        object.__setattr__(self, "steps", steps)
        if not steps:
            raise ValueError("a spin path needs at least one entry")
        if steps[0] != 0.5:
            raise ValueError(f"a path must start at J_1 = 1/2, got {steps[0]}")
        for k, j in enumerate(steps):
            if not _is_half_integer(j) or j < 0:
                raise ValueError(f"J_{k + 1} must be a non-negative half-integer, got {j}")
        for k in range(1, len(steps)):
            if abs(steps[k] - steps[k - 1]) != 0.5:
                raise ValueError(
                    f"consecutive totals must differ by 1/2, got J_{k}={steps[k - 1]} "
                    f"-> J_{k + 1}={steps[k]}"
                )

    @property
    def n(self) -> int:
        return len(self.steps)

    @property
    def final_j(self) -> float:
        return self.steps[-1]

    @property
    def prefix(self) -> tuple[float, ...]:
        """Degeneracy label: the path with its final total removed."""
        return self.steps[:-1]

    @property
    def step_value(self) -> float:
        """Eigenvalue +-(J_{n-1} + 1/2) of the final-step operator."""
        if self.n < 2:
            raise ValueError("the final step value is defined only for n >= 2")
        j_prev = self.steps[-2]
        sign = 1.0 if self.steps[-1] > j_prev else -1.0
        return sign * (j_prev + 0.5)

    def __str__(self) -> str:
        return "(" + ", ".join(f"{j:g}" for j in self.steps) + ")"


def enumerate_paths(n: int, j: float | None = None) -> list[SpinPath]:
    """All addition paths on ``n`` qubits, optionally restricted to final spin ``j``.

    Paths are returned in lexicographic order of their step sequences.  A
    final spin that cannot be reached (wrong parity, negative, too large)
    yields an empty list rather than an error.
    """
    _check_qubit_count(n)
    if j is not None:
        j = float(j)
        if not _is_half_integer(j) or j < 0:
            raise ValueError(f"final spin must be a non-negative half-integer, got {j}")

    partial: list[tuple[float, ...]] = [(0.5,)]
    for _ in range(n - 1):
        extended = []
        for prefix in partial:
            last = prefix[-1]
            for step in (last - 0.5, last + 0.5):
                if step >= 0:
                    extended.append(prefix + (step,))
        partial = extended
    paths = [SpinPath(p) for p in sorted(partial)]
    if j is not None:
        paths = [p for p in paths if p.final_j == j]
    return paths


def path_multiplicity(n: int, j: float) -> int:
    """Closed-form count of addition paths from 1/2 to ``j`` in ``n`` steps.

    Derived from the reflection principle on the path lattice:
    C(n, n/2 - j) - C(n, n/2 - j - 1), which is zero whenever j has the
    wrong parity or lies outside [0, n/2].
    """
    _check_qubit_count(n)
    j = float(j)
    if not _is_half_integer(j) or j < 0:
        raise ValueError(f"final spin must be a non-negative half-integer, got {j}")
    k = n / 2.0 - j
    if k < 0 or not float(k).is_integer():
        return 0
    k = int(k)
    second = math.comb(n, k - 1) if k >= 1 else 0
    return math.comb(n, k) - second


@dataclass(frozen=True)
class IrrepRow:
    j: float
    multiplicity: int
    dimension: int  # 2 j + 1


@dataclass(frozen=True)
class IrrepTable:
    """Multiplet content of the n-qubit register, ascending in J."""

    n: int
    rows: tuple[IrrepRow, ...]

    @property
    def total_dimension(self) -> int:
        return sum(r.multiplicity * r.dimension for r in self.rows)


def irrep_table(n: int) -> IrrepTable:
    _check_qubit_count(n)
    j = 0.0 if n % 2 == 0 else 0.5
    rows = []
    while j <= n / 2.0:
        count = path_multiplicity(n, j)
        if count:
            rows.append(IrrepRow(j=j, multiplicity=count, dimension=int(2 * j + 1)))
        j += 1.0
    return IrrepTable(n=n, rows=tuple(rows))


def _coupling_coefficients(j: float, m: float, up: bool) -> tuple[float, float]:
    """Condon-Shortley coefficients for adding one spin-1/2 to a spin-j state.

    Returns (c_up, c_down): the amplitudes of |j, m - 1/2>|up> and
    |j, m + 1/2>|down> in the coupled state |j +- 1/2, m>.
    """
    if up:
        c_up = math.sqrt((j + m + 0.5) / (2 * j + 1))
        c_down = math.sqrt((j - m + 0.5) / (2 * j + 1))
    else:
        c_up = -math.sqrt((j - m + 0.5) / (2 * j + 1))
        c_down = math.sqrt((j + m + 0.5) / (2 * j + 1))
    return c_up, c_down


def _m_values(j: float) -> list[float]:
    """Projections j, j-1, ..., -j in descending order."""
    count = int(round(2 * j)) + 1
    return [j - k for k in range(count)]


def _extend_multiplet(vectors: dict[float, np.ndarray], j_from: float, j_to: float) -> dict[float, np.ndarray]:
    """Couple one more spin-1/2 onto a full multiplet of vectors keyed by m."""
    up = j_to > j_from
    extended: dict[float, np.ndarray] = {}
    for m in _m_values(j_to):
        c_up, c_down = _coupling_coefficients(j_from, m, up)
        dim = 2 * next(iter(vectors.values())).shape[0]
        vec = np.zeros(dim, dtype=complex)
        if c_up != 0.0:
            vec += c_up * np.kron(vectors[m - 0.5], _UP)
        if c_down != 0.0:
            vec += c_down * np.kron(vectors[m + 0.5], _DOWN)
        extended[m] = vec
    return extended


def _chain_vectors(path: SpinPath) -> dict[float, np.ndarray]:
    """z-quantized vectors for every m of the multiplet selected by ``path``."""
    vectors = {0.5: _UP.copy(), -0.5: _DOWN.copy()}
    for k in range(1, path.n):
        vectors = _extend_multiplet(vectors, path.steps[k - 1], path.steps[k])
    return vectors


@lru_cache(maxsize=32)
def axis_rotation(axis: Axis, n: int) -> np.ndarray:
    """Global rotation mapping the z-quantized basis to ``axis`` quantization.

    Generated by the collective spin, so it commutes with every partial
    total-spin square and with the final-step operator; only the meaning
    of m changes.
    """
    _check_axis(axis)
    _check_qubit_count(n)
    dim = 2**n
    if axis == "z":
        return np.eye(dim, dtype=complex)
    generator_axis, theta = {"x": ("y", np.pi / 2.0), "y": ("x", -np.pi / 2.0)}[axis]
    generator = partial_collective_spin(generator_axis, n, n)
    evals, vecs = np.linalg.eigh(generator)
    rotation = (vecs * np.exp(-1j * theta * evals)) @ vecs.conj().T
    rotation.setflags(write=False)
    return rotation


@dataclass(frozen=True)
class LabeledState:
    """One basis vector with its full set of quantum numbers."""

    path: SpinPath
    m: float
    axis: Axis
    vector: np.ndarray

    @property
    def final_j(self) -> float:
        return self.path.final_j

    def __str__(self) -> str:
        return f"|{self.path}, m={self.m:g}>_{self.axis}"


def label_residual(state: LabeledState) -> float:
    """Worst residual of the eigenvector equations defining ``state``.

    Checks (S^(k))^2 v = J_k (J_k + 1) v for every prefix length k and
    S_axis^(n) v = m v, plus unit norm.
    """
    n = state.path.n
    v = state.vector
    worst = abs(float(np.linalg.norm(v)) - 1.0)
    for k in range(1, n + 1):
        jk = state.path.steps[k - 1]
        residual = total_spin_squared(k, n) @ v - jk * (jk + 1) * v
        worst = max(worst, float(np.abs(residual).max()))
    projection = partial_collective_spin(state.axis, n, n)
    residual = projection @ v - state.m * v
    return max(worst, float(np.abs(residual).max()))


def build_basis_state(path: SpinPath, m: float, axis: Axis = "z") -> LabeledState:
    """Construct the labeled state |J_1, ..., J_n, m> quantized along ``axis``."""
    _check_axis(axis)
    m = float(m)
    if not _is_half_integer(m) or abs(m) > path.final_j or not float(path.final_j - m).is_integer():
        raise ValueError(f"m must be one of {path.final_j}, {path.final_j - 1}, ..., got {m}")
    vector = _chain_vectors(path)[m]
    if axis != "z":
        vector = axis_rotation(axis, path.n) @ vector
    vector.setflags(write=False)
    return LabeledState(path=path, m=m, axis=axis, vector=vector)


def full_labeled_basis(n: int, axis: Axis = "z", verify: bool = True) -> list[LabeledState]:
    """Complete orthonormal labeled basis of the n-qubit register.

    States are ordered by path (lexicographic) and, within a multiplet, by
    descending m.  With ``verify`` the defining eigenvector equations and
    orthonormality are checked to LABEL_RESIDUAL_ATOL; failure raises
    RuntimeError since it would indicate an internal inconsistency.
    """
    _check_axis(axis)
    _check_qubit_count(n)

    # grow all multiplets level by level so shared prefixes are computed once
    level: dict[tuple[float, ...], dict[float, np.ndarray]] = {
        (0.5,): {0.5: _UP.copy(), -0.5: _DOWN.copy()}
    }
    for _ in range(n - 1):
        grown: dict[tuple[float, ...], dict[float, np.ndarray]] = {}
        for prefix, vectors in level.items():
            last = prefix[-1]
            for j_next in (last - 0.5, last + 0.5):
                if j_next >= 0:
                    grown[prefix + (j_next,)] = _extend_multiplet(vectors, last, j_next)
        level = grown

    rotation = axis_rotation(axis, n) if axis != "z" else None
    states = []
    for steps in sorted(level):
        path = SpinPath(steps)
        multiplet = level[steps]
        for m in _m_values(path.final_j):
            vector = multiplet[m]
            if rotation is not None:
                vector = rotation @ vector
            vector.setflags(write=False)
            states.append(LabeledState(path=path, m=m, axis=axis, vector=vector))

    if verify:
        _verify_basis(states, n, axis)
    return states


def basis_matrix(states: list[LabeledState]) -> np.ndarray:
    """Stack labeled states as the columns of a matrix."""
    return np.column_stack([s.vector for s in states])


def _verify_basis(states: list[LabeledState], n: int, axis: Axis) -> None:
    matrix = basis_matrix(states)
    gram = matrix.conj().T @ matrix
    worst = float(np.abs(gram - np.eye(len(states))).max())
    for k in range(1, n + 1):
        eigs = np.array([s.path.steps[k - 1] * (s.path.steps[k - 1] + 1) for s in states])
        residual = total_spin_squared(k, n) @ matrix - matrix * eigs[None, :]
        worst = max(worst, float(np.abs(residual).max()))
    m_eigs = np.array([s.m for s in states])
    residual = partial_collective_spin(axis, n, n) @ matrix - matrix * m_eigs[None, :]
    worst = max(worst, float(np.abs(residual).max()))
    if worst > max(LABEL_RESIDUAL_ATOL, ORTHONORMALITY_ATOL):
        raise RuntimeError(
            f"labeled basis failed its self-check for n={n}, axis={axis}: "
            f"worst residual {worst:.3e}"
        )
