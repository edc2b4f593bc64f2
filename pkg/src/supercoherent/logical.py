"""Logical qubit encoded in the two J = 0 ground multiplets of 4 qubits.

The collective Hamiltonian on four qubits has a two-fold degenerate
ground space: the J = 0 multiplets reached by the addition paths
(1/2, 0, 1/2, 0) and (1/2, 1, 1/2, 0).  Single-qubit spin components
have no matrix elements inside this space (they must raise J to 1), so
the pair forms an error-detecting code.  Exchange couplings E_ij do act
inside it — they commute with the total spin and shuffle only the path
label — and generate the full logical SU(2), which is how gates are done
without leaving the protected space.

The gate-speed/thermal-noise tradeoff follows a simple scaling: gates
run at a rate set by the exchange strength delta_J, while heating grows
with the bath occupation, giving a figure of merit proportional to
delta_J * exp(beta * (Delta - delta_J)) maximized at delta_J = 1/beta.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .basis import LabeledState, build_basis_state, enumerate_paths
from .lindblad import LindbladModel, evolve
from .operators import SystemSpec, collective_hamiltonian, exchange_operator
from .selection import ground_block

STATE_ATOL = 1e-9

_PAULI2 = (
    np.eye(2, dtype=complex),
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)

# the six logical states used to average gate fidelity: +-z, +-x, +-y
_AXIS_STATES: tuple[tuple[str, complex, complex], ...] = (
    ("+z", 1.0, 0.0),
    ("-z", 0.0, 1.0),
    ("+x", 1.0 / math.sqrt(2), 1.0 / math.sqrt(2)),
    ("-x", 1.0 / math.sqrt(2), -1.0 / math.sqrt(2)),
    ("+y", 1.0 / math.sqrt(2), 1j / math.sqrt(2)),
    ("-y", 1.0 / math.sqrt(2), -1j / math.sqrt(2)),
)


def logical_basis() -> tuple[LabeledState, LabeledState]:
    """The two J = 0 codewords of the 4-qubit register, in path order.

    The first is the product of singlets on qubits (1,2) and (3,4); the
    second routes through J_2 = 1.
    """
    paths = enumerate_paths(4, 0.0)
    return tuple(build_basis_state(p, 0.0, "z") for p in paths)


@dataclass(frozen=True)
class LogicalState:
    """Encoded pure state a |0_L> + b |1_L>."""

    a: complex
    b: complex
    vector: np.ndarray


def encode(a: complex, b: complex) -> LogicalState:
    """Embed the logical amplitudes (a, b) into the 16-dimensional register."""
    a = complex(a)
    b = complex(b)
    norm = abs(a) ** 2 + abs(b) ** 2
    if abs(norm - 1.0) > STATE_ATOL:
        raise ValueError(f"logical amplitudes must be normalized, got |a|^2 + |b|^2 = {norm}")
    zero, one = logical_basis()
    vector = a * zero.vector + b * one.vector
    vector.setflags(write=False)
    return LogicalState(a=a, b=b, vector=vector)


def decode(rho: np.ndarray) -> tuple[np.ndarray, float]:
    """Project a register density matrix onto the code space.

    Returns (normalized 2x2 logical density matrix, leakage), where
    leakage is the population outside the two codewords.  If everything
    has leaked the logical matrix is returned as zeros.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (16, 16):
        raise ValueError(f"expected a 16 x 16 density matrix, got {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > STATE_ATOL:
        raise ValueError("density matrix must be Hermitian")
    trace = float(np.trace(rho).real)
    if abs(trace - 1.0) > STATE_ATOL:
        raise ValueError(f"density matrix must have unit trace, got {trace}")
    block = ground_block(rho)
    weight = float(np.trace(block).real)
    leakage = 1.0 - weight
    if weight < 1e-15:
        return np.zeros((2, 2), dtype=complex), leakage
    return block / weight, leakage


def projected_generator(pair: tuple[int, int]) -> np.ndarray:
    """2x2 logical matrix of the exchange coupling E_ij on the code space.

    Exchange operators preserve the code space, so the block is both
    Hermitian and unitary; E_12 comes out diagonal (-1, +1) in the
    codeword basis, and blocks of overlapping pairs do not commute.
    """
    i, j = pair
    return ground_block(exchange_operator(i, j, 4))


def logical_algebra_rank(pair_a: tuple[int, int] = (1, 2), pair_b: tuple[int, int] = (2, 3)) -> int:
    """Dimension of the traceless algebra generated by two exchange blocks.

    Rank 3 means the blocks (with their commutator) span su(2), i.e. the
    two couplings already give universal single-logical-qubit control.
    """
    g_a = projected_generator(pair_a)
    g_b = projected_generator(pair_b)
    commutator = 1j * (g_a @ g_b - g_b @ g_a)
    basis = []
    for matrix in (g_a, g_b, commutator):
        traceless = matrix - (np.trace(matrix) / 2.0) * np.eye(2)
        basis.append([traceless[0, 0].real, traceless[0, 1].real, traceless[0, 1].imag])
    return int(np.linalg.matrix_rank(np.array(basis), tol=1e-10))


def _fidelity_formula(delta_j: np.ndarray, gap: float, beta: float) -> np.ndarray:
    return delta_j * np.exp(beta * (gap - delta_j))


def gate_fidelity(delta_j: float, gap: float, beta: float) -> float:
    """Figure of merit delta_J * exp(beta * (gap - delta_J)) for one gate.

    Gate speed is linear in the exchange strength delta_J while the
    thermal error accumulated over a gate scales with the bath occupation
    ~ exp(-beta * gap); the product rewards running as fast as the
    perturbative regime allows.  The overall normalization is
    conventional — only ratios and the location of the maximum matter.
    """
    if not delta_j > 0:
        raise ValueError(f"delta_j must be positive, got {delta_j!r}")
    if not gap > 0:
        raise ValueError(f"gap must be positive, got {gap!r}")
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta!r}")
    if delta_j > 0.1 * gap:
        warnings.warn(
            f"delta_j = {delta_j:g} is outside the perturbative regime "
            f"(more than 10% of the gap {gap:g}); the tradeoff formula is "
            "only qualitative there",
            stacklevel=2,
        )
    return float(_fidelity_formula(np.asarray(delta_j, dtype=float), gap, beta))


def optimal_delta(beta: float) -> float:
    """Exchange strength maximizing the gate figure of merit: k_B T = 1/beta."""
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta!r}")
    return 1.0 / beta


def fidelity_grid_optimum(
    beta: float, gap: float, step: float = 1e-3, delta_max: float | None = None
) -> tuple[float, float]:
    """Brute-force maximum of the gate figure of merit on a uniform grid.

    Returns (argmax, value).  The grid runs over (0, delta_max] in
    increments of ``step`` (default upper limit 2 * gap, comfortably
    past the analytic optimum for any beta * gap > 1/2).
    """
    if not step > 0:
        raise ValueError(f"step must be positive, got {step!r}")
    if delta_max is None:
        delta_max = 2.0 * gap
    grid = np.arange(step, delta_max + step / 2.0, step)
    values = _fidelity_formula(grid, gap, beta)
    best = int(np.argmax(values))
    return float(grid[best]), float(values[best])


@dataclass(frozen=True)
class EncodedGateSpec:
    """Exchange couplings (i, j, strength) switched on for ``duration``."""

    couplings: tuple[tuple[int, int, float], ...]
    duration: float

    def __post_init__(self) -> None:
        if not self.duration > 0:
            raise ValueError(f"duration must be positive, got {self.duration!r}")
        for i, j, strength in self.couplings:
            if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= 4):
                raise ValueError(f"couplings need qubit pairs 1 <= i < j <= 4, got ({i}, {j})")
            if isinstance(strength, complex) or not np.isreal(strength):
                raise ValueError(f"coupling strengths must be real, got {strength!r}")


@dataclass(frozen=True)
class GateOutcome:
    """Logical action of a gate, as Pauli transfer matrices.

    ``achieved_transfer[a, b]`` = tr(sigma_a E(sigma_b)) / 2 for the noisy
    evolution restricted to the code space (trace-decreasing when leakage
    occurs); ``ideal_transfer`` is the same map for the closed-system
    logical unitary.  ``fidelity`` averages <ideal| rho_logical |ideal>
    over the six logical axis states, counting leakage as error.
    """

    achieved_transfer: np.ndarray
    ideal_transfer: np.ndarray
    fidelity: float


def _logical_unitary(gate: EncodedGateSpec) -> np.ndarray:
    generator = np.zeros((2, 2), dtype=complex)
    for i, j, strength in gate.couplings:
        generator += float(strength) * projected_generator((i, j))
    evals, evecs = np.linalg.eigh(generator)
    phases = np.exp(-1j * gate.duration * evals)
    return (evecs * phases) @ evecs.conj().T


def _transfer_from_blocks(blocks: dict[str, np.ndarray]) -> np.ndarray:
    images = (
        blocks["+z"] + blocks["-z"],
        blocks["+x"] - blocks["-x"],
        blocks["+y"] - blocks["-y"],
        blocks["+z"] - blocks["-z"],
    )
    transfer = np.zeros((4, 4))
    for a in range(4):
        for b in range(4):
            transfer[a, b] = float(np.trace(_PAULI2[a] @ images[b]).real) / 2.0
    return transfer


def gate_under_noise(
    gate: EncodedGateSpec, model: LindbladModel, dt: float | None = None
) -> GateOutcome:
    """Run an exchange-driven gate inside the thermal master equation.

    The register evolves under the collective Hamiltonian plus the gate's
    exchange couplings while the model's thermal jumps act.  Inputs are
    the six logical axis states; outputs are projected back onto the code
    space.  Leakage shows up both as fidelity loss and as a trace
    deficit of the achieved transfer matrix.
    """
    if model.n != 4:
        raise ValueError("encoded gates live on the 4-qubit register")
    total = collective_hamiltonian(SystemSpec(model.n, model.delta)).copy()
    for i, j, strength in gate.couplings:
        if abs(strength) > 0.1 * model.delta:
            warnings.warn(
                f"exchange strength {strength:g} exceeds 10% of the gap {model.delta:g}; "
                "the gate leaves the perturbative regime",
                stacklevel=2,
            )
        total += float(strength) * exchange_operator(i, j, 4)

    ideal_unitary = _logical_unitary(gate)
    achieved_blocks: dict[str, np.ndarray] = {}
    ideal_blocks: dict[str, np.ndarray] = {}
    fidelities = []
    for name, a, b in _AXIS_STATES:
        initial = encode(a, b)
        trajectory = evolve(model, initial.vector, gate.duration, dt=dt, hamiltonian=total)
        final = trajectory.states[-1]
        logical_rho, leakage = decode(final)
        block = (1.0 - leakage) * logical_rho
        achieved_blocks[name] = block
        target = ideal_unitary @ np.array([a, b], dtype=complex)
        ideal_blocks[name] = np.outer(target, target.conj())
        fidelities.append(float((target.conj() @ block @ target).real))

    return GateOutcome(
        achieved_transfer=_transfer_from_blocks(achieved_blocks),
        ideal_transfer=_transfer_from_blocks(ideal_blocks),
        fidelity=float(np.mean(fidelities)),
    )


@dataclass(frozen=True)
class GroundSpaceSummary:
    """Numerically exact ground space of the collective Hamiltonian.

    ``basis`` holds orthonormal columns spanning the space;
    ``product_residual`` is the worst distance of a product of pair
    singlets from the space; ``exchange_residual`` is the worst Frobenius
    norm of (I - P) E_ij P over all pairs, i.e. how far exchanges come
    from preserving the space.
    """

    n: int
    dimension: int
    energies: np.ndarray
    basis: np.ndarray
    product_residual: float
    exchange_residual: float


def eight_qubit_ground_space(delta: float = 1.0) -> GroundSpaceSummary:
    """Diagonalize the 8-qubit collective Hamiltonian and audit its ground space.

    The J = 0 sector of eight qubits is 14-fold degenerate.  Products of
    pair singlets on (1,2)(3,4)(5,6)(7,8) must lie inside it, and every
    exchange operator must map it to itself.
    """
    spec = SystemSpec(8, delta)
    hamiltonian = collective_hamiltonian(spec)
    energies, vectors = np.linalg.eigh(hamiltonian)
    ground = energies < delta * 1e-8
    basis = vectors[:, ground]
    projector = basis @ basis.conj().T

    singlet = np.zeros(4, dtype=complex)
    singlet[1] = 1.0 / math.sqrt(2)
    singlet[2] = -1.0 / math.sqrt(2)
    product = np.kron(np.kron(singlet, singlet), np.kron(singlet, singlet))
    product_residual = float(np.linalg.norm(product - projector @ product))

    exchange_residual = 0.0
    complement = np.eye(2**8) - projector
    for i in range(1, 9):
        for j in range(i + 1, 9):
            swap = exchange_operator(i, j, 8)
            residual = complement @ swap @ projector
            exchange_residual = max(exchange_residual, float(np.linalg.norm(residual)))

    return GroundSpaceSummary(
        n=8,
        dimension=int(ground.sum()),
        energies=energies[ground],
        basis=basis,
        product_residual=product_residual,
        exchange_residual=exchange_residual,
    )
