"""Thermal Lindblad dynamics of the four-qubit collective-spin register.

Single-qubit spin components decompose into blocks between total-spin
sectors, and the selection rules leave only transitions that change J by
at most one.  A bath in thermal equilibrium drives each block at a rate
fixed by the Bose occupation of its energy gap: absorption scales as
n(gap) = 1/(exp(beta * gap) - 1), emission as n(gap) + 1, and the
zero-frequency (sector-diagonal) blocks dephase at a temperature-
independent rate.  At k_B T well below the gap the leakage rate out of
the J = 0 ground multiplets is exponentially suppressed, which is the
protection mechanism this module quantifies.

The master equation is integrated exactly (dense Liouvillian, fixed-step
RK4); for a 4-qubit register the Liouvillian is 256 x 256, so nothing
here needs sparsity or stochastic unraveling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import build_basis_state, enumerate_paths, full_labeled_basis
from .operators import (
    AXES,
    Axis,
    SystemSpec,
    _check_qubit_count,
    collective_hamiltonian,
    single_spin_operator,
)

# sector pairs (low J, high J) a thermal bath can drive via single-qubit noise
ALLOWED_SECTOR_PAIRS: tuple[tuple[float, float], ...] = (
    (0.0, 1.0),
    (1.0, 2.0),
    (1.0, 1.0),
    (2.0, 2.0),
)

TRACE_DRIFT_TOL = 1e-6
HERMITICITY_TOL = 1e-8
POSITIVITY_TOL = -1e-8
STATE_ATOL = 1e-9


class IntegrationError(RuntimeError):
    """The integrator left the physical manifold (trace, Hermiticity, positivity)."""


class EstimationError(RuntimeError):
    """A rate fit could not be carried out on the requested window."""


@dataclass(frozen=True)
class SectorProjector:
    """Orthogonal projector onto one total-spin sector."""

    j: float
    matrix: np.ndarray
    rank: int


def sector_projectors(n: int) -> tuple[SectorProjector, ...]:
    """Projectors onto every total-spin sector, ascending in J."""
    _check_qubit_count(n)
    if n > 8:
        raise ValueError(f"dense sector projectors are limited to n <= 8, got {n}")
    states = full_labeled_basis(n, "z")
    sectors: dict[float, list[np.ndarray]] = {}
    for s in states:
        sectors.setdefault(s.final_j, []).append(s.vector)
    projectors = []
    for j in sorted(sectors):
        block = np.column_stack(sectors[j])
        matrix = block @ block.conj().T
        matrix.setflags(write=False)
        projectors.append(SectorProjector(j=j, matrix=matrix, rank=block.shape[1]))
    return tuple(projectors)


@dataclass(frozen=True)
class TransitionOperator:
    """One sector-to-sector block P_to s_axis^(qubit) P_from."""

    qubit: int
    axis: Axis
    from_j: float
    to_j: float
    matrix: np.ndarray


def transition_decomposition(qubit: int, axis: Axis, n: int = 4) -> list[TransitionOperator]:
    """Split one single-qubit spin component into sector-to-sector blocks.

    Returns every ordered sector pair; blocks forbidden by the selection
    rules come out as (numerically) zero matrices, which the tests pin
    down.  The blocks sum back to the full operator.
    """
    if n != 4:
        raise ValueError(f"the thermal model is built for the 4-qubit register, got n={n}")
    projectors = sector_projectors(n)
    spin = single_spin_operator(axis, qubit, n)
    blocks = []
    for target in projectors:
        for source in projectors:
            matrix = target.matrix @ spin @ source.matrix
            matrix.setflags(write=False)
            blocks.append(
                TransitionOperator(
                    qubit=qubit,
                    axis=axis,
                    from_j=source.j,
                    to_j=target.j,
                    matrix=matrix,
                )
            )
    return blocks


def thermal_occupation(beta: float, gap: float) -> float:
    """Bose occupation 1/(exp(beta * gap) - 1), stable for all beta * gap > 0."""
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta!r}")
    if not gap > 0:
        raise ValueError(f"gap must be positive, got {gap!r}")
    x = beta * gap
    if math.isinf(x):
        return 0.0
    # exp(-x) / (1 - exp(-x)) avoids overflow for large x and cancellation for small x
    return math.exp(-x) / (-math.expm1(-x))


@dataclass(frozen=True)
class JumpTerm:
    operator: TransitionOperator
    rate: float


@dataclass(frozen=True)
class LindbladModel:
    """Thermal jump operators and rates for the 4-qubit register."""

    n: int
    delta: float
    beta: float
    g: np.ndarray  # (n, 3) coupling magnitudes, axes ordered x, y, z
    gamma0: np.ndarray  # (n, 3) rates for the sector-diagonal blocks
    hamiltonian: np.ndarray
    projectors: tuple[SectorProjector, ...]
    jumps: tuple[JumpTerm, ...]

    @property
    def dim(self) -> int:
        return 2**self.n

    def projector(self, j: float) -> np.ndarray:
        for p in self.projectors:
            if p.j == j:
                return p.matrix
        raise KeyError(f"no sector with J = {j}")


def _coupling_array(value, n: int, name: str) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        arr = np.full((n, 3), float(arr))
    if arr.shape != (n, 3):
        raise ValueError(f"{name} must be a scalar or an ({n}, 3) array, got shape {arr.shape}")
    if (arr < 0).any():
        raise ValueError(f"{name} entries must be non-negative")
    arr.setflags(write=False)
    return arr


def build_model(
    spec: SystemSpec,
    beta: float,
    g: float | np.ndarray = 0.1,
    gamma0: float | np.ndarray | None = None,
) -> LindbladModel:
    """Assemble the thermal jump table for the 4-qubit register.

    For every qubit and axis the sector-changing blocks enter twice: as
    absorption (low to high J) at rate g^2 n(gap) and emission (high to
    low) at rate g^2 (n(gap) + 1), with the gap read off the collective
    Hamiltonian.  Sector-diagonal blocks enter once, Hermitian, at rate
    ``gamma0`` (default g^2).  ``beta`` may be ``math.inf`` for a
    zero-temperature bath, which zeroes every absorption rate.
    """
    if spec.n != 4:
        raise ValueError(f"the thermal model is built for the 4-qubit register, got n={spec.n}")
    if not beta > 0:
        raise ValueError(f"beta must be positive, got {beta!r}")
    g_arr = _coupling_array(g, spec.n, "g")
    gamma0_arr = _coupling_array(gamma0 if gamma0 is not None else g_arr**2, spec.n, "gamma0")

    hamiltonian = collective_hamiltonian(spec)
    hamiltonian.setflags(write=False)
    projectors = sector_projectors(spec.n)

    jumps = []
    for qubit in range(1, spec.n + 1):
        for axis_index, axis in enumerate(AXES):
            coupling_sq = g_arr[qubit - 1, axis_index] ** 2
            blocks = {
                (b.from_j, b.to_j): b for b in transition_decomposition(qubit, axis, spec.n)
            }
            for low, high in ALLOWED_SECTOR_PAIRS:
                if low == high:
                    rate = float(gamma0_arr[qubit - 1, axis_index])
                    jumps.append(JumpTerm(operator=blocks[(low, low)], rate=rate))
                    continue
                # level spacing of (delta/2) J(J+1) between the two sectors
                gap = (spec.delta / 2.0) * (high * (high + 1) - low * (low + 1))
                occupation = thermal_occupation(beta, gap)
                jumps.append(
                    JumpTerm(operator=blocks[(low, high)], rate=coupling_sq * occupation)
                )
                jumps.append(
                    JumpTerm(operator=blocks[(high, low)], rate=coupling_sq * (occupation + 1.0))
                )

    return LindbladModel(
        n=spec.n,
        delta=spec.delta,
        beta=beta,
        g=g_arr,
        gamma0=gamma0_arr,
        hamiltonian=hamiltonian,
        projectors=projectors,
        jumps=tuple(jumps),
    )


def liouvillian(model: LindbladModel, hamiltonian: np.ndarray | None = None) -> np.ndarray:
    """Dense generator acting on row-major vectorized density matrices.

    vec(A rho B) = (A kron B^T) vec(rho) for C-ordered flattening, so the
    coherent part is -i (H kron I - I kron H^T) and each jump contributes
    gamma [A kron conj(A) - (A^dag A kron I + I kron (A^dag A)^T) / 2].
    """
    dim = model.dim
    h = model.hamiltonian if hamiltonian is None else hamiltonian
    if h.shape != (dim, dim):
        raise ValueError(f"hamiltonian must be {dim} x {dim}, got {h.shape}")
    eye = np.eye(dim, dtype=complex)
    gen = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    for term in model.jumps:
        a = term.operator.matrix
        if term.rate == 0.0 or not a.any():
            continue
        ada = a.conj().T @ a
        gen += term.rate * (
            np.kron(a, a.conj()) - 0.5 * (np.kron(ada, eye) + np.kron(eye, ada.T))
        )
    return gen


def default_timestep(model: LindbladModel) -> float:
    """Conservative RK4 step: 1% of the fastest coherent or dissipative time."""
    fastest = 1.0 / model.delta
    max_rate = max((term.rate for term in model.jumps), default=0.0)
    if max_rate > 0:
        fastest = min(fastest, 1.0 / max_rate)
    return 0.01 * fastest


@dataclass(frozen=True)
class Trajectory:
    """Recorded master-equation solution and derived observables.

    ``states[k]`` is the density matrix at ``times[k]``;
    ``sector_populations[k, s]`` is the population of sector
    ``sector_js[s]``; ``leakage`` is one minus the J = 0 population;
    ``logical_fidelity`` is the overlap with the initial encoded state
    when the initial condition is (numerically) a pure ground-multiplet
    state, and None otherwise.
    """

    times: np.ndarray
    states: np.ndarray
    sector_js: tuple[float, ...]
    sector_populations: np.ndarray
    traces: np.ndarray
    leakage: np.ndarray
    logical_fidelity: np.ndarray | None


def _as_density_matrix(rho0: np.ndarray, dim: int) -> np.ndarray:
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.ndim == 1:
        if rho0.shape != (dim,):
            raise ValueError(f"state vector must have length {dim}, got {rho0.shape}")
        norm = np.linalg.norm(rho0)
        if abs(norm - 1.0) > STATE_ATOL:
            raise ValueError(f"state vector must be normalized, got |v| = {norm}")
        return np.outer(rho0, rho0.conj())
    if rho0.shape != (dim, dim):
        raise ValueError(f"density matrix must be {dim} x {dim}, got {rho0.shape}")
    if np.abs(rho0 - rho0.conj().T).max() > STATE_ATOL:
        raise ValueError("density matrix must be Hermitian")
    if abs(np.trace(rho0).real - 1.0) > STATE_ATOL:
        raise ValueError(f"density matrix must have unit trace, got {np.trace(rho0)}")
    return rho0


def _rk4_step_matrix(gen: np.ndarray, dt: float) -> np.ndarray:
    """One fixed RK4 step of a linear ODE is the quartic Taylor polynomial."""
    a = dt * gen
    eye = np.eye(gen.shape[0], dtype=complex)
    # Horner form of I + A + A^2/2 + A^3/6 + A^4/24
    step = eye + a / 4.0
    step = eye + (a / 3.0) @ step
    step = eye + (a / 2.0) @ step
    step = eye + a @ step
    return step


def _initial_logical_vector(model: LindbladModel, rho0: np.ndarray) -> np.ndarray | None:
    """Encoded pure state behind rho0, if there is one."""
    if model.n != 4:
        return None
    codewords = [build_basis_state(p, 0.0, "z") for p in enumerate_paths(4, 0.0)]
    block_basis = np.column_stack([c.vector for c in codewords])
    block = block_basis.conj().T @ rho0 @ block_basis
    weight = float(np.trace(block).real)
    if weight < 1.0 - STATE_ATOL:
        return None
    evals, evecs = np.linalg.eigh(block)
    if evals[-1] < 1.0 - 1e-8:
        return None
    return block_basis @ evecs[:, -1]


def evolve(
    model: LindbladModel,
    rho0: np.ndarray,
    t_final: float,
    dt: float | None = None,
    hamiltonian: np.ndarray | None = None,
    n_records: int = 201,
) -> Trajectory:
    """Integrate the master equation with fixed-step RK4.

    ``rho0`` may be a density matrix or a pure-state vector.  The step is
    trimmed so an integer number of steps lands exactly on ``t_final``.
    Physicality (trace, Hermiticity, positivity) is checked at every
    recorded time and violation raises IntegrationError — with the
    default step the checks pass with orders of magnitude to spare, so a
    failure means the step was overridden too aggressively.
    """
    dim = model.dim
    rho = _as_density_matrix(rho0, dim)
    if not t_final > 0:
        raise ValueError(f"t_final must be positive, got {t_final!r}")
    if dt is None:
        dt = default_timestep(model)
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")

    n_steps = max(1, math.ceil(t_final / dt - 1e-12))
    dt_eff = t_final / n_steps
    gen = liouvillian(model, hamiltonian)
    step = _rk4_step_matrix(gen, dt_eff)

    n_records = max(2, min(n_records, n_steps + 1))
    record_steps = np.unique(np.round(np.linspace(0, n_steps, n_records)).astype(int))

    logical_vector = _initial_logical_vector(model, rho)

    times = []
    states = []
    vec = rho.reshape(-1).copy()
    record_set = set(int(k) for k in record_steps)
    for k in range(n_steps + 1):
        if k in record_set:
            times.append(k * dt_eff)
            states.append(vec.reshape(dim, dim).copy())
        if k < n_steps:
            vec = step @ vec

    times_arr = np.array(times)
    states_arr = np.array(states)

    traces = np.einsum("kii->k", states_arr)
    if np.abs(traces - 1.0).max() > TRACE_DRIFT_TOL:
        raise IntegrationError(
            f"trace drifted by {np.abs(traces - 1.0).max():.3e} (> {TRACE_DRIFT_TOL}); "
            "use a smaller dt"
        )
    herm = np.abs(states_arr - states_arr.conj().transpose(0, 2, 1)).max()
    if herm > HERMITICITY_TOL:
        raise IntegrationError(f"Hermiticity violated by {herm:.3e}; use a smaller dt")
    for state in states_arr:
        min_eig = float(np.linalg.eigvalsh(state).min())
        if min_eig < POSITIVITY_TOL:
            raise IntegrationError(f"negative population {min_eig:.3e}; use a smaller dt")

    sector_js = tuple(p.j for p in model.projectors)
    populations = np.stack(
        [np.einsum("kij,ji->k", states_arr, p.matrix).real for p in model.projectors],
        axis=1,
    )
    ground_index = sector_js.index(0.0) if 0.0 in sector_js else None
    leakage = 1.0 - populations[:, ground_index] if ground_index is not None else np.ones(len(times))

    fidelity = None
    if logical_vector is not None:
        fidelity = np.einsum(
            "i,kij,j->k", logical_vector.conj(), states_arr, logical_vector
        ).real

    return Trajectory(
        times=times_arr,
        states=states_arr,
        sector_js=sector_js,
        sector_populations=populations,
        traces=traces.real,
        leakage=leakage,
        logical_fidelity=fidelity,
    )


def first_order_leakage_rate(model: LindbladModel, state: np.ndarray) -> float:
    """Instantaneous leakage rate sum_k gamma_k <psi| A_k^dag A_k |psi>.

    Sums over jump operators that carry weight out of the J = 0 sector;
    exact at t = 0 for a pure ground-multiplet state, and the seed for
    choosing the fit window in :func:`leakage_rate`.
    """
    total = 0.0
    for term in model.jumps:
        if term.operator.from_j == 0.0 and term.operator.to_j != 0.0 and term.rate > 0:
            image = term.operator.matrix @ state
            total += term.rate * float(np.vdot(image, image).real)
    return total


def leakage_rate(
    model: LindbladModel,
    state: np.ndarray,
    t_final: float | None = None,
    dt: float | None = None,
) -> float:
    """Exponential leakage rate out of the ground multiplets for ``state``.

    Integrates the master equation over a short window and fits
    log(ground population) against time.  The window defaults to the
    smaller of 10% of the expected leakage time and 5% of the fastest
    re-emission time — long enough to resolve the decay, short enough
    that thermal backflow into the ground sector has not bent the curve.
    Returns 0.0 when nothing couples the state out of the ground sector.
    """
    state = np.asarray(state, dtype=complex)
    if state.shape != (model.dim,):
        raise ValueError(f"state must be a vector of length {model.dim}")
    if abs(np.linalg.norm(state) - 1.0) > STATE_ATOL:
        raise ValueError("state must be normalized")
    ground = model.projector(0.0)
    outside = state - ground @ state
    if np.linalg.norm(outside) > STATE_ATOL:
        raise ValueError("state must lie in the J = 0 ground multiplets")

    guess = first_order_leakage_rate(model, state)
    if guess <= 0.0:
        return 0.0

    if t_final is None:
        t_final = 0.1 / guess
        return_rates = [
            term.rate
            for term in model.jumps
            if term.operator.to_j == 0.0 and term.operator.from_j != 0.0 and term.rate > 0
        ]
        if return_rates:
            t_final = min(t_final, 0.05 / max(return_rates))
    if dt is None:
        dt = min(default_timestep(model), t_final / 400.0)

    trajectory = evolve(model, state, t_final, dt=dt)
    ground_population = 1.0 - trajectory.leakage
    if (ground_population <= 0).any():
        raise EstimationError("ground population vanished inside the fit window")
    log_population = np.log(ground_population)
    if (np.diff(log_population) > 1e-12).any():
        raise EstimationError("ground population is not decaying on the fit window")
    slope = np.polyfit(trajectory.times, log_population, 1)[0]
    return float(-slope)


@dataclass(frozen=True)
class SweepPoint:
    beta: float
    gamma: float
    occupation: float  # Bose occupation of the first gap at this beta


def temperature_sweep(
    spec: SystemSpec,
    betas,
    g: float | np.ndarray = 0.1,
    gamma0: float | np.ndarray | None = None,
    state: np.ndarray | None = None,
) -> list[SweepPoint]:
    """Leakage rate of one encoded state across bath temperatures."""
    betas = [float(b) for b in betas]
    if not betas:
        raise ValueError("need at least one beta")
    if state is None:
        state = build_basis_state(enumerate_paths(spec.n, 0.0)[0], 0.0, "z").vector
    points = []
    for beta in betas:
        model = build_model(spec, beta, g=g, gamma0=gamma0)
        gamma = leakage_rate(model, state)
        points.append(
            SweepPoint(beta=beta, gamma=gamma, occupation=thermal_occupation(beta, spec.delta))
        )
    return points
