"""Exact dense-matrix numerics for energy-gap-protected collective-spin qubits.

The package builds the collective-spin Hamiltonian on a small qubit
register, labels its eigenbasis by angular-momentum addition paths,
verifies the selection rules that make the degenerate ground multiplets
an error-detecting code, integrates the thermal master equation to
quantify how leakage freezes out at low temperature, and runs exchange
gates inside the protected space.
"""

__version__ = "0.1.0"

from .basis import (
    IrrepTable,
    LabeledState,
    SpinPath,
    build_basis_state,
    enumerate_paths,
    full_labeled_basis,
    irrep_table,
    path_multiplicity,
)
from .lindblad import (
    EstimationError,
    IntegrationError,
    LindbladModel,
    Trajectory,
    build_model,
    evolve,
    leakage_rate,
    liouvillian,
    sector_projectors,
    temperature_sweep,
    thermal_occupation,
    transition_decomposition,
)
from .logical import (
    EncodedGateSpec,
    GateOutcome,
    LogicalState,
    decode,
    eight_qubit_ground_space,
    encode,
    fidelity_grid_optimum,
    gate_fidelity,
    gate_under_noise,
    logical_algebra_rank,
    logical_basis,
    optimal_delta,
    projected_generator,
)
from .operators import (
    AXES,
    SystemSpec,
    collective_hamiltonian,
    exchange_operator,
    final_step_operator,
    partial_collective_spin,
    single_spin_operator,
    total_spin_squared,
)
from .selection import (
    MatrixElementReport,
    error_detection_check,
    exchange_conjugation_check,
    ground_block,
    ground_codewords,
    matrix_element,
    selection_rule_scan,
    step_identity_residual,
)

__all__ = [
    "AXES",
    "EncodedGateSpec",
    "EstimationError",
    "GateOutcome",
    "IntegrationError",
    "IrrepTable",
    "LabeledState",
    "LindbladModel",
    "LogicalState",
    "MatrixElementReport",
    "SpinPath",
    "SystemSpec",
    "Trajectory",
    "build_basis_state",
    "build_model",
    "collective_hamiltonian",
    "decode",
    "eight_qubit_ground_space",
    "encode",
    "enumerate_paths",
    "error_detection_check",
    "evolve",
    "exchange_conjugation_check",
    "exchange_operator",
    "fidelity_grid_optimum",
    "final_step_operator",
    "full_labeled_basis",
    "gate_fidelity",
    "gate_under_noise",
    "ground_block",
    "ground_codewords",
    "irrep_table",
    "leakage_rate",
    "liouvillian",
    "logical_algebra_rank",
    "logical_basis",
    "matrix_element",
    "optimal_delta",
    "partial_collective_spin",
    "path_multiplicity",
    "projected_generator",
    "sector_projectors",
    "selection_rule_scan",
    "single_spin_operator",
    "step_identity_residual",
    "temperature_sweep",
    "thermal_occupation",
    "total_spin_squared",
    "transition_decomposition",
]
