"""Path enumeration and labeled-basis construction against independent oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supercoherent.basis import (
    SpinPath,
    basis_matrix,
    build_basis_state,
    enumerate_paths,
    full_labeled_basis,
    irrep_table,
    label_residual,
    path_multiplicity,
)
from supercoherent.operators import AXES, total_spin_squared


def test_path_validation():
    SpinPath((0.5, 1.0, 0.5))  # fine
    with pytest.raises(ValueError):
        SpinPath(())
    with pytest.raises(ValueError):
        SpinPath((1.0,))
    with pytest.raises(ValueError):
        SpinPath((0.5, 1.5))
    with pytest.raises(ValueError):
        SpinPath((0.5, 0.25))
    with pytest.raises(ValueError):
        SpinPath((0.5, 0.0, -0.5))


def test_step_values():
    assert SpinPath((0.5, 1.0)).step_value == 1.0
    assert SpinPath((0.5, 0.0)).step_value == -1.0
    assert SpinPath((0.5, 1.0, 0.5, 0.0)).step_value == -1.0
    assert SpinPath((0.5, 1.0, 1.5, 2.0)).step_value == 2.0
    with pytest.raises(ValueError):
        SpinPath((0.5,)).step_value


def test_enumerate_paths_explicit():
    assert [p.steps for p in enumerate_paths(1)] == [(0.5,)]
    assert [p.steps for p in enumerate_paths(4, 0.0)] == [
        (0.5, 0.0, 0.5, 0.0),
        (0.5, 1.0, 0.5, 0.0),
    ]
    assert len(enumerate_paths(8, 0.0)) == 14
    assert len(enumerate_paths(6, 0.0)) == 5
    # parity or range mismatches come back empty, not as errors
    assert enumerate_paths(4, 0.5) == []
    assert enumerate_paths(4, 3.0) == []


def test_paths_are_lexicographically_sorted():
    for n in (3, 5, 6):
        paths = [p.steps for p in enumerate_paths(n)]
        assert paths == sorted(paths)


def test_multiplicity_against_binomial_oracle():
    for n in range(1, 9):
        total = 0
        j = 0.0 if n % 2 == 0 else 0.5
        while j <= n / 2:
            k = int(n / 2 - j)
            oracle = math.comb(n, k) - (math.comb(n, k - 1) if k >= 1 else 0)
            assert path_multiplicity(n, j) == oracle
            assert len(enumerate_paths(n, j)) == oracle
            total += oracle * int(2 * j + 1)
            j += 1.0
        assert total == 2**n


def test_multiplicity_catalan_for_balanced_registers():
    # J = 0 counts on even registers are the Catalan numbers
    for n, catalan in ((2, 1), (4, 2), (6, 5), (8, 14)):
        assert path_multiplicity(n, 0.0) == math.comb(n, n // 2) // (n // 2 + 1)
        assert path_multiplicity(n, 0.0) == catalan


def test_multiplicity_against_eigenvalue_degeneracy():
    # count eigenvalues J(J+1) of the total spin square, fully independently
    for n in (2, 3, 4, 5):
        evals = np.linalg.eigvalsh(total_spin_squared(n, n))
        for row in irrep_table(n).rows:
            target = row.j * (row.j + 1)
            count = int(np.sum(np.abs(evals - target) < 1e-8))
            assert count == row.multiplicity * row.dimension


def test_irrep_table_shapes():
    table = irrep_table(4)
    assert [(r.j, r.multiplicity, r.dimension) for r in table.rows] == [
        (0.0, 2, 1),
        (1.0, 3, 3),
        (2.0, 1, 5),
    ]
    for n in range(1, 11):
        assert irrep_table(n).total_dimension == 2**n


def test_singlet_vector_explicit():
    state = build_basis_state(SpinPath((0.5, 0.0)), 0.0)
    expected = np.zeros(4)
    expected[1] = 1.0 / math.sqrt(2)  # |01>
    expected[2] = -1.0 / math.sqrt(2)  # |10>
    assert np.abs(state.vector - expected).max() < 1e-15


def test_stretched_state_is_product():
    state = build_basis_state(SpinPath((0.5, 1.0)), 1.0)
    expected = np.zeros(4)
    expected[0] = 1.0  # |00>
    assert np.abs(state.vector - expected).max() < 1e-15
    top = build_basis_state(SpinPath((0.5, 1.0, 1.5, 2.0)), 2.0)
    expected = np.zeros(16)
    expected[0] = 1.0
    assert np.abs(top.vector - expected).max() < 1e-15


def test_triplet_zero_vector_explicit():
    state = build_basis_state(SpinPath((0.5, 1.0)), 0.0)
    expected = np.zeros(4)
    expected[1] = 1.0 / math.sqrt(2)
    expected[2] = 1.0 / math.sqrt(2)
    assert np.abs(state.vector - expected).max() < 1e-15


def test_m_validation():
    path = SpinPath((0.5, 1.0))
    with pytest.raises(ValueError):
        build_basis_state(path, 1.5)
    with pytest.raises(ValueError):
        build_basis_state(path, 0.5)  # wrong parity for J = 1
    with pytest.raises(ValueError):
        build_basis_state(path, -2.0)


def test_full_basis_is_orthonormal_and_complete():
    for axis in AXES:
        states = full_labeled_basis(4, axis)
        assert len(states) == 16
        matrix = basis_matrix(states)
        gram = matrix.conj().T @ matrix
        assert np.abs(gram - np.eye(16)).max() < 1e-10
        assert sum(1 for s in states if s.final_j == 0.0) == 2


def test_full_basis_label_residuals():
    for n in (2, 3, 4):
        for axis in AXES:
            for state in full_labeled_basis(n, axis):
                assert label_residual(state) < 1e-10


def test_basis_construction_is_deterministic():
    a = basis_matrix(full_labeled_basis(4, "x"))
    b = basis_matrix(full_labeled_basis(4, "x"))
    assert np.array_equal(a, b)


def test_axis_change_commutes_with_multiplet_structure():
    # the basis change between quantization axes must not mix path labels
    bz = basis_matrix(full_labeled_basis(4, "z"))
    for axis in ("x", "y"):
        ba = basis_matrix(full_labeled_basis(4, axis))
        rotation = ba @ bz.conj().T
        assert np.abs(rotation @ rotation.conj().T - np.eye(16)).max() < 1e-10
        for k in range(1, 5):
            s2 = total_spin_squared(k, 4)
            assert np.abs(rotation @ s2 - s2 @ rotation).max() < 1e-10


def test_state_ordering_matches_paths_then_descending_m():
    states = full_labeled_basis(3)
    labels = [(s.path.steps, s.m) for s in states]
    expected = []
    for path in enumerate_paths(3):
        j = path.final_j
        count = int(2 * j) + 1
        for k in range(count):
            expected.append((path.steps, j - k))
    assert labels == expected


@st.composite
def random_paths(draw, max_n=6):
    n = draw(st.integers(min_value=1, max_value=max_n))
    steps = [0.5]
    for _ in range(n - 1):
        if steps[-1] == 0.0:
            steps.append(0.5)
        else:
            steps.append(steps[-1] + (0.5 if draw(st.booleans()) else -0.5))
    return SpinPath(tuple(steps))


@settings(max_examples=25, deadline=None)
@given(path=random_paths(), data=st.data(), axis=st.sampled_from(AXES))
def test_random_states_satisfy_their_labels(path, data, axis):
    j = path.final_j
    m_options = [j - k for k in range(int(2 * j) + 1)]
    m = data.draw(st.sampled_from(m_options))
    state = build_basis_state(path, m, axis)
    assert abs(np.linalg.norm(state.vector) - 1.0) < 1e-12
    assert label_residual(state) < 1e-10
