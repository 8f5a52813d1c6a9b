import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from cpbskew.quantum import (
    InvalidDimensionError,
    NormalizationError,
    NotPSDError,
    QubitFockState,
    build_operators,
    check_density_matrix,
    expectation_and_variance,
    pauli_matrices,
    psd_sqrt,
    reduced_field_state,
    reduced_qubit_state,
)

SX, SY, SZ = pauli_matrices()
S = 1 / np.sqrt(2)


def random_density(rng, dim, rank=None):
    rank = dim if rank is None else rank
    X = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = X @ X.conj().T
    return rho / np.trace(rho).real


def random_state(rng, cutoff):
    psi = rng.normal(size=2 * cutoff) + 1j * rng.normal(size=2 * cutoff)
    return QubitFockState(psi / np.linalg.norm(psi))


class TestOperators:
    def test_two_level_ladder(self):
        ops = build_operators(2)
        expected = np.zeros((2, 2))
        expected[0, 1] = 1.0
        np.testing.assert_array_equal(ops.a, expected)

    @pytest.mark.parametrize("N", [1, 2, 5, 13])
    def test_commutator_below_truncation(self, N):
        ops = build_operators(N)
        comm = ops.a @ ops.a_dagger - ops.a_dagger @ ops.a
        np.testing.assert_allclose(comm[:N - 1, :N - 1], np.eye(N - 1), atol=1e-14)

    def test_ladder_action(self):
        ops = build_operators(6)
        for k in range(6):
            ket = np.eye(6)[k]
            if k > 0:
                np.testing.assert_allclose(ops.a @ ket, np.sqrt(k) * np.eye(6)[k - 1])
            if k + 1 < 6:
                np.testing.assert_allclose(ops.a_dagger @ ket, np.sqrt(k + 1) * np.eye(6)[k + 1])
        np.testing.assert_array_equal(ops.a_dagger @ np.eye(6)[5], 0)

    def test_paulis(self):
        e, g = np.array([1, 0]), np.array([0, 1])
        np.testing.assert_array_equal(SX @ e, g)
        np.testing.assert_array_equal(SZ @ g, -g)
        np.testing.assert_array_equal(SZ @ e, e)
        np.testing.assert_allclose(SX @ SY - SY @ SX, 2j * SZ)

    @pytest.mark.parametrize("N", [0, -1, 2.5])
    def test_invalid_cutoff(self, N):
        with pytest.raises(InvalidDimensionError):
            build_operators(N)

    def test_sigma_plus_raises_qubit(self):
        ops = build_operators(1)
        np.testing.assert_allclose(ops.sigma_plus @ np.array([0, 1]), [1, 0])

    def test_excitation_number_diagonal(self):
        ops = build_operators(3)
        # (e,0),(e,1),(e,2),(g,0),(g,1),(g,2)
        np.testing.assert_allclose(np.diag(ops.excitation_number()).real, [1, 2, 3, 0, 1, 2])


class TestReducedStates:
    def test_product(self):
        state = QubitFockState.basis("e", 3, 5)
        np.testing.assert_allclose(reduced_qubit_state(state), np.diag([1, 0]))
        field = np.zeros((5, 5))
        field[3, 3] = 1
        np.testing.assert_allclose(reduced_field_state(state), field)

    def test_plus_state(self):
        state = QubitFockState.from_components({("e", 0): S, ("g", 0): S}, 3)
        np.testing.assert_allclose(reduced_qubit_state(state), 0.5 * np.ones((2, 2)), atol=1e-15)

    def test_maximally_entangled(self):
        state = QubitFockState.from_components({("e", 0): S, ("g", 1): S}, 4)
        np.testing.assert_allclose(reduced_qubit_state(state), 0.5 * np.eye(2), atol=1e-15)
        np.testing.assert_allclose(reduced_field_state(state), np.diag([0.5, 0.5, 0, 0]), atol=1e-15)

    def test_unnormalized_rejected(self):
        state = QubitFockState.from_components({("e", 0): 1.0, ("g", 0): 1.0}, 2)
        with pytest.raises(NormalizationError):
            reduced_qubit_state(state)
        with pytest.raises(NormalizationError):
            reduced_field_state(state)

    def test_basis_index_ordering(self):
        state = QubitFockState.basis("g", 2, 4)
        assert np.flatnonzero(state.amplitudes).tolist() == [6]

    def test_batched(self):
        rng = np.random.default_rng(1)
        states = [random_state(rng, 3) for _ in range(4)]
        batch = QubitFockState(np.stack([s.amplitudes for s in states]))
        got = reduced_qubit_state(batch)
        for i, s in enumerate(states):
            np.testing.assert_allclose(got[i], reduced_qubit_state(s))

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 8), st.integers(0, 2**32 - 1))
    def test_schmidt_symmetry_and_validity(self, N, seed):
        state = random_state(np.random.default_rng(seed), N)
        rq = check_density_matrix(reduced_qubit_state(state))
        rf = check_density_matrix(reduced_field_state(state))
        assert abs(np.trace(rq @ rq) - np.trace(rf @ rf)) <= 1e-10


class TestPsdSqrt:
    def test_half_identity(self):
        np.testing.assert_allclose(psd_sqrt(0.5 * np.eye(2)), np.eye(2) / np.sqrt(2), atol=1e-15)

    def test_projector_idempotent(self):
        psi = np.array([0.6, 0.8j])
        P = np.outer(psi, psi.conj())
        np.testing.assert_allclose(psd_sqrt(P), P, atol=1e-8)
        np.testing.assert_allclose(psd_sqrt(P) @ psd_sqrt(P), P, atol=1e-10)

    def test_diagonal(self):
        root = psd_sqrt(np.diag([0.25, 0.75]))
        np.testing.assert_allclose(root, np.diag([0.5, np.sqrt(0.75)]), atol=1e-15)
        np.testing.assert_allclose(root @ root, np.diag([0.25, 0.75]), atol=1e-15)

    def test_not_psd(self):
        with pytest.raises(NotPSDError):
            psd_sqrt(np.diag([1.1, -0.1]))

    def test_clamps_tiny_negative(self):
        root = psd_sqrt(np.diag([1 + 5e-11, -5e-11]).astype(complex) / (1.0))
        assert np.all(np.isfinite(root))

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2**32 - 1))
    def test_squares_back(self, dim, rank, seed):
        rho = random_density(np.random.default_rng(seed), dim, min(rank, dim))
        root = psd_sqrt(rho)
        assert np.max(np.abs(root @ root - rho)) <= 1e-10
        assert np.max(np.abs(root - root.conj().T)) <= 1e-12
        assert np.min(np.linalg.eigvalsh(root)) >= -1e-10

    def test_matches_scipy_sqrtm(self):
        rho = random_density(np.random.default_rng(7), 4)
        np.testing.assert_allclose(psd_sqrt(rho), scipy.linalg.sqrtm(rho), atol=1e-12)


class TestExpectation:
    def test_eigenstate(self):
        assert expectation_and_variance(np.diag([1, 0]), SZ) == pytest.approx((1, 0), abs=1e-15)

    def test_plus(self):
        plus = np.array([S, S])
        mean, var = expectation_and_variance(plus, SZ)
        assert mean == pytest.approx(0, abs=1e-15)
        assert var == pytest.approx(1, abs=1e-15)

    def test_maximally_mixed(self):
        assert expectation_and_variance(0.5 * np.eye(2), SX) == pytest.approx((0, 1), abs=1e-15)

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidDimensionError):
            expectation_and_variance(np.eye(3) / 3, SX)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.floats(-3, 3), min_size=2, max_size=6, unique=True), st.integers(0, 2**32 - 1))
    def test_variance_zero_iff_eigenstate(self, diag, seed):
        A = np.diag(diag)
        dim = len(diag)
        k = seed % dim
        assert expectation_and_variance(np.eye(dim)[k], A)[1] <= 1e-12
        psi = np.random.default_rng(seed).normal(size=dim)
        psi /= np.linalg.norm(psi)
        _, var = expectation_and_variance(psi, A)
        assert var >= 0
        weights = psi**2
        mean = weights @ np.array(diag)
        assert var == pytest.approx(weights @ (np.array(diag) - mean) ** 2, abs=1e-12)
