import numpy as np
import pytest

from tricorr import (
    DensityMatrix,
    SubsystemLayout,
    hermitian_eigensystem,
    hermitian_eigenvalues,
    kron,
    partial_trace,
    trace_distance,
)
from tricorr.densemat import clamp_spectrum, compose

from conftest import BELL, I2, SIGMA_X, as_state, projector, random_density


class TestKron:
    def test_identity_case(self):
        np.testing.assert_array_equal(kron(I2, I2), np.eye(4))

    def test_sigma_x_block_permutation(self):
        expected = np.zeros((4, 4))
        expected[0, 2] = expected[1, 3] = expected[2, 0] = expected[3, 1] = 1
        np.testing.assert_array_equal(kron(SIGMA_X, I2), expected)

    def test_mixed_product_property(self, rng):
        for _ in range(20):
            a, b, c, d = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
                          for _ in range(4))
            lhs = kron(a, b) @ kron(c, d)
            rhs = kron(a @ c, b @ d)
            np.testing.assert_allclose(lhs, rhs, atol=1e-12)


class TestPartialTrace:
    def test_product_state(self, rng):
        rho_a = random_density(rng, 2)
        rho_b = random_density(rng, 2)
        state = as_state(np.kron(rho_a, rho_b), "AB")
        reduced = partial_trace(state, {"A"})
        np.testing.assert_allclose(reduced.matrix, rho_a, atol=1e-12)
        assert reduced.layout.labels == ("A",)

    def test_bell_marginal_is_maximally_mixed(self):
        state = as_state(projector(BELL["2+"]), "AB")
        reduced = partial_trace(state, {"A"})
        np.testing.assert_allclose(reduced.matrix, I2 / 2, atol=1e-12)

    def test_unknown_label_rejected(self):
        state = as_state(projector(BELL["2+"]), "AB")
        with pytest.raises(ValueError, match="unknown"):
            partial_trace(state, {"Q"})

    def test_full_subset_returns_state(self):
        state = as_state(projector(BELL["1-"]), "AB")
        same = partial_trace(state, {"A", "B"})
        np.testing.assert_array_equal(same.matrix, state.matrix)

    def test_composition_of_traces(self, rng):
        state = as_state(random_density(rng, 8), "ABE")
        step = partial_trace(partial_trace(state, {"A", "E"}), {"A"})
        direct = partial_trace(state, {"A"})
        assert np.abs(step.matrix - direct.matrix).max() <= 1e-12

    def test_kron_then_trace_roundtrip(self, rng):
        for _ in range(10):
            rho_a = as_state(random_density(rng, 2), "A")
            rho_b = as_state(random_density(rng, 4), "BC")
            product = compose(rho_a, rho_b)
            back = partial_trace(product, {"A"})
            assert np.abs(back.matrix - rho_a.matrix).max() <= 1e-12

    def test_against_einsum_oracle(self, rng):
        from conftest import oracle_ptrace
        state = as_state(random_density(rng, 8), "ABE")
        for keep_labels, keep_idx in ((("A",), [0]), (("B",), [1]), (("A", "E"), [0, 2]),
                                      (("B", "E"), [1, 2])):
            mine = partial_trace(state, set(keep_labels)).matrix
            ref = oracle_ptrace(state.matrix, [2, 2, 2], keep_idx)
            np.testing.assert_allclose(mine, ref, atol=1e-13)


class TestEigen:
    def test_pauli_spectrum(self):
        np.testing.assert_allclose(hermitian_eigenvalues(SIGMA_X), [1.0, -1.0], atol=1e-12)

    def test_maximally_mixed_spectrum(self):
        np.testing.assert_allclose(hermitian_eigenvalues(np.eye(4) / 4), [0.25] * 4)

    def test_eigenvalue_sum_equals_trace(self, rng):
        g = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        h = g + g.conj().T
        values = hermitian_eigenvalues(h)
        assert abs(values.sum() - h.trace().real) <= 1e-10
        assert np.all(np.diff(values) <= 0)

    def test_reconstruction_residual(self, rng):
        g = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        h = g + g.conj().T
        values, vectors = hermitian_eigensystem(h)
        rebuilt = (vectors * values) @ vectors.conj().T
        assert np.abs(rebuilt - h).max() <= 1e-10

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError, match="Hermitian"):
            hermitian_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_density_spectrum_bounds(self, rng):
        values = hermitian_eigenvalues(random_density(rng, 8))
        assert abs(values.sum() - 1.0) <= 1e-10
        assert values.min() >= -1e-10 and values.max() <= 1 + 1e-10


class TestClamp:
    def test_roundoff_clamped_to_zero(self):
        out = clamp_spectrum(np.array([0.5, -5e-11]))
        assert out[1] == 0.0

    def test_genuine_negative_rejected(self):
        with pytest.raises(ValueError, match="below"):
            clamp_spectrum(np.array([0.5, -1e-9]))


class TestTraceDistance:
    def test_self_distance_zero(self, rng):
        state = as_state(random_density(rng, 4), "AB")
        assert trace_distance(state, state) == 0.0

    def test_orthogonal_pure_states(self):
        ket0 = as_state(np.diag([1.0, 0.0]).astype(complex), "A")
        ket1 = as_state(np.diag([0.0, 1.0]).astype(complex), "A")
        assert abs(trace_distance(ket0, ket1) - 1.0) <= 1e-12

    def test_mixed_versus_pure(self):
        mixed = as_state(I2 / 2, "A")
        pure = as_state(np.diag([1.0, 0.0]).astype(complex), "A")
        assert abs(trace_distance(mixed, pure) - 0.5) <= 1e-12

    def test_dimension_mismatch_rejected(self, rng):
        a = as_state(random_density(rng, 2), "A")
        b = as_state(random_density(rng, 4), "AB")
        with pytest.raises(ValueError, match="mismatch"):
            trace_distance(a, b)


class TestDensityMatrixContract:
    def test_trace_violation_rejected(self):
        with pytest.raises(ValueError, match="trace"):
            as_state(np.eye(2, dtype=complex), "A")

    def test_hermiticity_violation_rejected(self):
        bad = np.array([[0.5, 0.1], [0.3, 0.5]], dtype=complex)
        with pytest.raises(ValueError, match="Hermitian"):
            as_state(bad, "A")

    def test_negativity_rejected(self):
        bad = np.diag([1.5, -0.5]).astype(complex)
        with pytest.raises(ValueError, match="eigenvalue"):
            as_state(bad, "A")

    def test_matrix_is_frozen(self):
        state = as_state(I2 / 2, "A")
        with pytest.raises(ValueError):
            state.matrix[0, 0] = 9.0

    def test_layout_checks(self):
        with pytest.raises(ValueError, match="duplicate"):
            SubsystemLayout((("A", 2), ("A", 2)))
        with pytest.raises(ValueError, match="dimension"):
            SubsystemLayout((("A", 1),))
        layout = SubsystemLayout((("A", 2), ("B", 2), ("E", 2)))
        assert layout.total_dim == 8
        assert layout.restrict({"E", "A"}).labels == ("A", "E")
