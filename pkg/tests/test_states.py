import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from qdiscord.errors import DimensionError, ValidationError
from qdiscord.linalg import partial_trace_A, partial_trace_S, tensor_product
from qdiscord.measurement import computational_basis, qubit_basis
from qdiscord.states import (
    assemble_separable,
    classical_classical,
    random_density,
    random_separable,
    separable_spec,
    shannon_entropy,
    validate,
    von_neumann_entropy,
)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


class TestValidate:
    def test_maximally_mixed(self):
        rho = validate(np.eye(4) / 4, split=(2, 2))
        assert rho.dim == 4
        assert rho.split == (2, 2)

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(ValidationError) as err:
            validate(np.diag([0.6, 0.6, -0.1, -0.1]))
        assert err.value.invariant == "positive"
        assert err.value.magnitude == pytest.approx(0.1, abs=1e-12)

    def test_rejects_unphysical_isotropic_mixture(self):
        # x = 0.5 pushes the singlet weight (1 - 3x)/4 to -0.125
        x = 0.5
        matrix = (
            np.eye(4)
            + x * (tensor_product(SX, SX) + tensor_product(SY, SY) + tensor_product(SZ, SZ))
        ) / 4
        with pytest.raises(ValidationError) as err:
            validate(matrix, split=(2, 2))
        assert err.value.invariant == "positive"
        assert err.value.magnitude == pytest.approx(0.125, abs=1e-12)

    def test_rejects_bad_trace(self):
        with pytest.raises(ValidationError) as err:
            validate(np.diag([0.5, 0.4]))
        assert err.value.invariant == "trace"
        assert err.value.magnitude == pytest.approx(0.1, abs=1e-12)

    def test_rejects_non_hermitian(self):
        bad = np.array([[0.5, 0.5], [0.0, 0.5]])
        with pytest.raises(ValidationError) as err:
            validate(bad)
        assert err.value.invariant == "hermitian"

    def test_rejects_bad_split(self):
        with pytest.raises(DimensionError):
            validate(np.eye(4) / 4, split=(2, 3))

    def test_matrix_is_read_only(self):
        rho = validate(np.eye(2) / 2)
        with pytest.raises(ValueError):
            rho.matrix[0, 0] = 1.0


class TestEntropy:
    def test_maximally_mixed_qubit(self):
        assert von_neumann_entropy(validate(np.eye(2) / 2)) == pytest.approx(1.0)

    def test_pure_state(self):
        v = np.array([1.0, 1j]) / math.sqrt(2)
        rho = validate(np.outer(v, v.conj()))
        assert abs(von_neumann_entropy(rho)) < 1e-12

    def test_isotropic_spectrum(self):
        from qdiscord.families import werner

        assert von_neumann_entropy(werner(1 / 3)) == pytest.approx(
            math.log2(3), abs=1e-10
        )

    def test_shannon_conventions(self):
        assert shannon_entropy([0.5, 0.5]) == pytest.approx(1.0)
        assert shannon_entropy([1.0, 0.0]) == 0.0
        # sub-floor values count as exact zeros
        assert shannon_entropy([1.0, 1e-14]) == 0.0

    def test_entropy_bounds_500_random(self):
        rng = np.random.default_rng(1)
        for trial in range(500):
            d = 2 + trial % 3
            rho = random_density(d, int(rng.integers(1, d + 1)), rng)
            h = von_neumann_entropy(rho)
            assert -1e-12 <= h <= math.log2(d) + 1e-12

    def test_subadditivity(self):
        rng = np.random.default_rng(2)
        for trial in range(100):
            m, n = (2, 2) if trial % 2 == 0 else (2, 3)
            rho = validate(random_density(m * n, m * n, rng).matrix, split=(m, n))
            h_s = von_neumann_entropy(validate(partial_trace_A(rho.matrix, m, n)))
            h_a = von_neumann_entropy(validate(partial_trace_S(rho.matrix, m, n)))
            assert von_neumann_entropy(rho) <= h_s + h_a + 1e-9


class TestSeparable:
    def test_single_component_is_product(self):
        s = random_density(2, 2, 11)
        a = random_density(3, 3, 12)
        spec = separable_spec([1.0], [(s, a)])
        built = assemble_separable(spec)
        assert_allclose(built.matrix, tensor_product(s.matrix, a.matrix), atol=1e-14)
        assert built.split == (2, 3)

    def test_classical_mixture(self):
        zero = validate(np.diag([1.0, 0.0]))
        one = validate(np.diag([0.0, 1.0]))
        spec = separable_spec([0.5, 0.5], [(zero, zero), (one, one)])
        assert_allclose(
            assemble_separable(spec).matrix, np.diag([0.5, 0, 0, 0.5]), atol=1e-15
        )

    def test_matches_direct_loop(self):
        spec = random_separable(2, 3, 5, seed=21)
        built = assemble_separable(spec).matrix
        expect = np.zeros((6, 6), dtype=complex)
        for w, (s, a) in zip(spec.weights, spec.components):
            expect += w * np.kron(s.matrix, a.matrix)
        assert np.max(np.abs(built - expect)) < 1e-14

    def test_marginals_are_weighted_component_sums(self):
        spec = random_separable(2, 2, 4, seed=8)
        built = assemble_separable(spec)
        mean_s = sum(w * s.matrix for w, (s, _) in zip(spec.weights, spec.components))
        mean_a = sum(w * a.matrix for w, (_, a) in zip(spec.weights, spec.components))
        assert_allclose(partial_trace_A(built.matrix, 2, 2), mean_s, atol=1e-12)
        assert_allclose(partial_trace_S(built.matrix, 2, 2), mean_a, atol=1e-12)

    def test_rejects_bad_weights(self):
        s = random_density(2, 2, 1)
        with pytest.raises(ValidationError):
            separable_spec([0.7, 0.7], [(s, s), (s, s)])
        with pytest.raises(ValidationError):
            separable_spec([1.5, -0.5], [(s, s), (s, s)])


class TestClassicalClassical:
    def test_uniform_table(self):
        p = np.full((2, 2), 0.25)
        rho = classical_classical(p, computational_basis(2), computational_basis(2))
        assert_allclose(rho.matrix, np.eye(4) / 4, atol=1e-15)

    def test_diagonal_table(self):
        p = np.diag([0.5, 0.5])
        rho = classical_classical(p, computational_basis(2), computational_basis(2))
        assert_allclose(rho.matrix, np.diag([0.5, 0, 0, 0.5]), atol=1e-15)

    def test_rotated_bases_have_zero_alpha(self):
        from qdiscord.discord import alpha_closed_form

        rotated = qubit_basis(math.pi / 2, 0.0)  # pi/4 plane rotation
        rho = classical_classical(np.diag([0.5, 0.5]), rotated, rotated)
        assert alpha_closed_form(rho).value < 1e-10

    def test_rejects_bad_table(self):
        comp = computational_basis(2)
        with pytest.raises(ValidationError):
            classical_classical([[0.9, 0.2], [0.0, 0.0]], comp, comp)
        with pytest.raises(ValidationError):
            classical_classical([[1.2, -0.2], [0.0, 0.0]], comp, comp)


class TestRandomStates:
    def test_rank_one_is_pure(self):
        rho = random_density(2, 1, seed=7)
        assert abs(von_neumann_entropy(rho)) < 1e-10

    def test_deterministic_for_seed(self):
        a = random_density(3, 3, seed=1)
        b = random_density(3, 3, seed=1)
        assert np.array_equal(a.matrix, b.matrix)

    def test_rejects_bad_rank(self):
        with pytest.raises(DimensionError):
            random_density(2, 3, seed=0)
        with pytest.raises(DimensionError):
            random_density(2, 0, seed=0)

    def test_random_separable_pipeline(self):
        spec = random_separable(2, 2, 4, seed=3)
        rho = assemble_separable(spec)  # validation happens inside
        assert rho.split == (2, 2)
        assert abs(np.trace(rho.matrix).real - 1.0) < 1e-12

    def test_random_separable_deterministic(self):
        a = assemble_separable(random_separable(2, 2, 3, seed=5))
        b = assemble_separable(random_separable(2, 2, 3, seed=5))
        assert np.array_equal(a.matrix, b.matrix)
