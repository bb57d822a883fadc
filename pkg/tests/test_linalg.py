import numpy as np
import pytest
from numpy.testing import assert_allclose

from qdiscord.errors import DimensionError, ValidationError
from qdiscord.linalg import (
    commutator,
    hermitian_eigendecomposition,
    partial_trace_A,
    partial_trace_S,
    tensor_product,
)

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def random_hermitian(rng, dim):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + g.conj().T) / 2


# ---------------------------------------------------------------------------
# tensor product
# ---------------------------------------------------------------------------

def test_tensor_identity():
    assert_allclose(tensor_product(np.eye(2), np.eye(2)), np.eye(4))


def test_tensor_index_convention():
    # S is the left factor: joint index i_S * n + j_A
    out = tensor_product(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
    assert_allclose(out, np.diag([0.0, 1.0, 0.0, 0.0]))


def test_tensor_entry_formula():
    rng = np.random.default_rng(42)
    a = random_hermitian(rng, 2)
    b = random_hermitian(rng, 3)
    out = tensor_product(a, b)
    for i in range(2):
        for j in range(2):
            for k in range(3):
                for l in range(3):
                    # vectorized complex multiply may differ from the scalar
                    # product in the last ulp
                    assert abs(out[i * 3 + k, j * 3 + l] - a[i, j] * b[k, l]) < 1e-15


def test_tensor_reproduces_isotropic_construction():
    # (I + sx sx + sy sy + sz sz) / 4 expanded entrywise by hand
    built = (
        np.eye(4)
        + tensor_product(SX, SX)
        + tensor_product(SY, SY)
        + tensor_product(SZ, SZ)
    ) / 4
    by_hand = np.array(
        [
            [0.5, 0, 0, 0],
            [0, 0, 0.5, 0],
            [0, 0.5, 0, 0],
            [0, 0, 0, 0.5],
        ],
        dtype=complex,
    )
    assert_allclose(built, by_hand, atol=1e-15)


# ---------------------------------------------------------------------------
# partial traces
# ---------------------------------------------------------------------------

def test_partial_trace_of_product():
    rng = np.random.default_rng(7)
    for _ in range(20):
        a = random_hermitian(rng, 2)
        b = random_hermitian(rng, 3)
        joint = tensor_product(a, b)
        assert_allclose(partial_trace_A(joint, 2, 3), a * np.trace(b), atol=1e-12)
        assert_allclose(partial_trace_S(joint, 2, 3), b * np.trace(a), atol=1e-12)


def test_partial_trace_direct_loop_oracle():
    rng = np.random.default_rng(3)
    m, n = 3, 2
    rho = random_hermitian(rng, m * n)
    expect_s = np.zeros((m, m), dtype=complex)
    expect_a = np.zeros((n, n), dtype=complex)
    for i in range(m):
        for j in range(m):
            expect_s[i, j] = sum(rho[i * n + k, j * n + k] for k in range(n))
    for i in range(n):
        for j in range(n):
            expect_a[i, j] = sum(rho[k * n + i, k * n + j] for k in range(m))
    assert_allclose(partial_trace_A(rho, m, n), expect_s, atol=1e-14)
    assert_allclose(partial_trace_S(rho, m, n), expect_a, atol=1e-14)
    assert abs(np.trace(expect_s) - np.trace(rho)) < 1e-12


def test_partial_trace_werner_marginals():
    from qdiscord.families import werner

    for x in (-1.0, -0.3, 0.0, 1 / 3):
        rho = werner(x).matrix
        assert_allclose(partial_trace_A(rho, 2, 2), np.eye(2) / 2, atol=1e-12)
        assert_allclose(partial_trace_S(rho, 2, 2), np.eye(2) / 2, atol=1e-12)


def test_partial_trace_zurek_marginal():
    from qdiscord.families import zurek

    assert_allclose(
        partial_trace_S(zurek(0.7).matrix, 2, 2), np.diag([0.5, 0.5]), atol=1e-12
    )


def test_partial_trace_dimension_mismatch():
    with pytest.raises(DimensionError):
        partial_trace_A(np.eye(6), 2, 2)


# ---------------------------------------------------------------------------
# eigendecomposition
# ---------------------------------------------------------------------------

def test_eig_diagonal():
    dec = hermitian_eigendecomposition(np.diag([0.7, 0.3]))
    assert_allclose(dec.eigenvalues, [0.7, 0.3])
    assert_allclose(dec.eigenvectors, np.eye(2))


def test_eig_sigma_x():
    dec = hermitian_eigendecomposition(SX)
    assert_allclose(dec.eigenvalues, [1.0, -1.0], atol=1e-13)
    assert_allclose(np.abs(dec.eigenvectors), np.full((2, 2), 1 / np.sqrt(2)), atol=1e-13)
    # phase convention: leading nonzero component real-positive
    assert dec.eigenvectors[0, 0].real > 0
    assert abs(dec.eigenvectors[0, 0].imag) < 1e-13


def test_eig_werner_spectrum_against_determinant():
    from qdiscord.families import werner

    rho = werner(1 / 3).matrix
    dec = hermitian_eigendecomposition(rho)
    assert_allclose(dec.eigenvalues, [1 / 3, 1 / 3, 1 / 3, 0.0], atol=1e-12)
    # det(rho - lambda I) = 0 is an independent check on each claimed eigenvalue
    for lam in dec.eigenvalues:
        assert abs(np.linalg.det(rho - lam * np.eye(4))) < 1e-12


def test_eig_properties_500_random():
    rng = np.random.default_rng(0)
    for trial in range(500):
        d = 2 + trial % 5
        h = random_hermitian(rng, d)
        dec = hermitian_eigendecomposition(h)
        assert np.max(np.abs(dec.reconstruct() - h)) < 1e-10
        gram = dec.eigenvectors.conj().T @ dec.eigenvectors
        assert np.max(np.abs(gram - np.eye(d))) < 1e-10
        assert abs(dec.eigenvalues.sum() - np.trace(h).real) < 1e-10
        assert np.all(np.diff(dec.eigenvalues) <= 1e-12)


def test_eig_deterministic():
    rng = np.random.default_rng(9)
    h = random_hermitian(rng, 5)
    first = hermitian_eigendecomposition(h)
    second = hermitian_eigendecomposition(h)
    assert np.array_equal(first.eigenvalues, second.eigenvalues)
    assert np.array_equal(first.eigenvectors, second.eigenvectors)


def test_eig_rejects_non_hermitian():
    bad = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(ValidationError) as err:
        hermitian_eigendecomposition(bad)
    assert err.value.invariant == "hermitian"
    assert err.value.magnitude == pytest.approx(1.0)


# ---------------------------------------------------------------------------
# commutator
# ---------------------------------------------------------------------------

def test_commutator_with_identity():
    rng = np.random.default_rng(5)
    h = random_hermitian(rng, 3)
    assert_allclose(commutator(np.eye(3), h), np.zeros((3, 3)), atol=1e-15)


def test_commutator_pauli_algebra():
    assert_allclose(commutator(SX, SY), 2j * SZ, atol=1e-15)


def test_commutator_diagonal_states():
    from qdiscord.families import zurek

    assert_allclose(
        commutator(zurek(0.0).matrix, tensor_product(SZ, SZ)),
        np.zeros((4, 4)),
        atol=1e-15,
    )


def test_commutator_traceless():
    rng = np.random.default_rng(17)
    for _ in range(50):
        a = random_hermitian(rng, 4)
        b = random_hermitian(rng, 4)
        assert abs(np.trace(commutator(a, b))) < 1e-12


def test_commutator_dimension_mismatch():
    with pytest.raises(DimensionError):
        commutator(np.eye(2), np.eye(3))
