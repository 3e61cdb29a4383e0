import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from trlindblad.exceptions import ShapeError, SizeError, StateError
from trlindblad.operators import (allclose, basis_label, basis_state, check_density_matrix,
                                  devectorize, kron, pauli, site_operator, vectorize)

from conftest import random_density_matrix, random_hermitian

I2, X, Z, M = pauli("I"), pauli("X"), pauli("Z"), pauli("Minus")


def kron_by_loops(a, b):
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=complex)
    for i, j, k, l in itertools.product(range(ra), range(ca), range(rb), range(cb)):
        out[i * rb + k, j * cb + l] = a[i, j] * b[k, l]
    return out


def test_kron_identity_and_z():
    assert allclose(kron(I2, I2), np.eye(4))
    assert allclose(kron(Z, I2), np.diag([1, 1, -1, -1]))


def test_kron_rectangular_against_loop_oracle(rng):
    a = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
    b = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
    out = kron(a, b)
    assert out.shape == (6, 6)
    assert allclose(out, kron_by_loops(a, b))


def test_kron_associative(rng):
    a, b, c = (rng.integers(-9, 10, size=(2, 2)).astype(complex) for _ in range(3))
    assert np.array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))
    a, b, c = (rng.normal(size=(2, 3)) for _ in range(3))
    assert allclose(kron(kron(a, b), c), kron(a, kron(b, c)), atol=1e-12)


def test_kron_size_guard():
    with pytest.raises(SizeError):
        kron(np.eye(4), np.eye(4), max_dim=8)


def test_pauli_conventions():
    assert allclose(Z, np.diag([1, -1]))
    # sigma_minus = |0><1|
    expected = np.zeros((2, 2))
    expected[0, 1] = 1
    assert allclose(M, expected)
    assert allclose(M @ np.array([0, 1]), np.array([1, 0]))
    assert allclose(X @ X, I2)
    assert allclose(pauli("Plus"), M.conj().T)
    assert allclose(pauli("identity"), I2)
    with pytest.raises(ValueError):
        pauli("W")


def test_site_operator():
    assert allclose(site_operator(Z, 0, 1), Z)
    assert allclose(site_operator(X, 1, 2), np.kron(I2, X))
    zz = site_operator(Z, 0, 2) @ site_operator(Z, 1, 2)
    assert allclose(zz, np.diag([1, -1, -1, 1]))
    with pytest.raises(IndexError):
        site_operator(Z, 2, 2)
    with pytest.raises(SizeError):
        site_operator(Z, 0, 9)


@pytest.mark.parametrize("j,k", [(0, 1), (0, 2), (1, 2)])
def test_site_operators_on_distinct_sites_commute(rng, j, k):
    a = random_hermitian(rng, 2)
    b = rng.normal(size=(2, 2)) + 0j
    A, B = site_operator(a, j, 3), site_operator(b, k, 3)
    assert allclose(A @ B, B @ A)


def test_basis_labels_site0_most_significant():
    assert basis_label(1, 4) == "01"
    assert basis_label(2, 4) == "10"
    assert allclose(basis_state("11", 4), basis_state(3, 4))
    # |01> means site 0 in |0>, site 1 in |1>: site-1 Z expectation is -1
    rho = basis_state("01", 4)
    assert np.trace(site_operator(Z, 1, 2) @ rho).real == -1
    assert np.trace(site_operator(Z, 0, 2) @ rho).real == 1


def test_vectorize_examples():
    assert allclose(vectorize(basis_state(0, 2)), [1, 0, 0, 0])
    assert allclose(vectorize(np.eye(2) / 2), [0.5, 0, 0, 0.5])
    assert allclose(devectorize(np.array([1, 0, 0, 0])), basis_state(0, 2))
    assert allclose(devectorize(np.array([0.5, 0, 0, 0.5])), np.eye(2) / 2)


def test_vectorize_is_column_stacking():
    m = np.arange(9).reshape(3, 3)
    v = vectorize(m)
    for i in range(3):
        for j in range(3):
            assert v[j * 3 + i] == m[i, j]


def test_vectorize_sandwich_identity(rng):
    a, b, r = (rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) for _ in range(3))
    assert allclose(vectorize(a @ r @ b), np.kron(b.T, a) @ vectorize(r), atol=1e-12)


@pytest.mark.parametrize("d", [2, 4, 8])
def test_round_trips(rng, d):
    rho = random_density_matrix(rng, d)
    assert np.array_equal(devectorize(vectorize(rho)), rho)
    v = rng.normal(size=d * d) + 1j * rng.normal(size=d * d)
    assert np.array_equal(vectorize(devectorize(v)), v)


def test_devectorize_rejects_non_square_length():
    with pytest.raises(ShapeError):
        devectorize(np.ones(5))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(-3, 3), st.floats(-3, 3))
def test_vectorize_linear_and_trace_functional(seed, alpha, beta):
    rng = np.random.default_rng(seed)
    r1, r2 = random_density_matrix(rng, 4), random_density_matrix(rng, 4)
    lhs = vectorize(alpha * r1 + beta * r2)
    assert allclose(lhs, alpha * vectorize(r1) + beta * vectorize(r2), atol=1e-12)
    vec_id = vectorize(np.eye(4))
    assert abs(vec_id.conj() @ vectorize(r1) - np.trace(r1)) <= 1e-12


def test_check_density_matrix():
    check_density_matrix(np.eye(2) / 2)
    with pytest.raises(StateError):
        check_density_matrix(np.eye(2))
    with pytest.raises(StateError):
        check_density_matrix(np.array([[0.5, 1], [0, 0.5]]))
    with pytest.raises(StateError):
        check_density_matrix(np.diag([1.5, -0.5]))
    with pytest.raises(ShapeError):
        check_density_matrix(np.ones((2, 3)))
