import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contracta.errors import DomainError, InvalidInput, SingularInput
from contracta.linalg import (apply_spectral_function, as_density, density_from_params,
                              hermitian_eig, hermitian_from_params, hs_inner, hs_norm,
                              random_density, random_hermitian, random_unitary, trace_norm,
                              traceless_basis)

X = np.array([[0, 1], [1, 0]], dtype=complex)


def test_eig_diagonal():
    lam, U = hermitian_eig(np.diag([2.0, 1.0]))
    assert np.allclose(lam, [1, 2])
    assert np.allclose(np.abs(U), [[0, 1], [1, 0]])


def test_eig_pauli_x():
    lam, _ = hermitian_eig(X)
    assert np.allclose(lam, [-1, 1])


def test_eig_rejects_non_hermitian():
    with pytest.raises(InvalidInput):
        hermitian_eig(np.array([[0, 1], [0, 0]]))


@given(st.integers(0, 10_000), st.integers(2, 6))
@settings(max_examples=40, deadline=None)
def test_eig_reconstruction(seed, d):
    H = random_hermitian(d, seed)
    dec = hermitian_eig(H)
    assert np.all(np.diff(dec.eigenvalues) >= 0)
    assert np.max(np.abs(dec.reconstruct() - H)) < 1e-10
    assert np.allclose(dec.eigenvectors.conj().T @ dec.eigenvectors, np.eye(d), atol=1e-12)


def test_spectral_function():
    H = random_hermitian(4, 3)
    assert np.allclose(apply_spectral_function(H, lambda x: x), H, atol=1e-12)
    assert np.allclose(apply_spectral_function(np.diag([4.0, 9.0]), np.sqrt), np.diag([2, 3]))


def test_spectral_function_domain():
    with pytest.raises(DomainError):
        apply_spectral_function(np.diag([1.0, -1.0]), np.log)


def test_trace_norm():
    assert trace_norm(np.diag([0.3, -0.3])) == pytest.approx(0.6, abs=1e-14)
    assert trace_norm(random_unitary(4, 5)) == pytest.approx(4, abs=1e-12)


def test_hs_inner():
    A, B = random_hermitian(3, 1), random_hermitian(3, 2)
    assert hs_inner(A, B) == pytest.approx(np.trace(A @ B))
    assert hs_norm(A) ** 2 == pytest.approx(hs_inner(A, A).real)
    with pytest.raises(InvalidInput):
        hs_inner(np.eye(2), np.eye(3))


def test_random_density_deterministic():
    assert np.array_equal(random_density(3, 0.1, 42), random_density(3, 0.1, 42))
    assert np.array_equal(random_density(3, 1.0, 7), np.eye(3) / 3)


def test_random_density_margin():
    rng = np.random.default_rng(0)
    for _ in range(1000):
        rho = random_density(3, 0.1, rng)
        lam = np.linalg.eigvalsh(rho)
        assert lam[0] >= 0.1 / 3 - 1e-14
        assert abs(np.trace(rho) - 1) < 1e-12


def test_as_density_rejects():
    with pytest.raises(SingularInput):
        as_density(np.diag([1.0, 0.0]))
    with pytest.raises(InvalidInput):
        as_density(np.diag([0.7, 0.7]))


def test_params_roundtrip():
    rng = np.random.default_rng(3)
    theta = rng.standard_normal(9)
    H = hermitian_from_params(theta, 3)
    assert np.allclose(H, H.conj().T)
    rho = density_from_params(theta, 3)
    assert abs(np.trace(rho) - 1) < 1e-12
    assert np.linalg.eigvalsh(rho)[0] > 0


def test_traceless_basis_orthonormal():
    B = traceless_basis(3)
    assert len(B) == 8
    G = np.array([[hs_inner(a, b) for b in B] for a in B])
    assert np.allclose(G, np.eye(8), atol=1e-12)
    assert all(abs(np.trace(b)) < 1e-14 for b in B)
