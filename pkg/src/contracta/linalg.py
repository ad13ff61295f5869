"""Dense Hermitian kernel: spectral decomposition, functional calculus, norms, samplers.

All matrices are plain complex ``numpy`` arrays. Validation helpers (``as_hermitian``,
``as_density``, ``as_traceless``) return symmetrized copies and raise on inputs that are
outside tolerance; the rest of the package calls them at public entry points only.
"""

from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError, InvalidInput, SingularInput

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
POSITIVITY_FLOOR = 1e-12

__all__ = [
    "SpectralDecomposition",
    "as_hermitian",
    "as_density",
    "as_traceless",
    "hermitian_eig",
    "apply_spectral_function",
    "hs_inner",
    "hs_norm",
    "trace_norm",
    "random_density",
    "random_hermitian",
    "random_traceless",
    "random_unitary",
    "random_pure_state",
    "density_from_params",
    "traceless_basis",
    "dagger",
]


class SpectralDecomposition(NamedTuple):
    """Ascending eigenvalues and the matching unitary of column eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T


def dagger(X: np.ndarray) -> np.ndarray:
    return X.conj().T


def _square(X, name="matrix") -> np.ndarray:
    X = np.asarray(X, dtype=complex)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise InvalidInput(f"{name} must be square, got shape {X.shape}")
    return X


def as_hermitian(H, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return ``(H + H*)/2`` after checking ``H`` is Hermitian within ``tol``."""
    H = _square(H)
    if H.size and np.max(np.abs(H - H.conj().T)) > tol:
        raise InvalidInput("matrix is not Hermitian within tolerance")
    return 0.5 * (H + H.conj().T)


def as_density(rho, tol: float = TRACE_TOL, floor: float = POSITIVITY_FLOOR) -> np.ndarray:
    """Validate a strictly positive definite unit-trace matrix."""
    rho = as_hermitian(rho)
    if abs(np.trace(rho).real - 1.0) > tol:
        raise InvalidInput(f"density matrix must have unit trace, got {np.trace(rho).real!r}")
    lam_min = np.linalg.eigvalsh(rho)[0]
    if lam_min <= floor:
        raise SingularInput(f"density matrix is not strictly positive (min eigenvalue {lam_min:.3e})")
    return rho


def as_traceless(A, tol: float = TRACE_TOL) -> np.ndarray:
    A = as_hermitian(A)
    if abs(np.trace(A)) > tol:
        raise InvalidInput("tangent vector must be traceless")
    return A


def _fix_phases(U: np.ndarray) -> np.ndarray:
    # first component with non-negligible modulus made real positive
    U = U.copy()
    for k in range(U.shape[1]):
        col = U[:, k]
        idx = np.flatnonzero(np.abs(col) > 1e-12)
        if idx.size:
            z = col[idx[0]]
            U[:, k] = col * (abs(z) / z)
    return U


def hermitian_eig(H) -> SpectralDecomposition:
    """Spectral decomposition with ascending eigenvalues and a fixed phase convention.

    Raises
    ------
    InvalidInput
        If ``H`` is not Hermitian within ``1e-12``.
    """
    H = as_hermitian(H)
    lam, U = np.linalg.eigh(H)
    return SpectralDecomposition(lam, _fix_phases(U))


def eigh_unchecked(H: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``numpy.linalg.eigh`` on the Hermitian part; no validation, no phase fixing."""
    return np.linalg.eigh(0.5 * (H + H.conj().T))


def apply_spectral_function(H, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Return ``U diag(f(lambda)) U*``.

    ``f`` receives the whole eigenvalue array. A non-finite result at any eigenvalue
    (e.g. ``log`` of a non-positive value) raises :class:`DomainError`.
    """
    lam, U = hermitian_eig(H)
    with np.errstate(all="ignore"):
        vals = np.asarray(f(lam), dtype=float)
    if vals.shape != lam.shape or not np.all(np.isfinite(vals)):
        raise DomainError("function undefined on the spectrum")
    return (U * vals) @ U.conj().T


def hs_inner(X, Y) -> complex:
    """Hilbert-Schmidt inner product ``Tr X* Y``."""
    X = np.asarray(X, dtype=complex)
    Y = np.asarray(Y, dtype=complex)
    if X.shape != Y.shape:
        raise InvalidInput(f"shape mismatch {X.shape} vs {Y.shape}")
    return complex(np.vdot(X, Y))


def hs_norm(X) -> float:
    return float(np.linalg.norm(np.asarray(X, dtype=complex)))


def trace_norm(X) -> float:
    """Sum of singular values."""
    X = _square(X)
    return float(np.sum(np.linalg.svd(X, compute_uv=False)))


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_hermitian(d: int, seed=None) -> np.ndarray:
    rng = _rng(seed)
    G = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return 0.5 * (G + G.conj().T)


def random_traceless(d: int, seed=None) -> np.ndarray:
    A = random_hermitian(d, seed)
    return A - np.trace(A).real / d * np.eye(d)


def random_unitary(d: int, seed=None) -> np.ndarray:
    """Haar-distributed unitary (QR of a Ginibre matrix with phase correction)."""
    rng = _rng(seed)
    G = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    Q, R = np.linalg.qr(G)
    ph = np.diag(R) / np.abs(np.diag(R))
    return Q * ph


def random_pure_state(d: int, seed=None) -> np.ndarray:
    rng = _rng(seed)
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_density(d: int, interior_margin: float = 0.1, seed=None) -> np.ndarray:
    """``(1-delta) GG*/Tr(GG*) + delta I/d`` with seeded complex Gaussian ``G``.

    The smallest eigenvalue is at least ``delta/d``.
    """
    if d < 2:
        raise InvalidInput("dimension must be at least 2")
    if not 0.0 < interior_margin <= 1.0:
        raise InvalidInput("interior margin must lie in (0, 1]")
    if interior_margin == 1.0:
        return np.eye(d, dtype=complex) / d
    rng = _rng(seed)
    G = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    W = G @ G.conj().T
    rho = (1.0 - interior_margin) * W / np.trace(W).real + interior_margin * np.eye(d) / d
    return 0.5 * (rho + rho.conj().T)


def hermitian_from_params(theta: np.ndarray, d: int) -> np.ndarray:
    """Hermitian matrix from ``d**2`` reals: diagonal, then real/imag upper parts."""
    theta = np.asarray(theta, dtype=float)
    H = np.zeros((d, d), dtype=complex)
    H[np.diag_indices(d)] = theta[:d]
    iu = np.triu_indices(d, 1)
    m = len(iu[0])
    H[iu] = theta[d:d + m] + 1j * theta[d + m:d + 2 * m]
    H[(iu[1], iu[0])] = np.conj(H[iu])
    return H


def density_from_params(theta: np.ndarray, d: int) -> np.ndarray:
    """Interior density ``exp(H)/Tr exp(H)``; ``theta = 0`` gives ``I/d``."""
    lam, U = eigh_unchecked(hermitian_from_params(theta, d))
    w = np.exp(lam - lam.max())
    w /= w.sum()
    return (U * w) @ U.conj().T


def traceless_basis(d: int) -> list[np.ndarray]:
    """Orthonormal (Hilbert-Schmidt) basis of traceless Hermitian ``d x d`` matrices."""
    basis = []
    for j in range(d):
        for k in range(j + 1, d):
            S = np.zeros((d, d), dtype=complex)
            S[j, k] = S[k, j] = 1 / np.sqrt(2)
            A = np.zeros((d, d), dtype=complex)
            A[j, k] = -1j / np.sqrt(2)
            A[k, j] = 1j / np.sqrt(2)
            basis += [S, A]
    for m in range(1, d):
        D = np.zeros((d, d), dtype=complex)
        D[np.arange(m), np.arange(m)] = 1.0
        D[m, m] = -m
        basis.append(D / np.sqrt(m * (m + 1)))
    return basis
