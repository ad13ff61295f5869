"""Channels, superoperators, and the metric operators ``Omega_rho^kappa``.

Vectorization is column-major: ``vec(X) = X.reshape(-1, order="F")`` so that
``vec(A X B) = (B^T kron A) vec(X)``. The Choi matrix is ``C = sum_ij E_ij kron Phi(E_ij)``.
"""

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import InvalidInput, NotCompletelyPositive, SingularInput
from .functions import KappaFunction
from .linalg import POSITIVITY_FLOOR, _square, as_hermitian, dagger, hermitian_eig

TP_TOL = 1e-10
CP_FLOOR = -1e-10
KRAUS_CUTOFF = 1e-12
OMEGA_POWERS = (1.0, -1.0, 0.5, -0.5)

__all__ = [
    "vec",
    "unvec",
    "SuperOperator",
    "KrausMap",
    "Channel",
    "CPTReport",
    "SchurMultiplierOp",
    "superop_from_action",
    "channel_apply",
    "channel_adjoint",
    "choi_matrix",
    "choi_and_cpt_check",
    "kraus_from_choi",
    "identity_channel",
    "unitary_channel",
    "depolarizing_channel",
    "random_channel",
    "classical_channel",
    "omega",
    "left_right_op",
]


def vec(X: np.ndarray) -> np.ndarray:
    return np.asarray(X).reshape(-1, order="F")


def unvec(v: np.ndarray, d: int) -> np.ndarray:
    return np.asarray(v).reshape((d, d), order="F")


class SuperOperator:
    """Linear map ``M_{d_in} -> M_{d_out}`` stored as a ``d_out**2 x d_in**2`` matrix."""

    def __init__(self, matrix, dim_in: int, dim_out: int | None = None):
        dim_out = dim_in if dim_out is None else dim_out
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (dim_out**2, dim_in**2):
            raise InvalidInput(f"superoperator matrix has shape {matrix.shape}, "
                               f"expected {(dim_out**2, dim_in**2)}")
        self.matrix = matrix
        self.matrix.setflags(write=False)
        self.dim_in = dim_in
        self.dim_out = dim_out

    def apply(self, X) -> np.ndarray:
        X = _square(X)
        if X.shape[0] != self.dim_in:
            raise InvalidInput(f"expected a {self.dim_in}x{self.dim_in} input, got {X.shape}")
        return unvec(self.matrix @ vec(X), self.dim_out)

    __call__ = apply

    def adjoint(self) -> "SuperOperator":
        return SuperOperator(self.matrix.conj().T, self.dim_out, self.dim_in)

    def __matmul__(self, other: "SuperOperator") -> "SuperOperator":
        if self.dim_in != other.dim_out:
            raise InvalidInput("dimension mismatch in composition")
        return SuperOperator(self.matrix @ other.matrix, other.dim_in, self.dim_out)

    def choi(self) -> np.ndarray:
        return choi_matrix(self)

    def is_trace_preserving(self, tol: float = TP_TOL) -> bool:
        # Tr Phi(X) = vec(I)^* S vec(X) for all X
        row = vec(np.eye(self.dim_out)).conj() @ self.matrix
        return bool(np.max(np.abs(row - vec(np.eye(self.dim_in)))) <= tol)

    def __repr__(self):
        return f"SuperOperator({self.dim_in} -> {self.dim_out})"


def superop_from_action(f: Callable[[np.ndarray], np.ndarray], dim_in: int,
                        dim_out: int | None = None) -> SuperOperator:
    """Tabulate a linear action on the matrix units ``E_ij``."""
    dim_out = dim_in if dim_out is None else dim_out
    cols = []
    for k in range(dim_in * dim_in):
        E = np.zeros(dim_in * dim_in, dtype=complex)
        E[k] = 1.0
        cols.append(vec(f(unvec(E, dim_in))))
    return SuperOperator(np.stack(cols, axis=1), dim_in, dim_out)


class KrausMap:
    """Completely positive map ``X -> sum_m K_m X K_m^*``; not necessarily trace preserving."""

    def __init__(self, kraus: Sequence[np.ndarray]):
        ks = [np.asarray(K, dtype=complex) for K in kraus]
        if not ks:
            raise InvalidInput("Kraus list must be nonempty")
        shape = ks[0].shape
        if len(shape) != 2 or any(K.shape != shape for K in ks):
            raise InvalidInput("Kraus operators must share one 2-D shape")
        self.kraus = tuple(ks)
        for K in self.kraus:
            K.setflags(write=False)
        self.dim_out, self.dim_in = shape

    def apply(self, X) -> np.ndarray:
        X = _square(X)
        if X.shape[0] != self.dim_in:
            raise InvalidInput(f"expected a {self.dim_in}x{self.dim_in} input, got {X.shape}")
        return sum(K @ X @ dagger(K) for K in self.kraus)

    __call__ = apply

    def adjoint(self) -> "KrausMap":
        return KrausMap([dagger(K) for K in self.kraus])

    def superoperator(self) -> SuperOperator:
        S = sum(np.kron(K.conj(), K) for K in self.kraus)
        return SuperOperator(S, self.dim_in, self.dim_out)

    def choi(self) -> np.ndarray:
        return choi_matrix(self)

    def is_trace_preserving(self, tol: float = TP_TOL) -> bool:
        s = sum(dagger(K) @ K for K in self.kraus)
        return bool(np.max(np.abs(s - np.eye(self.dim_in))) <= tol)

    def __repr__(self):
        return f"{type(self).__name__}({self.dim_in} -> {self.dim_out}, {len(self.kraus)} Kraus)"


class Channel(KrausMap):
    """Completely positive trace-preserving map given by Kraus operators."""

    def __init__(self, kraus: Sequence[np.ndarray], name: str | None = None):
        super().__init__(kraus)
        if not self.is_trace_preserving():
            raise InvalidInput("Kraus operators are not trace preserving (sum K*K != I)")
        self.name = name


def channel_apply(phi, X) -> np.ndarray:
    return phi.apply(X)


def channel_adjoint(phi):
    """Hilbert-Schmidt adjoint; unital exactly when ``phi`` is trace preserving."""
    return phi.adjoint()


def choi_matrix(phi) -> np.ndarray:
    d, dp = phi.dim_in, phi.dim_out
    C = np.zeros((d * dp, d * dp), dtype=complex)
    for i in range(d):
        for j in range(d):
            E = np.zeros((d, d), dtype=complex)
            E[i, j] = 1.0
            C[i * dp:(i + 1) * dp, j * dp:(j + 1) * dp] = phi.apply(E)
    return C


@dataclass(frozen=True)
class CPTReport:
    is_tp: bool
    is_cp: bool
    min_choi_eig: float


def choi_and_cpt_check(phi) -> CPTReport:
    lam_min = float(np.linalg.eigvalsh(as_hermitian(choi_matrix(phi), tol=1e-9))[0])
    return CPTReport(phi.is_trace_preserving(), lam_min >= CP_FLOOR, lam_min)


def kraus_from_choi(C, dim_in: int, dim_out: int, cutoff: float = KRAUS_CUTOFF) -> list[np.ndarray]:
    """Kraus operators from the eigenpairs of a PSD Choi matrix with eigenvalue > ``cutoff``."""
    lam, V = np.linalg.eigh(as_hermitian(C, tol=1e-9))
    if lam[0] < CP_FLOOR:
        raise NotCompletelyPositive(f"Choi matrix has eigenvalue {lam[0]:.3e}")
    out = []
    for k in np.flatnonzero(lam > cutoff)[::-1]:
        out.append(np.sqrt(lam[k]) * V[:, k].reshape(dim_in, dim_out).T)
    return out


def identity_channel(d: int) -> Channel:
    return Channel([np.eye(d)], name=f"identity{d}")


def unitary_channel(U) -> Channel:
    return Channel([np.asarray(U, dtype=complex)])


def depolarizing_channel(d: int, p: float) -> Channel:
    """``X -> (1-p) X + p Tr(X) I/d``."""
    if not 0.0 <= p <= 1.0 + 1.0 / (d * d - 1):
        raise InvalidInput("depolarizing parameter out of the CP range")
    kraus = [np.sqrt(max(1.0 - p + p / d**2, 0.0)) * np.eye(d)]
    for i in range(d):
        for j in range(d):
            if i == j == 0:
                continue
            kraus.append(np.sqrt(p) / d * _weyl(d, i, j))
    return Channel(kraus, name=f"depolarizing{d}({p:g})")


def _weyl(d: int, a: int, b: int) -> np.ndarray:
    X = np.roll(np.eye(d), a, axis=0)
    Z = np.diag(np.exp(2j * np.pi * b * np.arange(d) / d))
    return X @ Z


def random_channel(d: int, n_kraus: int | None = None, d_out: int | None = None,
                   seed=None) -> Channel:
    """Random CPT map: the first ``d`` columns of a Haar-ish isometry, split into blocks."""
    from .linalg import _rng

    rng = _rng(seed)
    d_out = d if d_out is None else d_out
    n = d * d_out if n_kraus is None else n_kraus
    G = rng.standard_normal((n * d_out, d)) + 1j * rng.standard_normal((n * d_out, d))
    Q, R = np.linalg.qr(G)
    Q = Q * (np.diag(R) / np.abs(np.diag(R)))
    return Channel([Q[m * d_out:(m + 1) * d_out, :] for m in range(n)])


def classical_channel(P) -> Channel:
    """Diagonal embedding of a column-stochastic matrix ``P[j, i] = Pr(j | i)``."""
    P = np.asarray(P, dtype=float)
    if P.ndim != 2 or np.any(P < -1e-12) or np.max(np.abs(P.sum(axis=0) - 1)) > 1e-10:
        raise InvalidInput("expected a column-stochastic matrix")
    d_out, d = P.shape
    kraus = []
    for i in range(d):
        for j in range(d_out):
            if P[j, i] > 0:
                K = np.zeros((d_out, d), dtype=complex)
                K[j, i] = np.sqrt(P[j, i])
                kraus.append(K)
    return Channel(kraus, name="classical")


def _positive_eig(A, what: str):
    lam, U = hermitian_eig(A)
    if lam[0] < POSITIVITY_FLOOR:
        raise SingularInput(f"{what} is not strictly positive (min eigenvalue {lam[0]:.3e})")
    return lam, U


@dataclass(frozen=True)
class SchurMultiplierOp:
    """``X -> U [(a_ij ** power) o (U^* X U)] U^*`` with ``a_ij = kappa(l_i/l_j)/l_j``.

    ``multipliers`` holds ``a_ij`` (power 1). The matrix is symmetric because
    ``x kappa(x) = kappa(1/x)``.
    """

    rho_eigs: np.ndarray
    rho_basis: np.ndarray
    multipliers: np.ndarray
    power: float = 1.0

    @property
    def effective(self) -> np.ndarray:
        return self.multipliers ** self.power

    @property
    def dim(self) -> int:
        return len(self.rho_eigs)

    def apply(self, X) -> np.ndarray:
        U = self.rho_basis
        return U @ (self.effective * (dagger(U) @ np.asarray(X, dtype=complex) @ U)) @ dagger(U)

    __call__ = apply

    def quadratic_form(self, A) -> float:
        """``<A, Omega^p(A)>`` for Hermitian ``A``."""
        U = self.rho_basis
        At = dagger(U) @ np.asarray(A, dtype=complex) @ U
        return float(np.sum(self.effective * np.abs(At) ** 2))

    def with_power(self, p: float) -> "SchurMultiplierOp":
        if p not in OMEGA_POWERS:
            raise InvalidInput(f"power must be one of {OMEGA_POWERS}")
        return SchurMultiplierOp(self.rho_eigs, self.rho_basis, self.multipliers, float(p))

    def superoperator(self) -> SuperOperator:
        U = self.rho_basis
        S = np.kron(U.conj(), U) @ (vec(self.effective)[:, None] * np.kron(U.T, dagger(U)))
        return SuperOperator(S, self.dim)


def omega(rho, kappa: KappaFunction, power: float = 1.0) -> SchurMultiplierOp:
    """The metric operator ``Omega_rho^kappa = R_rho^{-1} kappa(L_rho R_rho^{-1})`` and its powers.

    ``rho`` must be strictly positive definite; the unit trace is not required.
    """
    if power not in OMEGA_POWERS:
        raise InvalidInput(f"power must be one of {OMEGA_POWERS}")
    lam, U = _positive_eig(rho, "rho")
    a = kappa(lam[:, None] / lam[None, :]) / lam[None, :]
    a = 0.5 * (a + a.T)
    return SchurMultiplierOp(lam, U, a, float(power))


_SIDE_SCALES = {
    "one": lambda lam, mu: np.ones((len(lam), len(mu))),
    "inv_right": lambda lam, mu: np.broadcast_to(1.0 / mu[None, :], (len(lam), len(mu))),
    "inv_left": lambda lam, mu: np.broadcast_to(1.0 / lam[:, None], (len(lam), len(mu))),
}


def left_right_op(A, B, f: Callable[[np.ndarray], np.ndarray],
                  side_scale: str = "one") -> SuperOperator:
    """``X -> sum_ij f(l_i/m_j) scale_ij <u_i|X|v_j> |u_i><v_j|`` for ``(l, u)`` of ``A`` and
    ``(m, v)`` of ``B``.

    ``side_scale`` is ``"one"``, ``"inv_right"`` (``1/m_j``) or ``"inv_left"`` (``1/l_i``).
    With ``f = kappa`` and ``"inv_right"`` this is ``R_B^{-1} kappa(L_A R_B^{-1})``.
    """
    if side_scale not in _SIDE_SCALES:
        raise InvalidInput(f"side_scale must be one of {sorted(_SIDE_SCALES)}")
    lam, U = _positive_eig(A, "A")
    mu, V = _positive_eig(B, "B")
    if len(lam) != len(mu):
        raise InvalidInput("A and B must have the same dimension")
    M = np.asarray(f(lam[:, None] / mu[None, :]), dtype=float) * _SIDE_SCALES[side_scale](lam, mu)
    S = np.kron(V.conj(), U) @ (vec(M)[:, None] * np.kron(V.T, dagger(U)))
    return SuperOperator(S, len(mu), len(lam))
