"""Contraction coefficients: lambda_2, the four eta estimators, and the scrambling test.

Every estimator returns an :class:`Estimate` whose ``value`` is the largest ratio actually
evaluated, so it is a lower bound on the supremum. Densities are parametrized as
``exp(H(theta))/Tr exp(H(theta))`` and optimized with multi-start Nelder-Mead. Start 0 is
``theta = 0`` (the maximally mixed state); the other starts draw ``theta`` from
``default_rng([seed, k])`` at scales cycling through ``START_SCALES``.
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.linalg import eigh as gen_eigh
from scipy.optimize import minimize

from .errors import ContractaError, InvalidInput
from .functions import GFunction, KappaFunction
from .geometry import GEODESIC_KINDS, geodesic_distance
from .linalg import as_density, dagger, density_from_params, traceless_basis
from .superop import SuperOperator, omega, unvec, vec

MIX_DELTA = 1e-6
NEAR_EPS = 1e-3
START_SCALES = (0.5, 1.5, 3.0)
SIMPLEX_STEP = 0.6
RESTART_STAGES = 4
MIN_DENOMINATOR = 1e-10
CONVERGENCE_RTOL = 1e-4

__all__ = [
    "Budget",
    "Estimate",
    "Lambda2Result",
    "ScramblingReport",
    "lambda2",
    "lambda2_bruteforce",
    "riem_ratio",
    "eta_riem",
    "eta_relent",
    "eta_geod",
    "eta_tr",
    "is_scrambling",
]


@dataclass(frozen=True)
class Budget:
    starts: int = 8
    iters: int = 400

    def __post_init__(self):
        if self.starts < 1 or self.iters < 1:
            raise InvalidInput("budget needs at least one start and one iteration")


@dataclass
class Estimate:
    value: float
    witness: dict = field(default_factory=dict)
    starts: int = 0
    seed: int = 0
    converged: bool = False
    exact: bool = False
    evaluations: int = 0


@dataclass
class Lambda2Result:
    lambda2: float
    top_eig: float
    eigvec_matrix: np.ndarray
    residual: float


@dataclass
class ScramblingReport:
    scrambling: bool
    min_overlap: float
    exact: bool = False


def _superop(phi) -> SuperOperator:
    if isinstance(phi, SuperOperator):
        return phi
    if hasattr(phi, "superoperator"):
        return phi.superoperator()
    raise InvalidInput(f"cannot build a superoperator from {type(phi).__name__}")


def _mix(rho, delta=MIX_DELTA):
    d = rho.shape[0]
    return (1 - delta) * rho + delta * np.eye(d) / d


# ---------------------------------------------------------------- lambda_2


def _lambda2_core(S: np.ndarray, d_in: int, d_out: int, rho, kappa, want_vector=False):
    sigma = unvec(S @ vec(rho), d_out)
    sigma = 0.5 * (sigma + dagger(sigma))
    om_rho = omega(rho, kappa)
    om_sig = omega(sigma, kappa)
    Psi = om_sig.with_power(0.5).superoperator().matrix @ S \
        @ om_rho.with_power(-0.5).superoperator().matrix
    M = dagger(Psi) @ Psi
    M = 0.5 * (M + dagger(M))
    y = vec(om_rho.with_power(-0.5).apply(np.eye(d_in)))
    y = y / np.linalg.norm(y)
    top = float(np.vdot(y, M @ y).real)
    Q = np.linalg.qr(y[:, None], mode="complete")[0][:, 1:]
    lam, Z = np.linalg.eigh(dagger(Q) @ M @ Q)
    if not want_vector:
        return float(lam[-1]), top
    return float(lam[-1]), top, Q @ Z[:, -1], om_rho, om_sig, sigma


def lambda2(phi, rho, kappa: KappaFunction) -> Lambda2Result:
    """Second largest eigenvalue of ``Psi^* Psi`` with
    ``Psi = (Omega_{Phi(rho)})^{1/2} Phi (Omega_rho)^{-1/2}``.

    The top eigenvalue 1 belongs to ``(Omega_rho)^{-1/2}(I)``; ``lambda2`` is the largest
    eigenvalue on its orthogonal complement, i.e. over traceless directions. The witness
    ``X`` is Hermitian, traceless, has unit Hilbert-Schmidt norm, and satisfies
    ``Omega_rho^{-1} Phi^* Omega_{Phi(rho)} Phi (X) = lambda2 X`` up to ``residual``.
    """
    rho = as_density(rho)
    so = _superop(phi)
    lam2, top, z, om_rho, om_sig, sigma = _lambda2_core(so.matrix, so.dim_in, so.dim_out,
                                                         rho, kappa, want_vector=True)
    X = om_rho.with_power(-0.5).apply(unvec(z, so.dim_in))
    herm = 0.5 * (X + dagger(X))
    anti = (X - dagger(X)) / 2j
    X = herm if np.linalg.norm(herm) >= np.linalg.norm(anti) else anti
    X = X / np.linalg.norm(X)
    adj = so.adjoint()
    lhs = om_rho.with_power(-1.0).apply(adj.apply(om_sig.apply(so.apply(X))))
    residual = float(np.linalg.norm(lhs - lam2 * X))
    return Lambda2Result(lam2, top, X, residual)


def riem_ratio(phi, kappa: KappaFunction, rho, A) -> float:
    """``<Phi(A), Omega_{Phi(rho)} Phi(A)> / <A, Omega_rho A>``."""
    sigma = phi.apply(rho)
    PA = phi.apply(A)
    return omega(sigma, kappa).quadratic_form(PA) / omega(rho, kappa).quadratic_form(A)


def lambda2_bruteforce(phi, rho, kappa: KappaFunction) -> float:
    """Largest generalized Rayleigh quotient over traceless Hermitian ``X`` (dense
    generalized eigenproblem in a Gell-Mann basis)."""
    rho = as_density(rho)
    d = rho.shape[0]
    basis = traceless_basis(d)
    om_rho = omega(rho, kappa)
    om_sig = omega(phi.apply(rho), kappa)
    images = [phi.apply(B) for B in basis]
    n = len(basis)
    N = np.empty((n, n))
    G = np.empty((n, n))
    for k in range(n):
        OB = om_rho.apply(basis[k])
        OP = om_sig.apply(images[k])
        for l in range(n):
            G[l, k] = np.vdot(basis[l], OB).real
            N[l, k] = np.vdot(images[l], OP).real
    N = 0.5 * (N + N.T)
    G = 0.5 * (G + G.T)
    return float(gen_eigh(N, G, eigvals_only=True)[-1])


# ---------------------------------------------------------------- optimizer


class _Tracker:
    def __init__(self):
        self.best = -np.inf
        self.best_x = None
        self.history = []

    def record(self, val, x):
        if val > self.best:
            self.best = val
            self.best_x = np.array(x, copy=True)
        self.history.append(self.best)


def _start_point(k: int, dim: int, seed: int) -> np.ndarray:
    if k == 0:
        return np.zeros(dim)
    rng = np.random.default_rng([seed, k])
    return START_SCALES[(k - 1) % len(START_SCALES)] * rng.standard_normal(dim)


def _multistart(objective: Callable[[np.ndarray], float], dim: int, budget: Budget, seed: int,
                starts=None, tracker=None) -> _Tracker:
    tracker = _Tracker() if tracker is None else tracker
    starts = range(budget.starts) if starts is None else starts

    def neg(x):
        try:
            val = float(objective(x))
        except (ContractaError, np.linalg.LinAlgError, FloatingPointError):
            val = -np.inf
        if not np.isfinite(val):
            tracker.record(-np.inf, x)
            return 1.0
        tracker.record(val, x)
        return -val

    # each start's iterations are split over restarts from the previous stage's best vertex;
    # a fresh simplex undoes the collapse that stalls Nelder-Mead in higher dimensions
    stages = min(RESTART_STAGES, budget.iters)
    for k in starts:
        x = _start_point(k, dim, seed)
        for r in range(stages):
            iters = budget.iters // stages + (r < budget.iters % stages)
            step = SIMPLEX_STEP if r == 0 else SIMPLEX_STEP / 2
            res = minimize(neg, x, method="Nelder-Mead",
                           options={"maxiter": iters, "maxfev": 2 * iters + dim + 1,
                                    "initial_simplex": np.vstack([x, x + step * np.eye(dim)]),
                                    "xatol": 1e-9, "fatol": 1e-13})
            x = res.x
    return tracker


def _converged(tr: _Tracker) -> bool:
    h = tr.history
    if not h or not np.isfinite(h[-1]):
        return False
    ref = h[int(0.8 * (len(h) - 1))]
    return bool(abs(h[-1] - ref) <= CONVERGENCE_RTOL * max(abs(h[-1]), 1e-300))


def _finish(tr: _Tracker, witness: dict, budget: Budget, seed: int) -> Estimate:
    value = float(tr.best) if np.isfinite(tr.best) else 0.0
    return Estimate(value, witness, budget.starts, seed, _converged(tr), False, len(tr.history))


def _resolve_seed(seed):
    return 0 if seed is None else int(seed)


# ---------------------------------------------------------------- estimators


def eta_riem(phi, kappa: KappaFunction, budget: Budget = Budget(), seed: int = 0) -> Estimate:
    """``sup_rho lambda2(Phi, rho, kappa)``, the Riemannian contraction coefficient.

    The witness holds the best ``rho`` and the traceless direction ``A`` attaining ``lambda2`` there.
    """
    seed = _resolve_seed(seed)
    so = _superop(phi)
    d, dp = so.dim_in, so.dim_out
    S = so.matrix

    def obj(theta):
        return _lambda2_core(S, d, dp, _mix(density_from_params(theta, d)), kappa)[0]

    tr = _multistart(obj, d * d, budget, seed)
    rho = _mix(density_from_params(tr.best_x, d))
    A = lambda2(so, rho, kappa).eigvec_matrix
    return _finish(tr, {"rho": rho, "A": A}, budget, seed)


def _pair_objective(ratio: Callable, d: int, near: bool):
    n = d * d

    def make_pair(theta):
        rho = _mix(density_from_params(theta[:n], d))
        if near:
            a = theta[n:]
            norm = np.linalg.norm(a)
            a = a / norm if norm > 0 else np.eye(n)[0]
            gamma = _mix(density_from_params(theta[:n] + NEAR_EPS * a, d))
        else:
            gamma = _mix(density_from_params(theta[n:], d))
        return rho, gamma

    def obj(theta):
        return ratio(*make_pair(theta))

    return obj, make_pair


def _pair_estimate(phi, ratio: Callable, budget: Budget, seed: int) -> Estimate:
    """Split the starts between independent pairs and near-coincident pairs, merging in start
    order (independent first)."""
    so = _superop(phi)
    d = so.dim_in
    n_ind = (budget.starts + 1) // 2
    tracker = _Tracker()
    best = (-np.inf, None, None)
    for near, starts in ((False, range(n_ind)), (True, range(n_ind, budget.starts))):
        if not len(starts):
            continue
        obj, make_pair = _pair_objective(ratio, d, near)
        before = tracker.best
        _multistart(obj, 2 * d * d, budget, seed, starts=starts, tracker=tracker)
        if tracker.best > before:
            best = (tracker.best, make_pair, tracker.best_x)
    witness = {}
    if best[1] is not None:
        rho, gamma = best[1](best[2])
        witness = {"rho": rho, "gamma": gamma}
    return _finish(tracker, witness, budget, seed)


def _output_fn(phi):
    so = _superop(phi)
    S, dp = so.matrix, so.dim_out

    def out(X):
        Y = unvec(S @ vec(X), dp)
        return 0.5 * (Y + dagger(Y))

    return out


def eta_relent(phi, g: GFunction, budget: Budget = Budget(), seed: int = 0) -> Estimate:
    """``sup H_g(Phi rho, Phi gamma) / H_g(rho, gamma)`` over interior pairs."""
    from .divergence import h_g_positive

    seed = _resolve_seed(seed)
    out = _output_fn(phi)

    def ratio(rho, gamma):
        den = h_g_positive(g, rho, gamma)
        if not den > MIN_DENOMINATOR:
            return -np.inf
        return h_g_positive(g, out(rho), out(gamma)) / den

    return _pair_estimate(phi, ratio, budget, seed)


def eta_geod(phi, kind: str, budget: Budget = Budget(), seed: int = 0) -> Estimate:
    """``sup D(Phi rho, Phi gamma)^2 / D(rho, gamma)^2`` for a closed-form distance ``kind``."""
    if kind not in GEODESIC_KINDS:
        raise InvalidInput(f"unknown geodesic kind {kind!r}")
    seed = _resolve_seed(seed)
    out = _output_fn(phi)

    def ratio(rho, gamma):
        den = geodesic_distance(kind, rho, gamma)
        if not den * den > MIN_DENOMINATOR:
            return -np.inf
        return (geodesic_distance(kind, out(rho), out(gamma)) / den) ** 2

    return _pair_estimate(phi, ratio, budget, seed)


def _qubit_affine(phi):
    from .qubit import affine_from_channel

    so = _superop(phi)
    if so.dim_in == 2 and so.dim_out == 2:
        return affine_from_channel(phi if hasattr(phi, "apply") else so)
    return None


def _orthonormal_pair(theta: np.ndarray, d: int):
    Z = theta[:2 * d] + 1j * theta[2 * d:]
    Q = np.linalg.qr(Z.reshape(2, d).T)[0]
    return Q[:, 0], Q[:, 1]


def _pure_pair_search(phi, objective, budget: Budget, seed: int):
    so = _superop(phi)
    d = so.dim_in
    tr = _Tracker()

    def obj(theta):
        u, v = _orthonormal_pair(theta, d)
        return objective(np.outer(u, u.conj()), np.outer(v, v.conj()))

    # start 0 at theta = 0 is degenerate for the pair map; shift every start by a fixed frame
    base = np.concatenate([np.eye(d)[:2].reshape(-1), np.zeros(2 * d)])
    _multistart(lambda th: obj(th + base), 4 * d, budget, seed, tracker=tr)
    u, v = _orthonormal_pair(tr.best_x + base, d)
    return tr, {"u": u, "v": v}


def eta_tr(phi, budget: Budget = Budget(), seed: int = 0) -> Estimate:
    """Dobrushin coefficient ``sup_{u perp v} ||Phi(|u><u| - |v><v|)||_1 / 2``.

    Qubit maps use the exact value ``||T||`` (``exact=True``).
    """
    seed = _resolve_seed(seed)
    so = _superop(phi)
    if not so.is_trace_preserving():
        raise InvalidInput("eta_tr needs a trace-preserving map")
    aff = _qubit_affine(phi)
    if aff is not None:
        U, s, Vt = np.linalg.svd(aff.T)
        n = Vt[0]
        wit = {"u_bloch": n, "v_bloch": -n}
        return Estimate(float(s[0]), wit, 0, seed, True, True, 0)
    out = _output_fn(phi)

    def objective(E, F):
        return 0.5 * float(np.sum(np.linalg.svd(out(E - F), compute_uv=False)))

    tr, wit = _pure_pair_search(phi, objective, budget, seed)
    return _finish(tr, wit, budget, seed)


def is_scrambling(phi, budget: Budget = Budget(), seed: int = 0) -> ScramblingReport:
    """Whether every pair of orthogonal pure inputs has overlapping outputs
    (``min Tr Phi(E) Phi(F) > 1e-10``)."""
    seed = _resolve_seed(seed)
    so = _superop(phi)
    if not so.is_trace_preserving():
        raise InvalidInput("scrambling test needs a trace-preserving map")
    aff = _qubit_affine(phi)
    if aff is not None:
        n = aff.spectral_norm()
        overlap = 0.5 * (1 + float(aff.t @ aff.t) - n * n)
        return ScramblingReport(bool(overlap > 1e-10), overlap, True)
    out = _output_fn(phi)
    tr, _ = _pure_pair_search(phi, lambda E, F: -np.trace(out(E) @ out(F)).real, budget, seed)
    overlap = -tr.best
    return ScramblingReport(bool(overlap > 1e-10), overlap, False)
