"""Qubit toolkit: Bloch vectors, Pauli algebra, affine channels, and closed-form coefficients.

A qubit state is ``rho = (I + w.sigma)/2`` and a trace-preserving qubit map acts on Bloch
vectors as ``w -> t + T w``. The Pauli-algebra helpers work with the unnormalized form
``a I + w.sigma``.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .errors import DomainError, InvalidInput, NotCompletelyPositive, SingularInput
from .functions import KappaFunction
from .linalg import _rng, _square
from .superop import Channel, SuperOperator, choi_matrix, kraus_from_choi, superop_from_action

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
POSITIVITY_TOL = 1e-10
FA_TOL = 1e-10
SEPARATION_THRESHOLD = float(np.sqrt((5 - np.sqrt(21)) / 2))

__all__ = [
    "SIGMA",
    "bloch_to_matrix",
    "matrix_to_bloch",
    "bloch_convert",
    "pauli_mul",
    "pauli_inv",
    "pauli_sqrt",
    "AffineQubitMap",
    "affine_from_channel",
    "channel_from_affine",
    "cq_map",
    "unital_map",
    "fa_cpt_check",
    "CoeffEntry",
    "QubitCoeffReport",
    "unital_coeffs",
    "cq_coeffs",
    "cq_closed_form",
    "SeparationResult",
    "separation_ratio",
    "separation_terms",
    "separation_hypothesis",
    "separation_boundary_ratio",
    "separation_small_alpha_limit",
    "pauli_quadratic_min",
    "bures_resolvent",
    "pauli_resolvent",
    "pauli_resolvent_perp",
]


def _vec3(w, name="vector") -> np.ndarray:
    w = np.asarray(w)
    if w.shape != (3,):
        raise InvalidInput(f"{name} must have three components")
    return w


def bloch_to_matrix(w, a: float = 1.0) -> np.ndarray:
    """``(a I + w.sigma)/2``; ``a = 1`` gives the density matrix of Bloch vector ``w``."""
    w = _vec3(w)
    return 0.5 * (a * np.eye(2) + sum(wk * s for wk, s in zip(w, SIGMA)))


def matrix_to_bloch(M) -> tuple[float, np.ndarray]:
    """Inverse of :func:`bloch_to_matrix`: ``(Tr M, (Tr M sigma_k)_k)``."""
    M = _square(M)
    if M.shape != (2, 2):
        raise InvalidInput("expected a 2x2 matrix")
    if np.max(np.abs(M - M.conj().T)) > 1e-12:
        raise InvalidInput("matrix is not Hermitian")
    return float(np.trace(M).real), np.array([np.trace(M @ s).real for s in SIGMA])


def bloch_convert(x):
    """Matrix -> ``(a, w)``; ``w`` or ``(a, w)`` -> matrix."""
    if isinstance(x, tuple):
        return bloch_to_matrix(x[1], x[0])
    arr = np.asarray(x)
    if arr.shape == (2, 2):
        return matrix_to_bloch(arr)
    return bloch_to_matrix(arr)


def pauli_mul(a, w, b, y):
    """``(a I + w.s)(b I + y.s) = (ab + w.y) I + (a y + b w + i w x y).s``."""
    w = _vec3(w)
    y = _vec3(y)
    return a * b + np.dot(w, y), a * y + b * w + 1j * np.cross(w, y)


def pauli_inv(a, w):
    """``(a I + w.s)^{-1} = (a I - w.s)/(a^2 - |w|^2)``."""
    w = _vec3(w)
    det = a * a - np.dot(w, w)
    if abs(det) <= 1e-12:
        raise SingularInput("a^2 = |w|^2: matrix is singular")
    return a / det, -w / det


def pauli_sqrt(b, w):
    """``(b I + w.s)^{1/2} = sqrt(z/2) (I + w.s/z)`` with ``z = b + sqrt(b^2 - |w|^2)``."""
    w = _vec3(w)
    nw = float(np.linalg.norm(w))
    if not b > nw:
        raise DomainError("need b > |w| for a positive definite square root")
    zeta = b + np.sqrt(b * b - nw * nw)
    c = np.sqrt(zeta / 2)
    return c, c * w / zeta


def _sphere(n: int, rng) -> np.ndarray:
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _angles_to_unit(p):
    th, ph = p
    return np.array([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)])


@dataclass(frozen=True, eq=False)
class AffineQubitMap:
    """Trace-preserving qubit map ``w -> t + T w``."""

    t: np.ndarray
    T: np.ndarray
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        t = np.array(self.t, dtype=float).reshape(-1)
        T = np.array(self.T, dtype=float)
        if t.shape != (3,) or T.shape != (3, 3):
            raise InvalidInput("affine qubit map needs t in R^3 and T in R^{3x3}")
        t.setflags(write=False)
        T.setflags(write=False)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "T", T)

    dim_in = 2
    dim_out = 2

    def __eq__(self, other):
        if not isinstance(other, AffineQubitMap):
            return NotImplemented
        return bool(np.array_equal(self.t, other.t) and np.array_equal(self.T, other.T))

    def __hash__(self):
        return hash((self.t.tobytes(), self.T.tobytes()))

    def apply_bloch(self, w) -> np.ndarray:
        return self.t + self.T @ _vec3(w)

    def apply(self, X) -> np.ndarray:
        X = _square(X)
        a = np.trace(X)
        y = np.array([np.trace(X @ s) for s in SIGMA])
        v = a * self.t + self.T @ y
        return 0.5 * (a * np.eye(2) + sum(vk * s for vk, s in zip(v, SIGMA)))

    __call__ = apply

    def superoperator(self) -> SuperOperator:
        return superop_from_action(self.apply, 2)

    def adjoint(self) -> SuperOperator:
        return self.superoperator().adjoint()

    def choi(self) -> np.ndarray:
        return choi_matrix(self)

    def is_trace_preserving(self, tol: float = 0.0) -> bool:
        return True

    def max_output_norm(self, samples: int = 10_000, seed=0) -> float:
        """``max_{|w|=1} |t + T w|`` from sphere samples refined by a local search."""
        rng = _rng(seed)
        W = _sphere(samples, rng)
        norms = np.linalg.norm(self.t + W @ self.T.T, axis=1)
        best = float(norms.max())
        for idx in np.argsort(norms)[-4:]:
            w = W[idx]
            p0 = np.array([np.arccos(np.clip(w[2], -1, 1)), np.arctan2(w[1], w[0])])
            res = minimize(lambda p: -np.linalg.norm(self.apply_bloch(_angles_to_unit(p))),
                           p0, method="Nelder-Mead",
                           options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 400})
            best = max(best, -float(res.fun))
        return best

    def is_positive(self, samples: int = 10_000, seed=0) -> bool:
        return self.max_output_norm(samples, seed) <= 1.0 + POSITIVITY_TOL

    def is_cp(self) -> bool:
        return float(np.linalg.eigvalsh(self.choi())[0]) >= -POSITIVITY_TOL

    def spectral_norm(self) -> float:
        return float(np.linalg.norm(self.T, 2))


def affine_from_channel(phi) -> AffineQubitMap:
    """Read off ``(t, T)`` from any trace-preserving qubit map."""
    if phi.dim_in != 2 or phi.dim_out != 2:
        raise InvalidInput("not a qubit map")
    if isinstance(phi, AffineQubitMap):
        return phi
    t = np.array([np.trace(phi.apply(np.eye(2) / 2) @ s).real for s in SIGMA])
    T = np.array([[np.trace(phi.apply(sj / 2) @ sk).real for sj in SIGMA] for sk in SIGMA])
    return AffineQubitMap(t, T)


def channel_from_affine(m: AffineQubitMap) -> Channel:
    """Kraus form of a completely positive affine map."""
    C = m.choi()
    lam_min = float(np.linalg.eigvalsh(C)[0])
    if lam_min < -POSITIVITY_TOL:
        raise NotCompletelyPositive(f"Choi matrix has eigenvalue {lam_min:.3e}")
    kraus = kraus_from_choi(C, 2, 2)
    # trace preservation is exact in the affine form; absorb rounding in the Kraus sum
    s = sum(K.conj().T @ K for K in kraus)
    lam, V = np.linalg.eigh(s)
    fix = (V / np.sqrt(lam)) @ V.conj().T
    return Channel([K @ fix for K in kraus], name=m.name)


def cq_map(alpha: float, tau: float) -> AffineQubitMap:
    """``Phi_{alpha,tau}``: ``t = (0, 0, tau)``, ``T = diag(alpha, 0, 0)``; CP iff ``a^2 + t^2 <= 1``."""
    return AffineQubitMap([0.0, 0.0, tau], np.diag([alpha, 0.0, 0.0]), name=f"cq({alpha:g},{tau:g})")


def unital_map(T) -> AffineQubitMap:
    return AffineQubitMap(np.zeros(3), T, name="unital")


def fa_cpt_check(lam, t3: float, tol: float = FA_TOL) -> bool:
    """Complete positivity of ``t = (0, 0, t3)``, ``T = diag(lam)``:
    ``(l1 +- l2)^2 <= (1 +- l3)^2 - t3^2`` together with ``|l3| <= 1``."""
    l1, l2, l3 = _vec3(lam)
    return bool(
        1 + l3 >= -tol and 1 - l3 >= -tol
        and (l1 + l2) ** 2 <= (1 + l3) ** 2 - t3**2 + tol
        and (l1 - l2) ** 2 <= (1 - l3) ** 2 - t3**2 + tol
    )


@dataclass(frozen=True)
class CoeffEntry:
    value: float
    kind: str  # "exact" or "lower_bound"


class QubitCoeffReport(dict):
    """Coefficient name -> :class:`CoeffEntry`."""

    def values_only(self) -> dict[str, float]:
        return {k: v.value for k, v in self.items()}


def unital_coeffs(T) -> QubitCoeffReport:
    """For a unital qubit channel every Riemannian, geodesic and divergence coefficient is
    ``||T||^2`` and the trace coefficient is ``||T||``."""
    T = np.asarray(T, dtype=float)
    if T.shape != (3, 3):
        raise InvalidInput("T must be 3x3")
    n = float(np.linalg.norm(T, 2))
    if n > 1 + 1e-12:
        raise InvalidInput("||T|| exceeds 1: not a positive unital map")
    rep = QubitCoeffReport()
    rep["tr"] = CoeffEntry(n, "exact")
    for key in ("riem", "geod", "relent"):
        rep[key] = CoeffEntry(n * n, "exact")
    return rep


def _check_cq(alpha, tau):
    if alpha < 0:
        raise InvalidInput("alpha must be non-negative")
    if alpha**2 + tau**2 > 1 + 1e-12:
        raise InvalidInput("alpha^2 + tau^2 > 1: Phi_{alpha,tau} is not completely positive")


def cq_closed_form(kappa: KappaFunction, alpha: float, tau: float) -> CoeffEntry | None:
    """Closed form (or proven lower bound) for ``eta_kappa^Riem(Phi_{alpha,tau})``.

    Returns ``None`` when no formula is known for ``kappa``.
    """
    _check_cq(alpha, tau)
    a2, t2 = alpha**2, min(tau**2, 1.0)
    if a2 == 0:
        return CoeffEntry(0.0, "exact")
    r = np.sqrt(max(1.0 - t2, 0.0))
    tag = kappa.tag
    if tag in ("min", "max", "extreme"):
        s = {"min": 1.0, "max": 0.0}.get(tag, kappa.param)
        return CoeffEntry(a2 / (1 - ((1 - s) / (1 + s)) ** 2 * t2), "exact")
    if tag == "wy" or (tag == "wyd" and kappa.param == 0.5):
        return CoeffEntry(2 * a2 / (1 + r), "exact")
    if tag == "wy_hat":
        return CoeffEntry(a2 * (1 + r) / (2 * (1 - t2)), "lower_bound")
    if tag == "inv_sqrt":
        return CoeffEntry(a2 / r, "lower_bound")
    if tag == "bkm":
        t = abs(tau)
        val = a2 if t < 1e-8 else a2 / (2 * t) * np.log((1 + t) / (1 - t))
        return CoeffEntry(float(val), "lower_bound")
    return None


def cq_coeffs(alpha: float, tau: float, s_list=()) -> QubitCoeffReport:
    """Trace and Riemannian coefficients of ``Phi_{alpha,tau}``.

    Keys are ``"tr"`` and ``"riem:<kappa name>"``.
    """
    _check_cq(alpha, tau)
    rep = QubitCoeffReport()
    rep["tr"] = CoeffEntry(float(alpha), "exact")
    kappas = [KappaFunction(t) for t in ("max", "wy", "min", "wy_hat", "inv_sqrt", "bkm")]
    kappas += [KappaFunction("extreme", float(s)) for s in s_list]
    for k in kappas:
        rep[f"riem:{k.name}"] = cq_closed_form(k, alpha, tau)
    return rep


@dataclass(frozen=True)
class SeparationResult:
    H: float
    H_tilde: float
    ratio: float
    riem_closed_form: float
    hypothesis: bool

    @property
    def separates(self) -> bool:
        return self.ratio > self.riem_closed_form


def separation_hypothesis(alpha: float, tau: float) -> bool:
    """``4 tau^2 > (1 - alpha^2)(4 - alpha^2)``."""
    a2 = alpha**2
    return bool(4 * tau**2 > (1 - a2) * (4 - a2))


def _xi(s, x):
    return (1 + s) ** 2 - (1 - s) ** 2 * x


def separation_terms(alpha: float, tau: float, s: float, w1: float) -> tuple[float, float, float, float]:
    """The four normalized divergences ``H_{g_s}(A, B)/(2(1+s))`` for ``P = I + w1 sigma_1`` and
    ``Q = I``, in the order ``(P,Q)``, ``(Q,P)``, ``(Phi P, Phi Q)``, ``(Phi Q, Phi P)``.

    ``H_{g_s}(A, B) = Tr (A - B)(L_A + s R_B)^{-1}(A - B)``.
    """
    _check_cq(alpha, tau)
    a2, t2, w2 = alpha**2, tau**2, w1**2
    xi = _xi(s, t2)
    pq = w2 / ((1 + s) ** 2 - w2)
    qp = w2 / ((1 + s) ** 2 - s * s * w2)

    def phi_term(c):
        num = a2 * w2 * (xi - c * a2 * w2 - 4 * s * t2)
        den = (xi - c * a2 * w2) * (xi - c * a2 * w2 - 4 * s * t2) - 4 * s * s * a2 * t2 * w2
        return num / den

    return pq, qp, phi_term(1.0), phi_term(s * s)


def separation_ratio(alpha: float, tau: float, s: float) -> SeparationResult:
    """``H~(s)/H(s)`` in the limit ``|w1| -> 1``, a lower bound on
    ``eta^RelEnt`` of the symmetrized ``g_s`` for ``Phi_{alpha,tau}``."""
    if not 0 < s <= 1:
        raise DomainError("s must lie in (0, 1]; H(s) diverges at s = 0")
    pq, qp, a1, a2 = separation_terms(alpha, tau, s, 1.0)
    H = pq + qp
    Ht = a1 + a2
    riem = cq_closed_form(KappaFunction("extreme", float(s)), alpha, tau).value
    return SeparationResult(float(H), float(Ht), float(Ht / H), float(riem), separation_hypothesis(alpha, tau))


def separation_boundary_ratio(alpha: float, s: float) -> float:
    """``H~(s)/H(s)`` on the CP boundary ``alpha^2 + tau^2 = 1``."""
    a2 = alpha**2
    num = s * (s + 2) * (2 * s + 1) * (12 * s * (s + 1) ** 2 + (2 * s**4 + s**3 + s + 2) * a2)
    den = (s * s + 4 * s + 1) * (4 * s * (s + 1) + s**3 * a2) * (4 * s * (s + 1) + a2)
    return a2 * num / den


def separation_small_alpha_limit(s: float) -> float:
    """Limit of ``[H~(s)/H(s)] / eta_{kappa_s}^Riem`` as ``alpha^2 = 1 - tau^2 -> 0``."""
    return 3 * s * (s + 2) * (2 * s + 1) / ((s * s + 4 * s + 1) * (s + 1) ** 2)


def pauli_quadratic_min(mu: float, nu: float, w) -> float:
    """``min_{y2,y3} mu(1 + y2^2 + y3^2) + nu(w1 + w2 y2 + w3 y3)^2``."""
    w = _vec3(w)
    n2 = float(w @ w)
    return mu * (mu + nu * n2) / (mu + nu * (n2 - w[0] ** 2))


def bures_resolvent(w, y) -> tuple[float, np.ndarray]:
    """``2 (L_P + R_P)^{-1}(y.sigma)`` for ``P = I + w.sigma`` as ``(scalar, vector)``."""
    w = _vec3(w)
    y = _vec3(y)
    q = 1.0 - float(w @ w)
    if q <= 0:
        raise DomainError("need |w| < 1")
    wy = float(w @ y)
    return -wy / q, y + wy * w / q


def _resolvent_core(s, w, x):
    u = w - s * x
    v = w + s * x
    c = (1 + s) ** 2
    M = (c - u @ u) * np.eye(3) + np.outer(u, u) - np.outer(v, v)
    return M, u, v, c


def pauli_resolvent(s: float, w, x, y) -> float:
    """``Tr (y.s) (1+s)(L_P + s R_Q)^{-1} (y.s)`` for ``P = I + w.s``, ``Q = I + x.s``."""
    w, x, y = (np.asarray(_vec3(z), dtype=float) for z in (w, x, y))
    M, u, v, c = _resolvent_core(s, w, x)
    uv = np.cross(u, v)
    M = M - np.outer(uv, uv) / (c - v @ v)
    return float(2 * c * y @ np.linalg.solve(M, y))


def pauli_resolvent_perp(s: float, w, x, y) -> float:
    """Simplified :func:`pauli_resolvent` valid when ``y`` is orthogonal to ``u x v``."""
    w, x, y = (np.asarray(_vec3(z), dtype=float) for z in (w, x, y))
    M, _, _, c = _resolvent_core(s, w, x)
    return float(2 * c * y @ np.linalg.solve(M, y))
