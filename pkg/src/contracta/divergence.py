"""Quantum g-divergences ``H_g(A, B) = <B^{1/2}, g(L_A R_B^{-1}) B^{1/2}>``.

The primary route is the two-sided spectral double sum
``sum_ij g(l_i/m_j) m_j |<u_i|v_j>|^2``. Closed forms for the named special cases go through
the functional calculus (and a Sylvester solve for ``g_min``) so they can serve as oracles.
"""

import hashlib

import numpy as np
from scipy.linalg import solve_sylvester

from .errors import InvalidInput, SingularInput
from .functions import GFunction, dual_g, gfun
from .linalg import POSITIVITY_FLOOR, apply_spectral_function, as_density, dagger, hermitian_eig

__all__ = [
    "DivergenceValue",
    "h_g",
    "h_g_positive",
    "h_g_dual",
    "special_divergence",
    "h_g_integral_check",
    "h_g_integral_form",
]


class DivergenceValue(float):
    """A float carrying the g name and a short digest of the inputs."""

    g_tag: str
    inputs_hash: str

    def __new__(cls, value: float, g_tag: str, inputs_hash: str):
        obj = super().__new__(cls, value)
        obj.g_tag = g_tag
        obj.inputs_hash = inputs_hash
        return obj

    @property
    def value(self) -> float:
        return float(self)

    def __repr__(self):
        return f"DivergenceValue({float(self)!r}, g={self.g_tag})"


def _digest(*mats) -> str:
    h = hashlib.sha256()
    for M in mats:
        h.update(np.ascontiguousarray(M, dtype=complex).tobytes())
    return h.hexdigest()[:16]


def _pd_eig(A, what):
    lam, U = hermitian_eig(A)
    if lam[0] <= POSITIVITY_FLOOR:
        raise SingularInput(f"{what} is not strictly positive (min eigenvalue {lam[0]:.3e})")
    return lam, U


def h_g_positive(g: GFunction, A, B) -> float:
    """Spectral double sum for positive definite ``A``, ``B`` of any trace."""
    lam, U = _pd_eig(A, "first argument")
    mu, V = _pd_eig(B, "second argument")
    overlap = np.abs(dagger(U) @ V) ** 2
    return float(np.sum(g(lam[:, None] / mu[None, :]) * mu[None, :] * overlap))


def h_g(g: GFunction, A, B) -> DivergenceValue:
    """``H_g(A, B)`` for strictly positive density matrices.

    Reduces to the classical ``sum_i g(p_i/q_i) q_i`` for commuting inputs.
    """
    A = as_density(A)
    B = as_density(B)
    return DivergenceValue(h_g_positive(g, A, B), g.name, _digest(A, B))


def h_g_dual(g: GFunction, A, B) -> DivergenceValue:
    """``H_{g~}(A, B)`` with ``g~(x) = x g(1/x)``; equals ``H_g(B, A)``."""
    return h_g(dual_g(g), A, B)


def _wyd_closed(t: float, rho, gamma) -> float:
    rt = apply_spectral_function(rho, lambda x: x**t)
    gt = apply_spectral_function(gamma, lambda x: x ** (1 - t))
    return (1.0 - np.trace(rt @ gt).real) / (t * (1 - t))


def special_divergence(name: str, rho, gamma, t: float | None = None) -> DivergenceValue:
    """Closed-form divergences.

    ``relent``
        ``Tr rho (log rho - log gamma)``.
    ``quadratic``
        ``Tr rho^2 gamma^{-1} - 1``.
    ``wyd``
        ``(1 - Tr rho^t gamma^{1-t}) / (t (1 - t))`` for ``t`` in ``(0,1)`` or ``(1,2]``.
    ``wy``
        ``4 (1 - Tr rho^{1/2} gamma^{1/2})``.
    ``min_sym``
        ``2 Tr (rho - gamma) X`` where ``rho X + X gamma = rho - gamma``.
    """
    rho = as_density(rho)
    gamma = as_density(gamma)
    _pd_eig(rho, "rho")
    _pd_eig(gamma, "gamma")
    if name == "relent":
        val = np.trace(rho @ (apply_spectral_function(rho, np.log)
                              - apply_spectral_function(gamma, np.log))).real
        tag = "xlogx"
    elif name == "quadratic":
        val = np.trace(rho @ rho @ np.linalg.inv(gamma)).real - 1.0
        tag = "quadratic"
    elif name == "wyd":
        if t is None or not (0 < t < 1 or 1 < t <= 2):
            raise InvalidInput("WYD divergence needs t in (0,1) or (1,2]")
        val = _wyd_closed(t, rho, gamma)
        tag = f"gt:{t:g}"
    elif name == "wy":
        val = 4.0 * (1.0 - np.trace(apply_spectral_function(rho, np.sqrt)
                                    @ apply_spectral_function(gamma, np.sqrt)).real)
        tag = "gt:0.5"
    elif name == "min_sym":
        delta = rho - gamma
        X = solve_sylvester(rho, gamma, delta)
        val = 2.0 * np.trace(delta @ X).real
        tag = "gmin"
    else:
        raise InvalidInput(f"unknown special divergence {name!r}")
    return DivergenceValue(float(val), tag, _digest(rho, gamma))


def h_g_integral_check(s: float, rho, gamma) -> float:
    """``Tr (rho - gamma) (L_rho + s R_gamma)^{-1} (rho - gamma)``, which equals ``H_{g_s}``."""
    if s < 0:
        raise InvalidInput("s must be non-negative")
    rho = as_density(rho)
    gamma = as_density(gamma)
    lam, U = _pd_eig(rho, "rho")
    mu, V = _pd_eig(gamma, "gamma")
    D = dagger(U) @ (rho - gamma) @ V
    return float(np.sum(np.abs(D) ** 2 / (lam[:, None] + s * mu[None, :])))


def h_g_integral_form(g: GFunction, rho, gamma) -> float:
    """Evaluate ``H_g`` for a finite g mixture through its integral representation:
    ``c Tr (rho - gamma)^2 gamma^{-1} + sum_i w_i Tr (rho - gamma)(L_rho + s_i R_gamma)^{-1}(rho - gamma)``.
    """
    if g.tag == "gs":
        return h_g_integral_check(g.param, rho, gamma)
    if g.tag != "mixture":
        raise InvalidInput("integral form needs a g_s or a g mixture")
    m = g.measure
    val = 0.0
    if m.constant_c:
        val += m.constant_c * float(h_g(gfun("quadratic"), rho, gamma))
    for s, w in m.atoms:
        val += w * h_g_integral_check(s, rho, gamma)
    return val
