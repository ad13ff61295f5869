"""Monotone metric values, fidelity, and closed-form geodesic distances.

Closed forms exist for the Wigner-Yanase metric (``arccos Tr rho^{1/2} gamma^{1/2}`` and the
chord ``||rho^{1/2} - gamma^{1/2}||_2``) and for the Bures metric (``arccos F`` and
``sqrt(2 - 2F)``). These distances are normalized so that
``D(rho, rho + eps A) / eps -> sqrt(<A, Omega A>) / 2``.
"""

import numpy as np

from .errors import InvalidInput, Unsupported
from .functions import KappaFunction
from .linalg import as_density, as_hermitian, as_traceless, eigh_unchecked
from .superop import omega

GEODESIC_KINDS = ("wy_arc", "wy_chord", "bures_arc", "bures_chord")
ARCCOS_SLACK = 1e-12

__all__ = [
    "GEODESIC_KINDS",
    "metric_value",
    "fidelity",
    "wy_affinity",
    "geodesic_distance",
    "geodesic_kind_for",
]


def metric_value(kappa: KappaFunction, rho, A) -> float:
    """``<A, Omega_rho^kappa(A)>``; equals ``Tr rho^{-1} A^2`` when ``rho`` and ``A`` commute."""
    rho = as_density(rho)
    A = as_traceless(A)
    return omega(rho, kappa).quadratic_form(A)


def _psd_sqrt(rho) -> np.ndarray:
    rho = as_hermitian(rho, tol=1e-10)
    lam, U = eigh_unchecked(rho)
    if lam[0] < -1e-10:
        raise InvalidInput("matrix is not positive semidefinite")
    return (U * np.sqrt(np.clip(lam, 0.0, None))) @ U.conj().T


def fidelity(rho, gamma) -> float:
    """``F = Tr (rho^{1/2} gamma rho^{1/2})^{1/2} = ||rho^{1/2} gamma^{1/2}||_1``.

    Positive semidefinite inputs are accepted.
    """
    s = np.linalg.svd(_psd_sqrt(rho) @ _psd_sqrt(gamma), compute_uv=False)
    return float(min(np.sum(s), 1.0))


def wy_affinity(rho, gamma) -> float:
    """``Tr rho^{1/2} gamma^{1/2}``."""
    return float(min(np.trace(_psd_sqrt(rho) @ _psd_sqrt(gamma)).real, 1.0))


def _arccos(t: float) -> float:
    if t > 1 + ARCCOS_SLACK or t < -1 - ARCCOS_SLACK:
        raise InvalidInput(f"arccos argument {t!r} outside [-1, 1]")
    return float(np.arccos(np.clip(t, -1.0, 1.0)))


def geodesic_distance(kind: str, rho, gamma) -> float:
    """Closed-form distance of the given kind (see module docstring)."""
    if kind not in GEODESIC_KINDS:
        raise InvalidInput(f"unknown geodesic kind {kind!r}")
    for M in (rho, gamma):
        if abs(np.trace(np.asarray(M)).real - 1.0) > 1e-10:
            raise InvalidInput("geodesic distances need unit-trace inputs")
    if kind.startswith("wy"):
        # chord from the root difference avoids the cancellation in 2 - 2 Tr
        chord = float(np.linalg.norm(_psd_sqrt(rho) - _psd_sqrt(gamma)))
        if kind == "wy_chord":
            return chord
        return float(2.0 * np.arcsin(min(chord / 2.0, 1.0)))
    F = fidelity(rho, gamma)
    if kind == "bures_chord":
        return float(np.sqrt(max(2.0 - 2.0 * F, 0.0)))
    return _arccos(F)


def geodesic_kind_for(kappa: KappaFunction, arc: bool = True) -> str:
    """Map ``kappa`` to the distance with a closed form; only WY and the minimal kappa qualify."""
    if kappa.tag == "wy" or (kappa.tag == "wyd" and kappa.param == 0.5):
        return "wy_arc" if arc else "wy_chord"
    if kappa.tag == "min" or (kappa.tag == "extreme" and kappa.param == 1.0):
        return "bures_arc" if arc else "bures_chord"
    raise Unsupported(f"no closed-form geodesic distance for kappa {kappa.name}")
