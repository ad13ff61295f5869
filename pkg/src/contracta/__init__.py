"""Contraction coefficients of quantum channels for monotone metrics and g-divergences."""

from .errors import (ContractaError, DomainError, InvalidInput, NotCompletelyPositive,
                     SingularInput, Unsupported)
from .functions import (DiscreteMeasure, GFunction, KappaFunction, kappa_g_correspond,
                        kappa_mixture, parse_g, parse_kappa, symmetrize_g)
from .superop import Channel, SuperOperator, choi_and_cpt_check, omega
from .divergence import h_g, h_g_dual, special_divergence
from .geometry import fidelity, geodesic_distance, metric_value
from .contraction import (Budget, Estimate, eta_geod, eta_relent, eta_riem, eta_tr,
                          is_scrambling, lambda2)
from .qubit import AffineQubitMap, cq_coeffs, cq_map, separation_ratio, unital_coeffs

__version__ = "0.1.0"

__all__ = [
    "ContractaError", "DomainError", "InvalidInput", "NotCompletelyPositive", "SingularInput",
    "Unsupported",
    "DiscreteMeasure", "GFunction", "KappaFunction", "kappa_g_correspond", "kappa_mixture",
    "parse_g", "parse_kappa", "symmetrize_g",
    "Channel", "SuperOperator", "choi_and_cpt_check", "omega",
    "h_g", "h_g_dual", "special_divergence",
    "fidelity", "geodesic_distance", "metric_value",
    "Budget", "Estimate", "eta_geod", "eta_relent", "eta_riem", "eta_tr", "is_scrambling",
    "lambda2",
    "AffineQubitMap", "cq_coeffs", "cq_map", "separation_ratio", "unital_coeffs",
]
