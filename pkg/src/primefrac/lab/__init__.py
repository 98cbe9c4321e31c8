"""Finite models of the convolution operators and the studies built on them."""

from .signals import SignalWindow, convolve, shift
from .norms import (
    NormReport,
    endpoint_l1_linf,
    l2_power_norm,
    norm_lowerbound_search,
    norm_report,
    riesz_thorin_bound,
)
from .decompose import Decomposition, decompose
from .weaktype import WeakTypeResult, weak_type_sweep
from .studies import decay_study, t_lambda_study

__all__ = [
    "SignalWindow", "convolve", "shift",
    "NormReport", "endpoint_l1_linf", "l2_power_norm", "norm_lowerbound_search",
    "norm_report", "riesz_thorin_bound",
    "Decomposition", "decompose",
    "WeakTypeResult", "weak_type_sweep",
    "decay_study", "t_lambda_study",
]
