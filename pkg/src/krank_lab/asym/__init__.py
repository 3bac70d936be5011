"""Asymptotic expansions of k-rank statistics and their building blocks."""

from .bessel import bessel_i_halfint, bessel_i_scaled, h_hat
from .closed_forms import LC_VARIANTS, disc_rhs, lc_rhs, mono_rhs, sech, sech_ratio
from .coeffs import a_coeff, c_coeff, gamma_coeff
from .comparators import eta_inv_compare, false_theta_compare, h_kmj_compare
from .expansion import (
    DEFAULT_ORDER,
    TruncationOrder,
    UpsilonOperator,
    UpsilonTerm,
    build_upsilon,
    j_series,
    krank_asym,
)
from .logistic import LogisticDerivPoly, logistic_deriv, logistic_poly
from .numbers import AsymContext, HalfInt, LogReal, asym_context, beta

__all__ = [
    "AsymContext",
    "DEFAULT_ORDER",
    "HalfInt",
    "LC_VARIANTS",
    "LogReal",
    "LogisticDerivPoly",
    "TruncationOrder",
    "UpsilonOperator",
    "UpsilonTerm",
    "a_coeff",
    "asym_context",
    "bessel_i_halfint",
    "bessel_i_scaled",
    "beta",
    "build_upsilon",
    "c_coeff",
    "disc_rhs",
    "eta_inv_compare",
    "false_theta_compare",
    "gamma_coeff",
    "h_hat",
    "h_kmj_compare",
    "j_series",
    "krank_asym",
    "lc_rhs",
    "logistic_deriv",
    "logistic_poly",
    "mono_rhs",
    "sech",
    "sech_ratio",
]
