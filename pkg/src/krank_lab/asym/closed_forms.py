"""Closed-form asymptotic right-hand sides compared against exact data."""

from __future__ import annotations

import math

from ..errors import DomainError
from .numbers import asym_context, beta


def sech(x: float) -> float:
    ax = abs(x)
    e = math.exp(-ax)
    return 2.0 * e / (1.0 + e * e)


def sech_ratio(m: int, n: int) -> float:
    """(pi / (4 sqrt(6n))) sech^2(pi m / (2 sqrt(6n))), the limit of N_k(m,n)/p(n)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    root = math.sqrt(6.0 * n)
    return math.pi / (4.0 * root) * sech(math.pi * m / (2.0 * root)) ** 2


LC_VARIANTS = ("combined", "small_m", "large_m")


def lc_rhs(m: int, n: int, variant: str = "combined") -> float:
    """Asymptotic value of -Delta_m^2 log N_k(m, n).

    combined: beta_n^2/2 sech^2(m beta_n/2) + 3/pi^2 beta_{n-|m|}^3
    small_m:  same, with beta_n^3 in the second term
    large_m:  3/pi^2 beta_{n-|m|}^3 alone
    """
    if variant not in LC_VARIANTS:
        raise DomainError(f"unknown variant {variant!r}")
    a = abs(m)
    if n - a < 1:
        raise DomainError(f"need n - |m| >= 1, got n={n}, m={m}")
    b = asym_context(n).beta_n
    tail = 3.0 / math.pi**2
    if variant == "large_m":
        return tail * beta(n - a) ** 3
    head = b * b / 2.0 * sech(a * b / 2.0) ** 2
    if variant == "small_m":
        return head + tail * b**3
    return head + tail * beta(n - a) ** 3


def disc_rhs(k: int, m: int, n: int) -> float:
    """Leading form of the normalized discriminant L_k(m, n).

    [(1/32) sech^6(m beta/2) + (3 beta / (16 pi^2)) sech^4(m beta/2)] beta^2;
    the leading terms do not depend on k.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    b = asym_context(n).beta_n
    s = sech(abs(m) * b / 2.0)
    return (s**6 / 32.0 + 3.0 * b / (16.0 * math.pi**2) * s**4) * b * b


def mono_rhs(m: int, n: int) -> float:
    """(1 + e^{-pi|m|/sqrt(6n)})^{-2} tanh(pi (2m+1) / (4 sqrt(6n)))."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    root = math.sqrt(6.0 * n)
    damp = (1.0 + math.exp(-math.pi * abs(m) / root)) ** -2
    return damp * math.tanh(math.pi * (2 * m + 1) / (4.0 * root))
