"""Half-integer order modified Bessel functions and the normalized
alternating combination H-hat.

For nu = +-(n + 1/2) the function I_nu(u) is an exact finite combination

    sqrt(2 pi u) I_nu(u) = e^u A_n(u) + s e^{-u} B_n(u),

A_n = sum_k (-1)^k c_k / (2u)^k, B_n = sum_k c_k / (2u)^k,
c_k = (n+k)! / (k! (n-k)!), s = (-1)^{n+1} for +nu and (-1)^n for -nu,
so no recurrence in the order is ever run.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import comb, factorial

import mpmath

from ..errors import DomainError, PrecisionError
from . import coeffs
from .numbers import HalfInt, LogReal

MAX_TWICE_ORDER = 41


def _poly_coeffs(n: int) -> tuple[int, ...]:
    return tuple(factorial(n + k) // (factorial(k) * factorial(n - k)) for k in range(n + 1))


def _check_order(nu: HalfInt) -> None:
    if not nu.is_half_odd:
        raise DomainError(f"order {nu} is not a half-odd integer")
    if abs(nu.twice_value) > MAX_TWICE_ORDER:
        raise DomainError(f"|order| {nu} exceeds {MAX_TWICE_ORDER}/2")


def bessel_i_scaled(nu, u, bits: int = 128):
    """sqrt(2 pi u) e^{-u} I_nu(u) as an mpmath number at the given precision."""
    nu = HalfInt.of(nu)
    _check_order(nu)
    n = (abs(nu.twice_value) - 1) // 2
    if nu.twice_value > 0:
        s = -1 if n % 2 == 0 else 1
    else:
        s = 1 if n % 2 == 0 else -1
    c = _poly_coeffs(n)
    with mpmath.workprec(bits):
        u = mpmath.mpf(u)
        if u <= 0:
            raise DomainError("u must be positive")
        x = 1 / (2 * u)
        a = mpmath.mpf(0)
        b = mpmath.mpf(0)
        xp = mpmath.mpf(1)
        for k, ck in enumerate(c):
            a += (-1) ** k * ck * xp
            b += ck * xp
            xp *= x
        return +(a + s * mpmath.exp(-2 * u) * b)


def bessel_i_halfint(nu, u: float, bits: int = 128) -> LogReal:
    """I_nu(u) for half-odd-integer nu, as a LogReal."""
    nu = HalfInt.of(nu)
    if u <= 0:
        raise DomainError("u must be positive")
    scaled = bessel_i_scaled(nu, u, bits)
    if scaled == 0:
        return LogReal.zero()
    with mpmath.workprec(bits):
        log_mag = mpmath.log(abs(scaled)) + mpmath.mpf(u) - mpmath.log(2 * mpmath.pi * u) / 2
    return LogReal(1 if scaled > 0 else -1, float(log_mag))


def _required_bits(nu: int, u: float) -> int:
    # the alternating sum loses about nu * log2(u) bits; keep 64 after that
    return 64 + nu * max(1, math.ceil(math.log2(u)))


def h_hat(mu, nu: int, u: float, L: int, bits: int = 128) -> tuple[float, float, float]:
    """Exact H-hat_{mu,nu}(u), its truncated expansion, and the first omitted term.

    H_{mu,nu} = sum_h (-1)^h C(nu,h) I_{mu+nu-h}, H-hat = sqrt(2 pi u) e^{-u} H;
    the expansion is sum_{ceil(nu/2) <= l <= L} (-1)^l gamma_l(mu,nu) / u^l.
    When gamma at the first omitted index vanishes its coefficient is taken as 1.
    """
    mu = HalfInt.of(mu)
    if u < 10:
        raise DomainError(f"u must be >= 10, got {u}")
    if not 0 <= nu <= 8:
        raise DomainError(f"nu must lie in [0, 8], got {nu}")
    if L < 1:
        raise DomainError(f"L must be >= 1, got {L}")
    if bits < _required_bits(nu, u):
        raise PrecisionError(f"{bits} bits cannot certify H-hat at nu={nu}, u={u}")
    with mpmath.workprec(bits):
        exact = mpmath.mpf(0)
        for h in range(nu + 1):
            term = comb(nu, h) * bessel_i_scaled(mu + (nu - h), u, bits)
            exact += -term if h % 2 else term
    start = (nu + 1) // 2
    uf = Fraction(u).limit_denominator(10**12) if isinstance(u, float) else Fraction(u)
    series = Fraction(0)
    for ell in range(start, L + 1):
        series += (-1) ** ell * coeffs.gamma_coeff(ell, mu, nu) / uf**ell
    first = max(L + 1, start)
    g = abs(coeffs.gamma_coeff(first, mu, nu))
    if g == 0:
        g = Fraction(1)
    return float(exact), float(series), float(g / uf**first)
