"""Direct-summation values set against their asymptotic expansions.

Each function returns the exactly summed quantity, the truncated expansion
and the scale of the first omitted term, so that callers can test
``|exact - expansion| <= C * scale``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import factorial

import mpmath

from ..errors import DomainError
from . import coeffs
from .logistic import logistic_deriv

SUM_DPS = 40
MAX_TERMS = 10**6


def _as_complex(z) -> complex:
    return complex(z)


def _out(x, like_real: bool):
    x = complex(x)
    return x.real if like_real else x


def _alternating_sum(exponent, weight) -> mpmath.mpc:
    """sum_{n>=1} (-1)^{n-1} weight(n) e^{-exponent(n)}.

    Stops once the terms are past their peak and below the working precision
    relative to the running total.
    """
    total = mpmath.mpc(0)
    eps = mpmath.mpf(10) ** (-SUM_DPS - 5)
    prev = None
    for n in range(1, MAX_TERMS):
        term = weight(n) * mpmath.exp(-exponent(n))
        total += term if n % 2 else -term
        size = abs(term)
        if prev is not None and size < prev and size <= eps * max(abs(total), mpmath.mpf(10) ** -300):
            return total
        prev = size
    raise DomainError("alternating series did not converge")


def false_theta_compare(ell: int, b: float, z, p: int) -> tuple[complex, complex, float]:
    """sum_{n>=1} (-1)^{n-1} n^ell e^{-n^2 z - b n z} against
    (-1)^ell sum_{h<p} (-z)^h/h! f^{(2h+ell)}(b z), f(w) = 1/(1+e^w).

    Returns (lhs, rhs, |z^p e^{-bz}|).
    """
    real = isinstance(z, (int, float))
    z = _as_complex(z)
    if ell < 0 or p < 1:
        raise DomainError("need ell >= 0 and p >= 1")
    if b < 0:
        raise DomainError(f"b must be >= 0, got {b}")
    if z.real <= 0 or abs(z.imag) > z.real:
        raise DomainError(f"z = {z} is outside Re z > 0, |Im z| <= Re z")
    with mpmath.workdps(SUM_DPS):
        zm = mpmath.mpc(z.real, z.imag)
        bm = mpmath.mpf(b)
        lhs = _alternating_sum(
            lambda n: (n * n + bm * n) * zm,
            lambda n: mpmath.mpf(n) ** ell,
        )
        w = bm * zm
        rhs = mpmath.mpc(0)
        for h in range(p):
            rhs += (-zm) ** h / factorial(h) * logistic_deriv(2 * h + ell, w)
        rhs *= (-1) ** ell
        scale = abs(zm**p * mpmath.exp(-w))
    return _out(lhs, real), _out(rhs, real), float(scale)


def _poly_p(k: int, j: int, ell: int, z):
    """P^{(j)}_{k;ell}(z) = sum_{h+2s=ell, h>=1} c_h(j)/h! (k-1/2)^s/s! (-z)^{s+h}."""
    total = 0
    kh = Fraction(2 * k - 1, 2)
    for s in range(0, (ell - 1) // 2 + 1):
        h = ell - 2 * s
        if h < 1:
            continue
        c = coeffs.c_coeff(h, j) / factorial(h) * kh**s / factorial(s)
        if c:
            total += mpmath.mpf(c.numerator) / c.denominator * (-z) ** (s + h)
    return total


def h_kmj_compare(k: int, m: int, j: int, z, L: int) -> tuple[complex, complex, float]:
    """H_{k,m,j}(e^{-z}) summed directly against its expansion through ell = L.

    H_{k,m,j}(q) = sum_{n>=1} (-1)^{n-1} q^{(k-1/2)n^2 + mn} (q^{-n/2} - q^{n/2}) q^{jn};
    expansion = sum_{ell=1}^{L} P^{(j)}_{k;ell}(z) f^{(ell)}(m z).
    Returns (exact, expansion, |z^{ceil((L+2)/2)} e^{-mz}|).
    """
    real = isinstance(z, (int, float))
    z = _as_complex(z)
    if k < 1 or m < 0 or m + j < 0:
        raise DomainError("need k >= 1, m >= 0, m + j >= 0")
    if L < 1:
        raise DomainError(f"L must be >= 1, got {L}")
    if not 0 < z.real <= 0.1 or abs(z.imag) > z.real:
        raise DomainError(f"z = {z} is outside 0 < Re z <= 0.1, |Im z| <= Re z")
    kh = k - 0.5
    with mpmath.workdps(SUM_DPS):
        zm = mpmath.mpc(z.real, z.imag)
        exact = _alternating_sum(
            lambda n: (kh * n * n + (m + j) * n - n / 2) * zm,
            lambda n: 1 - mpmath.exp(-n * zm),
        )
        w = m * zm
        expansion = mpmath.mpc(0)
        for ell in range(1, L + 1):
            expansion += _poly_p(k, j, ell, zm) * logistic_deriv(ell, w)
        power = -(-(L + 2) // 2)
        scale = abs(zm**power * mpmath.exp(-w))
    return _out(exact, real), _out(expansion, real), float(scale)


def eta_inv_compare(z, N: int | None = None):
    """1/(e^{-z}; e^{-z})_inf from the truncated product, against
    z^{1/2}/sqrt(2 pi) e^{-z/24 + pi^2/(6z)}.

    Returns (exact, main_term, |z|^{1/2}) as mpmath numbers; working
    precision is raised so that the difference is resolved absolutely.
    """
    z = _as_complex(z)
    if not 0 < z.real <= 0.25:
        raise DomainError(f"Re z = {z.real} is outside (0, 0.25]")
    if abs(z.imag) > math.sqrt(z.real):
        raise DomainError(f"|Im z| = {abs(z.imag)} exceeds (Re z)^(1/2)")
    log_size = (math.pi**2 / 6) * (z.real / abs(z) ** 2)
    dps = int(log_size / math.log(10)) + 25
    needed = math.ceil((dps + 5) * math.log(10) / z.real)
    if N is None:
        N = needed
    elif N < needed:
        raise DomainError(f"product truncation N={N} is too short; need at least {needed}")
    with mpmath.workdps(dps):
        zm = mpmath.mpc(z.real, z.imag) if z.imag else mpmath.mpf(z.real)
        log_prod = mpmath.mpf(0)
        q = mpmath.exp(-zm)
        qn = q
        for _ in range(N):
            log_prod -= mpmath.log1p(-qn) if not z.imag else mpmath.log(1 - qn)
            qn *= q
        exact = mpmath.exp(log_prod)
        main = mpmath.sqrt(zm) / mpmath.sqrt(2 * mpmath.pi) * mpmath.exp(
            -zm / 24 + mpmath.pi**2 / (6 * zm)
        )
        bound = mpmath.sqrt(abs(zm))
    return exact, main, bound
