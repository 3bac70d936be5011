"""Exact rational coefficient tables.

``a_coeff`` gives the Hankel coefficients of the large-argument expansion of
I_mu; ``gamma_coeff`` their alternating binomial combinations (the
coefficients of the normalized Bessel combination H-hat); ``c_coeff`` the
Taylor coefficients of (e^{w/2} - e^{-w/2}) e^{-jw}.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, factorial

from .numbers import HalfInt


class CoeffTables:
    """Memo tables, safe for concurrent lookup-or-insert."""

    def __init__(self):
        self._lock = threading.Lock()
        self.a: dict[tuple[int, int], Fraction] = {}
        self.gamma: dict[tuple[int, int, int], Fraction] = {}
        self.c: dict[tuple[int, int], Fraction] = {}

    def _memo(self, table: dict, key, compute):
        with self._lock:
            hit = table.get(key)
        if hit is not None:
            return hit
        value = compute()
        with self._lock:
            return table.setdefault(key, value)

    def a_coeff(self, j: int, mu) -> Fraction:
        if j < 0:
            raise ValueError(f"j must be >= 0, got {j}")
        mu = HalfInt.of(mu)

        def compute():
            t2 = mu.twice_value * mu.twice_value  # (2 mu)^2
            num = 1
            for s in range(1, j + 1):
                num *= t2 - (2 * s - 1) ** 2
            return Fraction(num, 8**j * factorial(j))

        return self._memo(self.a, (j, mu.twice_value), compute)

    def gamma_coeff(self, ell: int, mu, nu: int) -> Fraction:
        if ell < 0 or nu < 0:
            raise ValueError("ell and nu must be nonnegative")
        mu = HalfInt.of(mu)

        def compute():
            total = Fraction(0)
            for h in range(nu + 1):
                term = comb(nu, h) * self.a_coeff(ell, mu + (nu - h))
                total += -term if h % 2 else term
            return total

        return self._memo(self.gamma, (ell, mu.twice_value, nu), compute)

    def c_coeff(self, ell: int, j: int) -> Fraction:
        if ell < 1:
            raise ValueError(f"ell must be >= 1, got {ell}")

        def compute():
            half = Fraction(1, 2)
            return (half - j) ** ell - (-1) ** ell * (half + j) ** ell

        return self._memo(self.c, (ell, j), compute)


DEFAULT_TABLES = CoeffTables()


def a_coeff(j: int, mu) -> Fraction:
    """a_j(mu) = prod_{s=1}^{j} ((2mu)^2 - (2s-1)^2) / (8^j j!)."""
    return DEFAULT_TABLES.a_coeff(j, mu)


def gamma_coeff(ell: int, mu, nu: int) -> Fraction:
    """sum_{h=0}^{nu} (-1)^h C(nu, h) a_ell(mu + nu - h)."""
    return DEFAULT_TABLES.gamma_coeff(ell, mu, nu)


def c_coeff(ell: int, j: int) -> Fraction:
    """(1/2 - j)^ell - (-1)^ell (1/2 + j)^ell."""
    return DEFAULT_TABLES.c_coeff(ell, j)
