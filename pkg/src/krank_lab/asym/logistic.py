"""Derivatives of the logistic kernel f(w) = 1/(1 + e^w).

Since f' = f^2 - f, every derivative is a polynomial in f:
d^r f / dw^r = P_r(f) with P_0(X) = X and P_{r+1} = P_r'(X) (X^2 - X).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath

from ..errors import BudgetError

MAX_ORDER = 64


@dataclass(frozen=True)
class LogisticDerivPoly:
    order: int
    coeffs: tuple[int, ...]  # coeffs[i] multiplies X**i

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@lru_cache(maxsize=None)
def logistic_poly(r: int) -> LogisticDerivPoly:
    if r < 0:
        raise ValueError(f"order must be >= 0, got {r}")
    if r > MAX_ORDER:
        raise BudgetError(f"derivative order {r} exceeds {MAX_ORDER}")
    if r == 0:
        return LogisticDerivPoly(0, (0, 1))
    prev = logistic_poly(r - 1).coeffs
    deriv = [i * prev[i] for i in range(1, len(prev))]  # P' coefficients
    out = [0] * (len(deriv) + 2)
    for i, c in enumerate(deriv):
        out[i + 2] += c
        out[i + 1] -= c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return LogisticDerivPoly(r, tuple(out))


def _real_part(w) -> float:
    if isinstance(w, (complex, mpmath.mpc)):
        return float(w.real)
    return float(w)


def _exp(w):
    if isinstance(w, (mpmath.mpf, mpmath.mpc)):
        return mpmath.exp(w)
    if isinstance(w, complex):
        return cmath.exp(w)
    return math.exp(w)


def _kernel_nonneg(w):
    # f(w) for Re w >= 0 without overflow
    e = _exp(-w)
    return e / (1 + e)


def logistic_deriv(r: int, w):
    """r-th derivative of 1/(1+e^w) at w (float, complex or mpmath number).

    Evaluated at Re w >= 0 only; for Re w < 0 the identity
    f(w) + f(-w) = 1 maps the point to the right half-plane, where f is small
    and P_r(f) carries no cancellation.
    """
    poly = logistic_poly(r)
    if _real_part(w) >= 0:
        return poly(_kernel_nonneg(w))
    mirrored = poly(_kernel_nonneg(-w))
    if r == 0:
        return 1 - mirrored
    return mirrored if r % 2 else -mirrored
