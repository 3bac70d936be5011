"""Small exact/log-scaled number types used by the asymptotic engine."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..errors import DomainError


@dataclass(frozen=True, order=True)
class HalfInt:
    """The number twice_value / 2, kept exact."""

    twice_value: int

    @classmethod
    def of(cls, x) -> "HalfInt":
        if isinstance(x, HalfInt):
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, int):
            return cls(2 * x)
        if isinstance(x, Fraction):
            t = 2 * x
            if t.denominator != 1:
                raise DomainError(f"{x} is not a half-integer")
            return cls(t.numerator)
        if isinstance(x, float):
            t = 2 * x
            if t != int(t):
                raise DomainError(f"{x} is not a half-integer")
            return cls(int(t))
        raise TypeError(f"cannot make a HalfInt from {type(x).__name__}")

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    @property
    def is_half_odd(self) -> bool:
        """True for n + 1/2 (odd twice_value)."""
        return self.twice_value % 2 != 0

    def __add__(self, other) -> "HalfInt":
        other = HalfInt.of(other)
        return HalfInt(self.twice_value + other.twice_value)

    __radd__ = __add__

    def __sub__(self, other) -> "HalfInt":
        other = HalfInt.of(other)
        return HalfInt(self.twice_value - other.twice_value)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice_value)

    def __str__(self) -> str:
        if self.twice_value % 2 == 0:
            return str(self.twice_value // 2)
        return f"{self.twice_value}/2"


def _logaddexp(a: float, b: float) -> float:
    if a < b:
        a, b = b, a
    return a + math.log1p(math.exp(b - a))


def _logsubexp(a: float, b: float) -> float:
    # log(e^a - e^b) for a >= b
    if a == b:
        return -math.inf
    return a + math.log1p(-math.exp(b - a))


@dataclass(frozen=True)
class LogReal:
    """Signed real stored as (sign, natural log of |value|)."""

    sign: int
    log_magnitude: float = -math.inf

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise DomainError(f"sign must be -1, 0 or 1, got {self.sign}")

    @classmethod
    def zero(cls) -> "LogReal":
        return cls(0, -math.inf)

    @classmethod
    def from_float(cls, x: float) -> "LogReal":
        if x == 0:
            return cls.zero()
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_int(cls, n: int) -> "LogReal":
        # math.log accepts arbitrarily large ints
        if n == 0:
            return cls.zero()
        return cls(1 if n > 0 else -1, math.log(abs(n)))

    @classmethod
    def exp(cls, x: float) -> "LogReal":
        return cls(1, x)

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        try:
            return self.sign * math.exp(self.log_magnitude)
        except OverflowError:
            return self.sign * math.inf

    def __neg__(self) -> "LogReal":
        return LogReal(-self.sign, self.log_magnitude)

    def __mul__(self, other) -> "LogReal":
        if not isinstance(other, LogReal):
            other = LogReal.from_float(other)
        s = self.sign * other.sign
        if s == 0:
            return LogReal.zero()
        return LogReal(s, self.log_magnitude + other.log_magnitude)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LogReal":
        if not isinstance(other, LogReal):
            other = LogReal.from_float(other)
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero LogReal")
        if self.sign == 0:
            return LogReal.zero()
        return LogReal(self.sign * other.sign, self.log_magnitude - other.log_magnitude)

    def __add__(self, other) -> "LogReal":
        if not isinstance(other, LogReal):
            other = LogReal.from_float(other)
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        if self.sign == other.sign:
            return LogReal(self.sign, _logaddexp(self.log_magnitude, other.log_magnitude))
        big, small = (self, other) if self.log_magnitude >= other.log_magnitude else (other, self)
        mag = _logsubexp(big.log_magnitude, small.log_magnitude)
        if mag == -math.inf:
            return LogReal.zero()
        return LogReal(big.sign, mag)

    __radd__ = __add__

    def __sub__(self, other) -> "LogReal":
        if not isinstance(other, LogReal):
            other = LogReal.from_float(other)
        return self + (-other)

    def ratio_to(self, other: "LogReal") -> float:
        """self / other as a plain float (finite when the two are comparable)."""
        return float(self / other)

    def log10(self) -> float:
        return self.log_magnitude / math.log(10)


@dataclass(frozen=True)
class AsymContext:
    n: int
    beta_n: float
    lambda_n: float


def asym_context(n: int) -> AsymContext:
    """Scale parameters beta_n = pi/sqrt(6(n-1/24)) and Lambda_n = pi sqrt((n-1/24)/6)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    shifted = n - 1.0 / 24.0
    return AsymContext(n, math.pi / math.sqrt(6.0 * shifted), math.pi * math.sqrt(shifted / 6.0))


def beta(x: float) -> float:
    """beta at a real argument; used where the shift n - |m| is needed."""
    if x - 1.0 / 24.0 <= 0:
        raise DomainError(f"beta undefined at {x}")
    return math.pi / math.sqrt(6.0 * (x - 1.0 / 24.0))
