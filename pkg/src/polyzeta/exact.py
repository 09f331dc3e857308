"""Exact arithmetic: rationals, rational multiples of powers of pi, Bernoulli and Euler numbers."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import mpmath

__all__ = ["Rational", "PiMultiple", "bernoulli", "euler_number"]

# Arbitrary-precision exact fraction; always stored in lowest terms with a positive denominator.
Rational = Fraction


@dataclass(frozen=True)
class PiMultiple:
    """The exact number ``coeff * pi**pi_power``."""

    coeff: Fraction
    pi_power: int

    def __post_init__(self) -> None:
        if not isinstance(self.pi_power, int) or self.pi_power < 0:
            raise ValueError(f"pi_power must be a nonnegative integer, got {self.pi_power!r}")
        object.__setattr__(self, "coeff", Fraction(self.coeff))

    def __mul__(self, other):
        if isinstance(other, PiMultiple):
            return PiMultiple(self.coeff * other.coeff, self.pi_power + other.pi_power)
        if isinstance(other, (int, Fraction)):
            return PiMultiple(self.coeff * other, self.pi_power)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return PiMultiple(self.coeff / other, self.pi_power)
        return NotImplemented

    def __float__(self) -> float:
        return float(self.to_mpf(30))

    def to_mpf(self, dps: int = 50) -> mpmath.mpf:
        with mpmath.workdps(dps + 10):
            value = mpmath.mpf(self.coeff.numerator) / self.coeff.denominator
            value *= mpmath.pi ** self.pi_power
        return value

    def decimal(self, digits: int = 15) -> str:
        """Decimal expansion with `digits` significant digits, correctly rounded."""
        return mpmath.nstr(self.to_mpf(max(50, 2 * digits)), digits, strip_zeros=False)

    def __str__(self) -> str:
        if self.pi_power == 0:
            return str(self.coeff)
        head = "π" if self.pi_power == 1 else f"π^{self.pi_power}"
        return f"{head} * {self.coeff}"


_bernoulli_cache: list[Fraction] = [Fraction(1)]
_euler_cache: list[int] = [1]
_lock = threading.Lock()


def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m with x/(e^x - 1) = sum B_m x^m / m!, so B_1 = -1/2.

    Computed from sum_{j=0}^{m} C(m+1, j) B_j = 0 and memoized.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if m >= 3 and m % 2:
        return Fraction(0)
    with _lock:
        cache = _bernoulli_cache
        while len(cache) <= m:
            n = len(cache)
            s = sum(comb(n + 1, j) * cache[j] for j in range(n))
            cache.append(-s / (n + 1))
        return cache[m]


def euler_number(m: int) -> int:
    """Euler number E_m with sech(x) = sum E_m x^m / m! (E_2 = -1, E_4 = 5)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if m % 2:
        return 0
    half = m // 2
    with _lock:
        cache = _euler_cache  # cache[j] holds E_{2j}
        while len(cache) <= half:
            n = len(cache)
            cache.append(-sum(comb(2 * n, 2 * j) * cache[j] for j in range(n)))
        return cache[half]
