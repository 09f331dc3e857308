"""Series oracles with certified tail enclosures, and closed forms via Bernoulli/Euler numbers.

Every partial sum is accumulated with ``math.fsum`` (exactly rounded), and the
omitted tail is enclosed on both sides:

* positive, decreasing, convex terms f(n): for the tail T = sum_{n>=N} f(n),
  ``int_N^inf f + f(N)/2 <= T <= int_{N-1/2}^inf f`` (trapezoid and midpoint
  comparisons);
* alternating terms (-1)^m a_{N+m} with completely monotone a: writing
  d^j for the j-th backward-positive difference at N,
  ``T = sum_{j<J} d^j / 2^{j+1} + theta * d^J / 2^J`` with 0 <= theta <= 1.

The reported value is the partial sum plus the centre of the enclosure and
``tail_bound`` is its half-width plus a rounding allowance, so the exact sum
always lies within ``value +/- tail_bound``.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .exact import PiMultiple, bernoulli, euler_number

__all__ = [
    "SeriesValue",
    "s_k_series",
    "zeta_2k_series",
    "s_ka_series",
    "j_k_closed",
    "s_k_from_jk",
    "s_2a_closed",
    "s_3a_closed",
    "s_ka_from_jka",
    "zeta_2k_bernoulli",
    "MAX_TERMS",
]

MAX_TERMS = 10_000_000
EULER_LEVELS = 8
_ULP = sys.float_info.epsilon


@dataclass(frozen=True)
class SeriesValue:
    value: float
    tail_bound: float
    terms_used: int


class _Enclosure:
    """Tail estimate ``centre +/- radius`` for a tail starting at index N."""

    __slots__ = ("centre", "radius")

    def __init__(self, lo: float, hi: float):
        self.centre = 0.5 * (lo + hi)
        self.radius = 0.5 * (hi - lo)


def _alternating_tail(values: list) -> _Enclosure:
    """Enclose sum_{m>=0} (-1)^m a_m given a_0..a_J of a completely monotone sequence."""
    J = len(values) - 1
    diffs = [sum((-1) ** i * comb(j, i) * values[i] for i in range(j + 1)) for j in range(J + 1)]
    lo = sum(diffs[j] / 2 ** (j + 1) for j in range(J))
    width = diffs[J] / 2**J
    return _Enclosure(float(lo), float(lo + width))


def _choose_terms(width_at, eps: float, slack: float, max_terms: int) -> int:
    """Smallest power-of-two-ish N with width_at(N)/2 + slack <= eps."""
    n = 8
    while True:
        if 0.5 * width_at(n) + slack <= eps:
            return n
        if n >= max_terms:
            achievable = 0.5 * width_at(max_terms) + slack
            raise ValueError(
                f"eps={eps:g} needs more than {max_terms} terms; achievable bound is {achievable:.3g}"
            )
        n = min(2 * n, max_terms)


def _fsum_with_slack(terms: np.ndarray) -> tuple[float, float]:
    total = math.fsum(terms)
    # each term carries at most a few ulps from pow and division
    slack = 4 * _ULP * float(np.abs(terms).sum()) + _ULP * abs(total)
    return total, slack


def _check_eps(eps: float) -> None:
    if not eps > 0:
        raise ValueError("eps must be positive")


def s_k_series(k: int, eps: float = 1e-12, max_terms: int = MAX_TERMS) -> SeriesValue:
    """sum_{n>=0} (-1)^{nk} / (2n+1)^k to within eps."""
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_eps(eps)
    slack_guess = 8 * _ULP
    if k % 2:
        def a(n):
            return Fraction(1, (2 * n + 1) ** k)

        def width(N):
            return 2 * float(_alternating_raw_width(a, N))
    else:
        def width(N):
            lo = (2 * N + 1) ** (1 - k) / (2 * (k - 1)) + 0.5 * (2 * N + 1) ** -k
            hi = (2 * N) ** (1 - k) / (2 * (k - 1))
            return hi - lo

    N = _choose_terms(width, eps, slack_guess, max_terms)
    n = np.arange(N, dtype=np.float64)
    terms = 1.0 / (2.0 * n + 1.0) ** k
    if k % 2:
        terms[1::2] *= -1.0
        tail = _alternating_tail([a(N + i) for i in range(EULER_LEVELS + 1)])
        sign = -1.0 if N % 2 else 1.0
        centre = sign * tail.centre
    else:
        lo = (2 * N + 1) ** (1 - k) / (2 * (k - 1)) + 0.5 * (2 * N + 1) ** -k
        hi = (2 * N) ** (1 - k) / (2 * (k - 1))
        tail = _Enclosure(lo, hi)
        centre = tail.centre
    partial, slack = _fsum_with_slack(terms)
    return SeriesValue(partial + centre, tail.radius + slack + _ULP * abs(centre), N)


def _alternating_raw_width(a, N: int) -> Fraction:
    J = EULER_LEVELS
    return sum((-1) ** i * comb(J, i) * a(N + i) for i in range(J + 1)) / 2 ** (J + 1)


def zeta_2k_series(k: int, eps: float = 1e-12, max_terms: int = MAX_TERMS) -> SeriesValue:
    """sum_{n>=1} 1 / n^{2k} to within eps."""
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_eps(eps)
    p = 2 * k

    def bracket(N):
        lo = N ** (1 - p) / (p - 1) + 0.5 * N**-p
        hi = (N - 0.5) ** (1 - p) / (p - 1)
        return lo, hi

    def width(N):
        lo, hi = bracket(N)
        return hi - lo

    N = _choose_terms(width, eps, 8 * _ULP, max_terms)
    n = np.arange(1, N, dtype=np.float64)
    partial, slack = _fsum_with_slack(1.0 / n**p)
    tail = _Enclosure(*bracket(N))
    return SeriesValue(partial + tail.centre, tail.radius + slack + _ULP * tail.centre, N - 1)


def s_ka_series(k: int, a: float, eps: float = 1e-12, max_terms: int = MAX_TERMS) -> SeriesValue:
    """Bilateral sum_{n in Z} (-1)^{nk} / (a n + 1)^k, terms n and -n paired, to within eps."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if not a > 1:
        raise ValueError("a must be > 1")
    _check_eps(eps)
    a = float(a)
    # n >= 1 contributes p_n = (a n + 1)^-k, n = -m contributes (-1)^k q_m with q_m = (a m - 1)^-k.

    def p(t):
        return (a * t + 1.0) ** -k

    def q(t):
        return (a * t - 1.0) ** -k

    def convex_bracket(N):
        lo = ((a * N + 1) ** (1 - k) + (a * N - 1) ** (1 - k)) / (a * (k - 1)) + 0.5 * (p(N) + q(N))
        hi = ((a * (N - 0.5) + 1) ** (1 - k) + (a * (N - 0.5) - 1) ** (1 - k)) / (a * (k - 1))
        return lo, hi

    def alternating_width(N):
        J = EULER_LEVELS
        return sum(
            (-1) ** i * comb(J, i) * (p(N + i) + q(N + i)) for i in range(J + 1)
        ) / 2**J

    if k % 2:
        def width(N):
            return abs(alternating_width(N))
    else:
        def width(N):
            lo, hi = convex_bracket(N)
            return hi - lo

    slack_guess = 16 * _ULP + (2**EULER_LEVELS * _ULP * p(8) if k % 2 else 0.0)
    N = _choose_terms(width, eps, slack_guess, max_terms)
    n = np.arange(1, N, dtype=np.float64)
    sign = np.where(n % 2 == 1, -1.0, 1.0) if k % 2 else np.ones_like(n)
    pos = (a * n + 1.0) ** -k
    neg = (a * n - 1.0) ** -k
    paired = sign * (pos + (neg if k % 2 == 0 else -neg))
    partial, slack = _fsum_with_slack(np.concatenate(([1.0], paired)))
    slack += 4 * _ULP * float((pos + neg).sum())

    if k % 2:
        tp = _alternating_tail([p(N + i) for i in range(EULER_LEVELS + 1)])
        tq = _alternating_tail([q(N + i) for i in range(EULER_LEVELS + 1)])
        s = -1.0 if N % 2 else 1.0
        centre = s * (tp.centre - tq.centre)
        radius = tp.radius + tq.radius
        # float differences of order EULER_LEVELS lose about 2^J ulps of the leading term
        radius += 2**EULER_LEVELS * _ULP * (p(N) + q(N))
    else:
        tail = _Enclosure(*convex_bracket(N))
        centre, radius = tail.centre, tail.radius
    return SeriesValue(partial + centre, radius + slack + _ULP * abs(centre), 2 * N - 1)


def j_k_closed(k: int) -> PiMultiple:
    """int_0^inf ln^{k-1}(z) / (z^2 - (-1)^k) dz in closed form.

    Even k: (4^k - 2^k)/k * (pi/2)^k * |B_k|;  odd k: (pi/2)^k * |E_{k-1}|.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    half_pi_k = PiMultiple(Fraction(1, 2**k), k)
    if k % 2 == 0:
        return half_pi_k * (Fraction(4**k - 2**k, k) * abs(bernoulli(k)))
    return half_pi_k * abs(euler_number(k - 1))


def s_k_from_jk(k: int) -> PiMultiple:
    """S(k) = J_k / (2 (k-1)!)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    return j_k_closed(k) / (2 * factorial(k - 1))


def zeta_2k_bernoulli(k: int) -> PiMultiple:
    """Classical zeta(2k) = |B_{2k}| (2 pi)^{2k} / (2 (2k)!)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return PiMultiple(abs(bernoulli(2 * k)) * 2 ** (2 * k) / (2 * factorial(2 * k)), 2 * k)


def _check_a(a: float) -> float:
    if not a > 1:
        raise ValueError("a must be > 1")
    return float(a)


def s_2a_closed(a: float) -> float:
    """(pi/a)^2 csc^2(pi/a)."""
    a = _check_a(a)
    x = math.pi / a
    return (x / math.sin(x)) ** 2


def s_3a_closed(a: float) -> float:
    """(pi^3 / 2a^3) [csc^3(pi/a) + cot^2(pi/a) csc(pi/a)]."""
    a = _check_a(a)
    x = math.pi / a
    csc = 1.0 / math.sin(x)
    cot = math.cos(x) * csc
    return 0.5 * x**3 * (csc**3 + cot**2 * csc)


def s_ka_from_jka(k: int, jka: float) -> float:
    """S(k, a) = J_{k,a} / (k-1)!."""
    if k < 2:
        raise ValueError("k must be >= 2")
    return jka / factorial(k - 1)
