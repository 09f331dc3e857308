"""Tanh-sinh quadrature on (0, 1) and the logarithmic / principal-value integrals built on it.

Semi-infinite integrals are folded onto (0, 1) with z -> 1/z before
integration, so the engine only ever sees the unit interval. Integrands are
vectorized: they take the node array ``x`` and, when they need it near the
right endpoint, the exactly computed complement ``xc = 1 - x``.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

__all__ = [
    "QuadResult",
    "QuadratureError",
    "integrate_unit",
    "tanh_sinh_nodes",
    "j_k_quad",
    "j_ka_quad",
    "vanishing_integral_check",
    "cauchy_pv",
    "density_normalization",
    "z2_density",
    "z2_cdf",
    "z2_cdf_array",
]

T_MAX = 6.5
MAX_LEVEL = 12
_ULP = sys.float_info.epsilon


@dataclass(frozen=True)
class QuadResult:
    value: float
    abs_error_estimate: float
    evaluations: int


class QuadratureError(ArithmeticError):
    """Raised when refinement stops before the error estimate reaches the tolerance."""

    def __init__(self, message: str, partial: QuadResult):
        super().__init__(message)
        self.partial = partial


@lru_cache(maxsize=None)
def tanh_sinh_nodes(level: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nodes x, complements 1 - x and weights of the level-`level` rule, step h = 2^-level.

    Only nodes new at this level are returned for level >= 1 (odd multiples
    of h); level 0 returns the full rule with h = 1. Nodes that round to an
    endpoint are dropped.
    """
    h = 2.0**-level
    if level == 0:
        t = np.arange(-math.floor(T_MAX), math.floor(T_MAX) + 1, dtype=np.float64)
    else:
        m = int(T_MAX / h)
        t = np.arange(-m + (m % 2 == 0), m + 1, 2, dtype=np.float64) * h
    s = math.pi * np.sinh(t)
    with np.errstate(over="ignore"):
        x = 1.0 / (1.0 + np.exp(-s))
        xc = 1.0 / (1.0 + np.exp(s))
    w = h * math.pi * np.cosh(t) * x * xc
    keep = (x > 0.0) & (xc > 0.0) & (w > 0.0)
    for arr in (x, xc, w):
        arr.flags.writeable = False
    return x[keep], xc[keep], w[keep]


def _evaluate(f, x, xc, with_complement: bool) -> np.ndarray:
    y = f(x, xc) if with_complement else f(x)
    y = np.broadcast_to(np.asarray(y, dtype=np.float64), x.shape)
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y)][:3]
        raise QuadratureError(f"integrand not finite at x = {bad}", QuadResult(math.nan, math.inf, 0))
    return y


def integrate_unit(
    f: Callable,
    tol: float = 1e-10,
    *,
    rtol: float = 0.0,
    with_complement: bool = False,
    max_level: int = MAX_LEVEL,
) -> QuadResult:
    """Integrate a vectorized `f` over (0, 1) by tanh-sinh with level doubling.

    The error estimate is the change between successive levels, floored at
    the rounding level of the weighted sum. Stops once it is at most
    ``max(tol, rtol * |value|)``; raises QuadratureError if `max_level` is
    reached first.
    """
    if not tol > 0 and not rtol > 0:
        raise ValueError("need a positive tol or rtol")
    x, xc, w = tanh_sinh_nodes(0)
    y = _evaluate(f, x, xc, with_complement)
    raw = math.fsum(w * y)  # sum over nodes at the current step, unscaled
    abs_raw = float(np.abs(w * y).sum())
    evaluations = x.size
    estimate = raw
    err = math.inf
    for level in range(1, max_level + 1):
        x, xc, w = tanh_sinh_nodes(level)
        y = _evaluate(f, x, xc, with_complement)
        evaluations += x.size
        # nodes of the new level carry weight h_new, old ones must be halved
        raw = 0.5 * raw + math.fsum(w * y)
        abs_raw = 0.5 * abs_raw + float(np.abs(w * y).sum())
        previous, estimate = estimate, raw
        floor = 64 * _ULP * abs_raw
        err = max(abs(estimate - previous), floor)
        if level >= 3 and err <= max(tol, rtol * abs(estimate), floor):
            return QuadResult(estimate, err, evaluations)
    raise QuadratureError(
        f"tanh-sinh did not reach tol={tol:g} by level {max_level} (estimate {err:.3g})",
        QuadResult(estimate, err, evaluations),
    )


def _log_and_complement(x, xc):
    """ln(x) accurate on all of (0, 1), using log1p(-xc) where x is close to 1."""
    with np.errstate(divide="ignore"):
        return np.where(x > 0.5, np.log1p(-xc), np.log(x))


def j_k_quad(k: int, tol: float = 1e-10) -> QuadResult:
    """J_k = int_0^inf ln^{k-1}(z)/(z^2 - (-1)^k) dz, folded to 2 int_0^1 of the same integrand."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if k % 2:
        def f(x, xc):
            return 2.0 * _log_and_complement(x, xc) ** (k - 1) / (x * x + 1.0)
    else:
        def f(x, xc):
            lx = _log_and_complement(x, xc)
            # z^2 - 1 = -(1-z)(1+z); the ratio ln(z)/(z^2-1) -> 1/2 at z = 1
            ratio = lx / (-xc * (1.0 + x))
            return 2.0 * ratio * lx ** (k - 2)
    return integrate_unit(f, tol, rtol=tol, with_complement=True)


def j_ka_quad(k: int, a: float, tol: float = 1e-10) -> QuadResult:
    """J_{k,a} = int_0^inf ln^{k-1}(z)/(z^a - (-1)^k) dz over (0,1) after folding (1, inf) by z = 1/u."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if not a > 1:
        raise ValueError("a must be > 1")
    a = float(a)
    if k % 2:
        def f(x, xc):
            lx = _log_and_complement(x, xc)
            xa = np.exp(a * lx)
            return lx ** (k - 1) * (1.0 + np.exp((a - 2.0) * lx)) / (xa + 1.0)
    else:
        def f(x, xc):
            lx = _log_and_complement(x, xc)
            # ln(u)/(u^a - 1) with u^a - 1 = expm1(a ln u); limit 1/a at u = 1
            ratio = lx / np.expm1(a * lx)
            return lx ** (k - 2) * ratio * (1.0 + np.exp((a - 2.0) * lx))
    return integrate_unit(f, tol, rtol=tol, with_complement=True)


def vanishing_integral_check(k: int, tol: float = 1e-12) -> QuadResult:
    """int_0^inf ln^k(z)/(z^2 - (-1)^k) dz folded onto (0, 1).

    The two folded halves 1/(u^2 - s) and s/(1 - s u^2), s = (-1)^k, are
    evaluated separately and cancel exactly in floating point, so the
    returned value is exactly 0 when the fold is right.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    s = -1.0 if k % 2 else 1.0

    def f(x, xc):
        lx = _log_and_complement(x, xc)
        # s = 1: u^2 - 1 = -(1-u)(1+u), built from the exact complement
        gap = xc * (1.0 + x) if s > 0 else x * x + 1.0
        inner = 1.0 / (-s * gap)
        outer = s / gap
        return lx**k * (inner + outer)

    return integrate_unit(f, tol, with_complement=True)


def cauchy_pv(m: int, n: int, tol: float = 1e-10) -> QuadResult:
    """Principal value of int_0^inf t^{m-1}/(t^n - 1) dt for 1 <= m < n.

    Folding (1, inf) onto (0, 1) with t = 1/u turns the integrand into
    t^{n-m-1}/(1 - t^n). Near t = 1 each half behaves like the pole term
    (1/n)/(t - 1) and its mirror (1/n)/(1 - t); these cancel, and what is
    integrated is the regular remainder (t^{m-1} - t^{n-m-1})/(t^n - 1),
    evaluated through expm1 so the cancellation is exact to rounding.
    """
    if not 1 <= m < n:
        raise ValueError("need 1 <= m < n (the integral diverges otherwise)")
    lo, hi = sorted((m - 1, n - m - 1))

    def f(x, xc):
        lx = _log_and_complement(x, xc)
        num = -np.exp(lo * lx) * np.expm1((hi - lo) * lx)  # t^lo - t^hi
        den = np.expm1(n * lx)
        out = num / den
        return out if m - 1 == lo else -out

    return integrate_unit(f, tol, with_complement=True)


def density_normalization(a: float, role: str, tol: float = 1e-12) -> QuadResult:
    """Total mass on (0, inf) of the generalized half-Cauchy densities.

    role="first": (a/pi) sin(pi/a) / (x^a + 1);
    role="other": (2/pi) sin(pi/a) x^{1-2/a} / (x^2 + 1).
    """
    if not a > 1:
        raise ValueError("a must be > 1")
    a = float(a)
    c = math.sin(math.pi / a) / math.pi
    if role == "first":
        def f(x, xc):
            lx = _log_and_complement(x, xc)
            return a * c * (1.0 + np.exp((a - 2.0) * lx)) / (np.exp(a * lx) + 1.0)
    elif role == "other":
        e = 1.0 - 2.0 / a

        def f(x, xc):
            lx = _log_and_complement(x, xc)
            return 2.0 * c * (np.exp(e * lx) + np.exp(-e * lx)) / (x * x + 1.0)
    else:
        raise ValueError("role must be 'first' or 'other'")
    return integrate_unit(f, tol, with_complement=True)


_Z2_SCALE = 4.0 / math.pi**2


def z2_density(z):
    """Density (4/pi^2) ln(z)/(z^2 - 1) of the ratio of two independent half-Cauchy variables."""
    z = np.asarray(z, dtype=np.float64)
    d = z - 1.0
    with np.errstate(invalid="ignore", divide="ignore"):
        near = np.abs(d) < 0.25
        # log1p keeps ln(z)/(z - 1) accurate around z = 1
        ratio = np.where(near, np.log1p(np.where(near, d, 0.0)) / np.where(d == 0.0, 1.0, d), np.log(z) / d)
        ratio = np.where(d == 0.0, 1.0, ratio)
        return _Z2_SCALE * ratio / (z + 1.0)


def _z2_scaled_integrand(upper, x, xc):
    """upper * f(upper * x): the CDF integrand after t = upper * x, for upper <= 1.

    `upper` broadcasts against the node arrays. 1 - upper*x is formed as
    (1 - upper) + upper*(1 - x) so it stays accurate at the removable point t = 1.
    """
    lt = np.log(upper) + _log_and_complement(x, xc)
    t = upper * x
    d = (1.0 - upper) + upper * xc
    return upper * _Z2_SCALE * lt / (-d * (1.0 + t))


def _z2_unit(upper: float, tol: float) -> float:
    return integrate_unit(
        lambda x, xc: _z2_scaled_integrand(upper, x, xc), tol, with_complement=True
    ).value


def z2_cdf(z: float, tol: float = 1e-12) -> float:
    """CDF of the half-Cauchy ratio, int_0^z (4/pi^2) ln(t)/(t^2 - 1) dt.

    For z > 1 the piece over (1, z) is mapped to (1/z, 1) by t = 1/u, under
    which the integrand is unchanged.
    """
    if not z > 0:
        raise ValueError("z must be > 0")
    if z <= 1.0:
        return _z2_unit(z, tol)
    below_one = _z2_unit(1.0, tol)
    if math.isinf(z):
        return 2.0 * below_one
    return 2.0 * below_one - _z2_unit(1.0 / z, tol)


def z2_cdf_array(z, level: int = 4, chunk: int = 16384) -> np.ndarray:
    """z2_cdf at many points with one fixed tanh-sinh rule (step 2^-level)."""
    z = np.asarray(z, dtype=np.float64)
    if np.any(~(z > 0)):
        raise ValueError("z must be > 0")
    parts = [tanh_sinh_nodes(lv) for lv in range(level + 1)]
    x = np.concatenate([p[0] for p in parts])
    xc = np.concatenate([p[1] for p in parts])
    # rescale every sub-rule to the finest step
    w = np.concatenate([p[2] * 2.0 ** (lv - level) for lv, p in enumerate(parts)])
    half = float(_z2_scaled_integrand(1.0, x, xc) @ w)
    flat = z.ravel()
    out = np.empty_like(flat)
    for start in range(0, flat.size, chunk):
        zz = flat[start:start + chunk]
        below = zz <= 1.0
        upper = np.where(below, zz, 1.0 / np.where(np.isinf(zz), 1.0, zz))
        upper = np.where(np.isinf(zz), 0.0, upper)
        with np.errstate(divide="ignore", invalid="ignore"):
            mass = _z2_scaled_integrand(upper[:, None], x[None, :], xc[None, :]) @ w
        mass = np.where(upper == 0.0, 0.0, mass)
        out[start:start + chunk] = np.where(below, mass, 2.0 * half - mass)
    return out.reshape(z.shape)
