"""The two changes of variables onto the unit cube and their Jacobian determinants.

* trig map, open polytope {u_i + u_{i+1} < 1} -> (0,1)^k:
  x_i = sin(pi u_i / 2) / cos(pi u_{i+1} / 2)
* Zagier-type map, hyperbolic polytope {xi_i xi_{i+1} < 1} -> (0,1)^k:
  x_i = xi_i^2 (xi_{i+1}^2 + 1) / (xi_i^2 + 1)

Indices are cyclic throughout.
"""

from __future__ import annotations

import math
from typing import Callable, Optional

import numpy as np

__all__ = [
    "in_delta",
    "in_hypertope",
    "in_unit_cube",
    "trig_map",
    "trig_jacobian_closed",
    "zagier_map",
    "zagier_jacobian_closed",
    "numeric_jacobian_det",
    "random_delta_points",
    "random_hypertope_points",
]

Domain = Callable[[np.ndarray], bool]


def _as_point(p) -> np.ndarray:
    arr = np.asarray(p, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("a point must be a nonempty 1-d sequence of coordinates")
    return arr


def _next(p: np.ndarray) -> np.ndarray:
    return np.roll(p, -1)


def _delta_rows(u: np.ndarray, margin: float) -> np.ndarray:
    return np.all(u > margin, axis=-1) & np.all(u + np.roll(u, -1, axis=-1) + margin < 1.0, axis=-1)


def in_delta(u, margin: float = 0.0) -> bool:
    """True iff moving any one coordinate by up to `margin` stays inside {u > 0, u_i + u_{i+1} < 1}."""
    return bool(_delta_rows(_as_point(u), margin))


def _hypertope_rows(xi: np.ndarray, margin: float) -> np.ndarray:
    nxt = np.roll(xi, -1, axis=-1)
    slack = xi * nxt + margin * np.maximum(xi, nxt)
    return np.all(xi > margin, axis=-1) & np.all(slack < 1.0, axis=-1)


def in_hypertope(xi, margin: float = 0.0) -> bool:
    """True iff moving any one coordinate by up to `margin` stays inside {xi > 0, xi_i xi_{i+1} < 1}."""
    return bool(_hypertope_rows(_as_point(xi), margin))


def in_unit_cube(x) -> bool:
    x = _as_point(x)
    return bool(np.all((x > 0.0) & (x < 1.0)))


def trig_map(u) -> np.ndarray:
    u = _as_point(u)
    if not in_delta(u):
        raise ValueError("point is outside the cyclic-sum polytope")
    return np.sin(0.5 * math.pi * u) / np.cos(0.5 * math.pi * _next(u))


def trig_jacobian_closed(x) -> float:
    """(pi/2)^k (1 - (-1)^k prod x_i^2)."""
    x = _as_point(x)
    k = x.size
    return (0.5 * math.pi) ** k * (1.0 - (-1) ** k * float(np.prod(x * x)))


def zagier_map(xi) -> np.ndarray:
    xi = _as_point(xi)
    if not in_hypertope(xi):
        raise ValueError("point is outside the cyclic-product polytope")
    sq = xi * xi
    return sq * (_next(sq) + 1.0) / (sq + 1.0)


def zagier_jacobian_closed(x, xi) -> float:
    """2^k sqrt(prod x_i) (1 - (-1)^k prod x_i) / prod (xi_i^2 + 1), for x = zagier_map(xi)."""
    x = _as_point(x)
    xi = _as_point(xi)
    if x.size != xi.size:
        raise ValueError("x and xi must have the same length")
    k = x.size
    px = float(np.prod(x))
    return 2.0**k * math.sqrt(px) * (1.0 - (-1) ** k * px) / float(np.prod(xi * xi + 1.0))


def numeric_jacobian_det(
    f: Callable[[np.ndarray], np.ndarray],
    point,
    h: float = 1e-5,
    *,
    margin: Optional[float] = None,
    domain: Optional[Domain] = None,
) -> float:
    """Determinant of the central-difference Jacobian of f at point.

    With a `domain` predicate, every displacement of up to `margin` (default 10 h)
    along a coordinate axis must stay inside it, otherwise ValueError.
    """
    p = _as_point(point)
    if not h > 0:
        raise ValueError("h must be positive")
    margin = 10.0 * h if margin is None else margin
    if margin < h:
        raise ValueError("margin must be at least h")
    k = p.size
    if domain is not None:
        for j in range(k):
            for s in (-margin, margin):
                q = p.copy()
                q[j] += s
                if not domain(q):
                    raise ValueError("point is too close to the boundary for this step")
    jac = np.empty((k, k))
    for j in range(k):
        step = np.zeros(k)
        step[j] = h
        jac[:, j] = (np.asarray(f(p + step), dtype=np.float64) - np.asarray(f(p - step), dtype=np.float64)) / (2 * h)
    return float(np.linalg.det(jac))


def random_delta_points(k: int, count: int, rng: np.random.Generator, margin: float = 0.0) -> np.ndarray:
    """`count` uniform points of the cyclic-sum polytope (rejection from the cube), shrunk by `margin`."""
    if k < 1 or count < 0:
        raise ValueError("k must be >= 1 and count >= 0")
    out = np.empty((0, k))
    while out.shape[0] < count:
        u = rng.uniform(size=(max(64, 4 * count), k))
        out = np.vstack([out, u[_delta_rows(u, margin)]])
    return out[:count]


def random_hypertope_points(k: int, count: int, rng: np.random.Generator, margin: float = 0.0) -> np.ndarray:
    """Points of the cyclic-product polytope, as tan(pi u / 2) of cyclic-sum polytope points.

    Uses tan(a) tan(b) < 1 iff a + b < pi/2 for a, b in (0, pi/2). The interior
    margin is enforced on the image, in the sense of `in_hypertope`.
    """
    out = np.empty((0, k))
    while out.shape[0] < count:
        xi = np.tan(0.5 * math.pi * random_delta_points(k, max(64, 2 * count), rng))
        out = np.vstack([out, xi[_hypertope_rows(xi, margin)]])
    return out[:count]
