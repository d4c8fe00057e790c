"""Quadrature rules on the reference cube [-1, 1]^3."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, NamedTuple

import numpy as np

from .hex8 import LocalCoord, shape_gradients, shape_values


class QuadraturePoint(NamedTuple):
    coord: LocalCoord
    weight: float


def _gauss_1d_table():
    s = math.sqrt
    t = {}
    t[1] = ((0.0,), (2.0,))
    g = 1.0 / s(3.0)
    t[2] = ((-g, g), (1.0, 1.0))
    g = s(3.0 / 5.0)
    t[3] = ((-g, 0.0, g), (5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0))
    a = s(3.0 / 7.0 - 2.0 / 7.0 * s(6.0 / 5.0))
    b = s(3.0 / 7.0 + 2.0 / 7.0 * s(6.0 / 5.0))
    wa = (18.0 + s(30.0)) / 36.0
    wb = (18.0 - s(30.0)) / 36.0
    t[4] = ((-b, -a, a, b), (wb, wa, wa, wb))
    a = s(5.0 - 2.0 * s(10.0 / 7.0)) / 3.0
    b = s(5.0 + 2.0 * s(10.0 / 7.0)) / 3.0
    wa = (322.0 + 13.0 * s(70.0)) / 900.0
    wb = (322.0 - 13.0 * s(70.0)) / 900.0
    t[5] = ((-b, -a, 0.0, a, b), (wb, wa, 128.0 / 225.0, wa, wb))
    # no surd form for six points
    x = (0.2386191860831969086305017, 0.6612093864662645136613996, 0.9324695142031520278123016)
    w = (0.4679139345726910473898703, 0.3607615730481386075698335, 0.1713244923791703450402961)
    t[6] = (
        (-x[2], -x[1], -x[0], x[0], x[1], x[2]),
        (w[2], w[1], w[0], w[0], w[1], w[2]),
    )
    return t


GAUSS_1D = _gauss_1d_table()
MAX_GAUSS_ORDER = max(GAUSS_1D)


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Weighted point set on the reference cube.

    ``coords`` is ``(n_points, 3)`` and ``weights`` is ``(n_points,)``; both
    are read-only.
    """

    name: str
    coords: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=np.float64).reshape(-1, 3)
        weights = np.array(self.weights, dtype=np.float64).reshape(-1)
        if len(coords) != len(weights) or len(weights) == 0:
            raise ValueError("a rule needs as many weights as points, and at least one")
        if np.any(weights <= 0.0):
            raise ValueError("quadrature weights must be positive")
        if np.any(np.abs(coords) > 1.0):
            raise ValueError("quadrature points must lie in the reference cube")
        coords.flags.writeable = False
        weights.flags.writeable = False
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return len(self.weights)

    @cached_property
    def phi(self) -> np.ndarray:
        """Shape values tabulated at the points, ``(n_points, 8)``."""
        return shape_values(self.coords)

    @cached_property
    def dphi(self) -> np.ndarray:
        return shape_gradients(self.coords)

    @property
    def points(self) -> list[QuadraturePoint]:
        return [
            QuadraturePoint(LocalCoord(*map(float, c)), float(w))
            for c, w in zip(self.coords, self.weights)
        ]


@lru_cache(maxsize=None)
def gauss_tensor(n: int) -> QuadratureRule:
    """n x n x n Gauss-Legendre rule, xi varying fastest, then eta, then zeta.

    Exact for polynomials of degree <= 2n - 1 in each variable separately.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_GAUSS_ORDER:
        raise ValueError(f"Gauss order must be an integer in [1, {MAX_GAUSS_ORDER}], got {n!r}")
    x, w = GAUSS_1D[int(n)]
    coords = [(x[i], x[j], x[k]) for k in range(n) for j in range(n) for i in range(n)]
    weights = [w[i] * w[j] * w[k] for k in range(n) for j in range(n) for i in range(n)]
    return QuadratureRule(f"gauss{n}", coords, weights)


@lru_cache(maxsize=None)
def special_rule_np1() -> QuadratureRule:
    """Single centroid point with weight 8."""
    return QuadratureRule("np1", [(0.0, 0.0, 0.0)], [8.0])


@lru_cache(maxsize=None)
def special_rule_np4() -> QuadratureRule:
    """Four-point brick rule, each point weighted 2."""
    a = math.sqrt(2.0 / 3.0)
    b = 1.0 / math.sqrt(3.0)
    coords = [(0.0, a, -b), (0.0, -a, -b), (a, 0.0, b), (-a, 0.0, b)]
    return QuadratureRule("np4", coords, [2.0] * 4)


def integrate(rule: QuadratureRule, f: Callable[[LocalCoord], float]) -> float:
    """Sum ``f(point) * weight`` over the rule in point order."""
    total = 0.0
    for coord, weight in rule.points:
        total += f(coord) * weight
    return total
