"""Element mass matrices for the 8-node brick.

Five lumped schemes are available through :func:`lumped_mass`:

``cm``
    closed form with the metric frozen at its centroid value J0.
``lm``
    closed form with the metric modelled as J0 + xi*Jt1 + eta*Jt2 + zeta*Jt3,
    where Jt_k is the metric at the centre of the +xi, +eta, +zeta face
    minus J0.
``np1``, ``np4``
    the 1-point and 4-point brick quadratures with the exact metric.
``exact``
    3x3x3 Gauss. The metric is at most quadratic in each local coordinate and
    rho0 * phi_i at most quadratic as well, so degree 5 per axis is exact.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import InvalidElementError
from .hex8 import as_nodes, as_rho, det3, jacobian_at
from .quadrature import QuadratureRule, gauss_tensor, special_rule_np1, special_rule_np4

# 27 * integral of phi_i * phi_j over the reference cube
CM_COEFFS = np.array(
    [
        [8, 4, 2, 4, 4, 2, 1, 2],
        [4, 8, 4, 2, 2, 4, 2, 1],
        [2, 4, 8, 4, 1, 2, 4, 2],
        [4, 2, 4, 8, 2, 1, 2, 4],
        [4, 2, 1, 2, 8, 4, 2, 4],
        [2, 4, 2, 1, 4, 8, 4, 2],
        [1, 2, 4, 2, 2, 4, 8, 4],
        [2, 1, 2, 4, 4, 2, 4, 8],
    ],
    dtype=np.float64,
)

# 27 * integral of xi * phi_i * phi_j, and likewise for eta and zeta
LM_COEFFS = np.array(
    [
        [
            [-4, 0, 0, -2, -2, 0, 0, -1],
            [0, 4, 2, 0, 0, 2, 1, 0],
            [0, 2, 4, 0, 0, 1, 2, 0],
            [-2, 0, 0, -4, -1, 0, 0, -2],
            [-2, 0, 0, -1, -4, 0, 0, -2],
            [0, 2, 1, 0, 0, 4, 2, 0],
            [0, 1, 2, 0, 0, 2, 4, 0],
            [-1, 0, 0, -2, -2, 0, 0, -4],
        ],
        [
            [-4, -2, 0, 0, -2, -1, 0, 0],
            [-2, -4, 0, 0, -1, -2, 0, 0],
            [0, 0, 4, 2, 0, 0, 2, 1],
            [0, 0, 2, 4, 0, 0, 1, 2],
            [-2, -1, 0, 0, -4, -2, 0, 0],
            [-1, -2, 0, 0, -2, -4, 0, 0],
            [0, 0, 2, 1, 0, 0, 4, 2],
            [0, 0, 1, 2, 0, 0, 2, 4],
        ],
        [
            [-4, -2, -1, -2, 0, 0, 0, 0],
            [-2, -4, -2, -1, 0, 0, 0, 0],
            [-1, -2, -4, -2, 0, 0, 0, 0],
            [-2, -1, -2, -4, 0, 0, 0, 0],
            [0, 0, 0, 0, 4, 2, 1, 2],
            [0, 0, 0, 0, 2, 4, 2, 1],
            [0, 0, 0, 0, 1, 2, 4, 2],
            [0, 0, 0, 0, 2, 1, 2, 4],
        ],
    ],
    dtype=np.float64,
)
CM_COEFFS.flags.writeable = False
LM_COEFFS.flags.writeable = False

# centroid, then the +xi, +eta, +zeta face centres
LM_SAMPLE_POINTS = np.array(
    [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
)
LM_SAMPLE_POINTS.flags.writeable = False

LUMPED_SCHEMES = ("cm", "lm", "np1", "np4", "exact")


class NonPositiveMassWarning(UserWarning):
    pass


@dataclass(frozen=True, eq=False)
class LumpedMass:
    diag: np.ndarray
    scheme: str
    flagged: bool = False

    @property
    def total(self) -> float:
        return float(np.sum(self.diag))


@dataclass(frozen=True, eq=False)
class ConsistentMass:
    m: np.ndarray
    scheme: str

    @property
    def total(self) -> float:
        return float(np.sum(self.m))


class LmMetricModel(NamedTuple):
    j0: float
    jt1: float
    jt2: float
    jt3: float


def centroid_metric(g) -> float:
    return float(det3(jacobian_at(g, LM_SAMPLE_POINTS[0])))


def lm_metric_model(g) -> LmMetricModel:
    j = det3(jacobian_at(g, LM_SAMPLE_POINTS))
    j0 = float(j[0])
    return LmMetricModel(j0, float(j[1] - j0), float(j[2] - j0), float(j[3] - j0))


def _require_positive(j0: float) -> None:
    if not j0 > 0.0:
        raise InvalidElementError(f"centroid metric J0 = {j0!r} is not positive")


def lumped_cm(g, d) -> LumpedMass:
    j0 = centroid_metric(g)
    _require_positive(j0)
    diag = CM_COEFFS @ as_rho(d) * j0 / 27.0
    return LumpedMass(diag, "cm")


def lumped_lm(g, d) -> LumpedMass:
    """Linear-metric closed form; non-positive entries are flagged, not rejected."""
    j0, jt1, jt2, jt3 = lm_metric_model(g)
    _require_positive(j0)
    rho = as_rho(d)
    diag = (
        j0 * (CM_COEFFS @ rho)
        + jt1 * (LM_COEFFS[0] @ rho)
        + jt2 * (LM_COEFFS[1] @ rho)
        + jt3 * (LM_COEFFS[2] @ rho)
    ) / 27.0
    flagged = bool(np.any(diag <= 0.0))
    if flagged:
        warnings.warn(
            "linear-metric rule produced a non-positive lumped mass", NonPositiveMassWarning,
            stacklevel=2,
        )
    return LumpedMass(diag, "lm", flagged)


def _point_terms(g, d, rule):
    """Per-point (w * rho0 * J) factors and shape values."""
    jac = np.einsum("im,pin->pmn", as_nodes(g), rule.dphi)
    rho0 = rule.phi @ as_rho(d)
    return rule.weights * rho0 * det3(jac), rule.phi


def lumped_quadrature(g, d, rule: QuadratureRule) -> LumpedMass:
    """M_ii = sum_p w_p rho0(p) phi_i(p) J(p), accumulated in point order."""
    f, phi = _point_terms(g, d, rule)
    diag = np.zeros(8)
    for p in range(len(f)):
        diag += f[p] * phi[p]
    return LumpedMass(diag, rule.name)


def consistent_quadrature(g, d, rule: QuadratureRule) -> ConsistentMass:
    f, phi = _point_terms(g, d, rule)
    m = np.zeros((8, 8))
    for p in range(len(f)):
        m += f[p] * np.outer(phi[p], phi[p])
    return ConsistentMass(m, rule.name)


def lumped_exact(g, d) -> LumpedMass:
    out = lumped_quadrature(g, d, gauss_tensor(3))
    return LumpedMass(out.diag, "exact")


def consistent_exact(g, d) -> ConsistentMass:
    out = consistent_quadrature(g, d, gauss_tensor(3))
    return ConsistentMass(out.m, "exact-consistent")


def lumped_mass(g, d, scheme: str) -> LumpedMass:
    """Dispatch on a scheme name from :data:`LUMPED_SCHEMES`."""
    if scheme == "cm":
        return lumped_cm(g, d)
    if scheme == "lm":
        return lumped_lm(g, d)
    if scheme == "np1":
        return lumped_quadrature(g, d, special_rule_np1())
    if scheme == "np4":
        return lumped_quadrature(g, d, special_rule_np4())
    if scheme == "exact":
        return lumped_exact(g, d)
    raise ValueError(f"unknown lumped scheme {scheme!r}; choose from {LUMPED_SCHEMES}")
