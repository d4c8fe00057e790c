"""Reference-element mathematics for the trilinear 8-node brick.

Node ordering (each node sits where its shape function equals one)::

    1: (-1,-1,-1)   2: (+1,-1,-1)   3: (+1,+1,-1)   4: (-1,+1,-1)
    5: (-1,-1,+1)   6: (+1,-1,+1)   7: (+1,+1,+1)   8: (-1,+1,+1)

Arrays are zero-based, so node ``i`` above is row ``i - 1``.  All point
arguments broadcast: a point is anything shaped ``(..., 3)``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import InvalidElementError

# corner (xi, eta, zeta) signs of nodes 1..8
CORNERS = np.array(
    [
        [-1.0, -1.0, -1.0],
        [+1.0, -1.0, -1.0],
        [+1.0, +1.0, -1.0],
        [-1.0, +1.0, -1.0],
        [-1.0, -1.0, +1.0],
        [+1.0, -1.0, +1.0],
        [+1.0, +1.0, +1.0],
        [-1.0, +1.0, +1.0],
    ]
)
CORNERS.flags.writeable = False

# Densities used throughout the accuracy study: lower face 1, upper face 2.
STUDY_DENSITIES = (1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 2.0)


class LocalCoord(NamedTuple):
    xi: float
    eta: float
    zeta: float


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class ElementGeometry:
    """Nodal positions of one brick, ``nodes[i, k]`` = component k of node i+1."""

    nodes: np.ndarray

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=np.float64)
        if nodes.shape != (8, 3):
            raise ValueError(f"expected 8x3 nodal coordinates, got shape {nodes.shape}")
        if not np.all(np.isfinite(nodes)):
            raise ValueError("nodal coordinates must be finite")
        object.__setattr__(self, "nodes", _readonly(nodes))

    @classmethod
    def reference(cls) -> "ElementGeometry":
        """The reference cube itself: the identity map."""
        return cls(CORNERS)

    def translated(self, shift) -> "ElementGeometry":
        return ElementGeometry(self.nodes + np.asarray(shift, dtype=np.float64))

    def scaled(self, s: float) -> "ElementGeometry":
        return ElementGeometry(self.nodes * s)

    def validate(self) -> float:
        """Check orientation and return the centroid metric.

        Raises InvalidElementError if the centroid metric is not positive and
        warns if any corner metric is not positive.
        """
        j0 = float(metric_at(self, (0.0, 0.0, 0.0)))
        if not j0 > 0.0:
            raise InvalidElementError(f"centroid metric J0 = {j0!r} is not positive")
        corner = metric_at(self, CORNERS)
        if np.any(corner <= 0.0):
            bad = [int(i) + 1 for i in np.flatnonzero(corner <= 0.0)]
            warnings.warn(
                f"non-positive metric at corner node(s) {bad}", InvertedCornerWarning, stacklevel=2
            )
        return j0


class InvertedCornerWarning(UserWarning):
    pass


@dataclass(frozen=True)
class NodalDensities:
    rho: np.ndarray

    def __post_init__(self):
        rho = np.array(self.rho, dtype=np.float64)
        if rho.shape != (8,):
            raise ValueError(f"expected 8 nodal densities, got shape {rho.shape}")
        if not np.all(np.isfinite(rho)) or np.any(rho <= 0.0):
            raise ValueError("nodal densities must be finite and strictly positive")
        object.__setattr__(self, "rho", _readonly(rho))

    @classmethod
    def uniform(cls, value: float = 1.0) -> "NodalDensities":
        return cls(np.full(8, value))

    @classmethod
    def study(cls) -> "NodalDensities":
        return cls(STUDY_DENSITIES)


def as_nodes(g) -> np.ndarray:
    if isinstance(g, ElementGeometry):
        return g.nodes
    return ElementGeometry(g).nodes


def as_rho(d) -> np.ndarray:
    if isinstance(d, NodalDensities):
        return d.rho
    return NodalDensities(d).rho


def _split(p):
    p = np.asarray(p, dtype=np.float64)
    if p.shape[-1] != 3:
        raise ValueError(f"local coordinates need a trailing axis of 3, got shape {p.shape}")
    return p[..., 0:1], p[..., 1:2], p[..., 2:3]


def shape_values(p) -> np.ndarray:
    """Trilinear shape functions ``phi_1..phi_8`` at ``p``; shape ``(..., 8)``."""
    xi, eta, zeta = _split(p)
    a = 1.0 + CORNERS[:, 0] * xi
    b = 1.0 + CORNERS[:, 1] * eta
    c = 1.0 + CORNERS[:, 2] * zeta
    return 0.125 * a * b * c


def shape_gradients(p) -> np.ndarray:
    """Local derivatives of the shape functions, shape ``(..., 8, 3)``.

    Row i holds (d/dxi, d/deta, d/dzeta) of phi_{i+1}.
    """
    xi, eta, zeta = _split(p)
    a = 1.0 + CORNERS[:, 0] * xi
    b = 1.0 + CORNERS[:, 1] * eta
    c = 1.0 + CORNERS[:, 2] * zeta
    return 0.125 * np.stack(
        [CORNERS[:, 0] * b * c, a * CORNERS[:, 1] * c, a * b * CORNERS[:, 2]], axis=-1
    )


def geometry_map(g, p) -> np.ndarray:
    """Global position X(p) = sum_i phi_i(p) N_i."""
    return shape_values(p) @ as_nodes(g)


def density_at(d, p) -> np.ndarray | float:
    out = shape_values(p) @ as_rho(d)
    return float(out) if out.ndim == 0 else out


def jacobian_at(g, p) -> np.ndarray:
    """J[m, n] = d X_m / d local_n, shape ``(..., 3, 3)``."""
    return np.einsum("im,...in->...mn", as_nodes(g), shape_gradients(p))


def det3(m) -> np.ndarray | float:
    """Determinant of 3x3 matrices by the explicit six-term expansion."""
    m = np.asarray(m, dtype=np.float64)
    J11, J12, J13 = m[..., 0, 0], m[..., 0, 1], m[..., 0, 2]
    J21, J22, J23 = m[..., 1, 0], m[..., 1, 1], m[..., 1, 2]
    J31, J32, J33 = m[..., 2, 0], m[..., 2, 1], m[..., 2, 2]
    out = (
        J11 * J22 * J33
        - J11 * J23 * J32
        - J31 * J22 * J13
        - J21 * J12 * J33
        + J21 * J32 * J13
        + J31 * J12 * J23
    )
    return float(out) if np.ndim(out) == 0 else out


def metric_at(g, p) -> np.ndarray | float:
    """Jacobian determinant (volume scale factor) at ``p``."""
    return det3(jacobian_at(g, p))
