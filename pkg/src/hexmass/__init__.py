"""Lumped and consistent mass matrices for the 8-node hexahedral element."""

from .exceptions import ElementFileError, HexmassError, InvalidElementError
from .hex8 import (
    ElementGeometry,
    LocalCoord,
    NodalDensities,
    density_at,
    det3,
    geometry_map,
    jacobian_at,
    metric_at,
    shape_gradients,
    shape_values,
)
from .mass import (
    ConsistentMass,
    LmMetricModel,
    LumpedMass,
    centroid_metric,
    consistent_exact,
    consistent_quadrature,
    lm_metric_model,
    lumped_cm,
    lumped_exact,
    lumped_lm,
    lumped_mass,
    lumped_quadrature,
)
from .quadrature import QuadratureRule, gauss_tensor, integrate, special_rule_np1, special_rule_np4

__version__ = "0.1.0"
