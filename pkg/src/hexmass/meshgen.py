"""Test-element generators, a portable seeded PRNG and element file I/O.

Random draws come from SplitMix64 (Steele, Lea & Flood 2014) so that seeds
mean the same thing in any language::

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)                     # all arithmetic mod 2**64

A uniform double in [0, 1) is ``(next_u64() >> 11) * 2**-53``.  Seed 0 yields
``0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F, ...``.

For a random family, coordinates are drawn element by element, node by node
(1..8) and component by component (x, y, z).
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ElementFileError
from .hex8 import CORNERS, ElementGeometry, NodalDensities, det3

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """SplitMix64 output finaliser."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = int(seed) & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def random(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) * 2.0**-53

    def uniform(self, low: float, high: float) -> float:
        return low + (high - low) * self.random()


def derive_seed(seed: int, index: int) -> int:
    """Independent stream seed for sub-experiment ``index`` of a master seed."""
    return mix64((int(seed) & MASK64) + (index + 1) * GOLDEN_GAMMA)


@dataclass(frozen=True)
class RandomFamilySpec:
    delta: float
    count: int
    seed: int = 0

    def __post_init__(self):
        if not (math.isfinite(self.delta) and self.delta >= 0.0):
            raise ValueError(f"delta must be finite and non-negative, got {self.delta!r}")
        if self.count < 1:
            raise ValueError(f"count must be at least 1, got {self.count!r}")


def gen_shear_family(epsilon: float) -> ElementGeometry:
    """Sheared parallelepiped with unit metric everywhere; epsilon=0 is the reference cube."""
    e = float(epsilon)
    nodes = [
        [-1.0 + e, -1.0, -1.0],
        [1.0 + e, -1.0, -1.0],
        [1.0, 1.0, -1.0 + e],
        [-1.0, 1.0, -1.0 + e],
        [-1.0 + e, -1.0, 1.0],
        [1.0 + e, -1.0, 1.0],
        [1.0, 1.0, 1.0 + e],
        [-1.0, 1.0, 1.0 + e],
    ]
    return ElementGeometry(nodes)


def gen_random_family(spec: RandomFamilySpec) -> list[ElementGeometry]:
    """Reference cubes with every coordinate perturbed by an independent U(-delta, delta)."""
    rng = SplitMix64(spec.seed)
    d = float(spec.delta)
    out = []
    for _ in range(spec.count):
        nodes = np.empty((8, 3))
        for i in range(8):
            for k in range(3):
                nodes[i, k] = CORNERS[i, k] + d * (2.0 * rng.random() - 1.0)
        out.append(ElementGeometry(nodes))
    return out


def parallelepiped(origin, a, b, c) -> ElementGeometry:
    """Nodes at origin + {0,1}-combinations of the edge vectors a, b, c."""
    origin = np.asarray(origin, dtype=np.float64)
    edges = np.array([a, b, c], dtype=np.float64)
    return ElementGeometry(origin + 0.5 * (CORNERS + 1.0) @ edges)


def gen_random_parallelepiped(seed: int, min_volume: float = 0.1) -> ElementGeometry:
    """Random affine element: origin and edges uniform in [-2, 2], det(edges) > min_volume."""
    rng = SplitMix64(seed)
    origin = [rng.uniform(-2.0, 2.0) for _ in range(3)]
    while True:
        edges = np.array([[rng.uniform(-2.0, 2.0) for _ in range(3)] for _ in range(3)])
        # columns of the Jacobian are the edge vectors
        if det3(edges.T) > min_volume:
            return parallelepiped(origin, *edges)


@dataclass(frozen=True)
class ElementRecord:
    geometry: ElementGeometry
    densities: NodalDensities = field(default_factory=NodalDensities.study)
    id: str = "element"


def record_to_json(rec: ElementRecord) -> dict:
    return {
        "id": rec.id,
        "nodes": [[float(x) for x in row] for row in rec.geometry.nodes],
        "densities": [float(r) for r in rec.densities.rho],
    }


def record_from_json(obj, where: str = "element") -> ElementRecord:
    if not isinstance(obj, dict):
        raise ElementFileError(f"{where}: expected a JSON object, got {type(obj).__name__}")
    if "nodes" not in obj:
        raise ElementFileError(f"{where}: missing field 'nodes'")
    nodes = obj["nodes"]
    if not isinstance(nodes, list) or len(nodes) != 8:
        n = len(nodes) if isinstance(nodes, list) else type(nodes).__name__
        raise ElementFileError(f"{where}: field 'nodes' must list 8 nodes, got {n}")
    for i, row in enumerate(nodes):
        if not (isinstance(row, list) and len(row) == 3 and all(_is_number(x) for x in row)):
            raise ElementFileError(f"{where}: field 'nodes[{i}]' must be 3 numbers, got {row!r}")
    rec_id = obj.get("id", "element")
    if not isinstance(rec_id, str):
        raise ElementFileError(f"{where}: field 'id' must be a string")
    densities = NodalDensities.study()
    if obj.get("densities") is not None:
        rho = obj["densities"]
        if not (isinstance(rho, list) and len(rho) == 8 and all(_is_number(x) for x in rho)):
            raise ElementFileError(f"{where}: field 'densities' must be 8 numbers")
        try:
            densities = NodalDensities(rho)
        except ValueError as exc:
            raise ElementFileError(f"{where}: field 'densities': {exc}") from None
    try:
        geometry = ElementGeometry(nodes)
    except ValueError as exc:
        raise ElementFileError(f"{where}: field 'nodes': {exc}") from None
    geometry.validate()
    return ElementRecord(geometry, densities, rec_id)


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _load(path) -> object:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ElementFileError(
            f"{os.fspath(path)}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None


def read_elements(path) -> list[ElementRecord]:
    """Read a single-element object or an array of them."""
    obj = _load(path)
    name = os.fspath(path)
    if isinstance(obj, list):
        if not obj:
            raise ElementFileError(f"{name}: empty element array")
        return [record_from_json(o, f"{name}[{i}]") for i, o in enumerate(obj)]
    return [record_from_json(obj, name)]


def read_element(path) -> ElementRecord:
    recs = read_elements(path)
    if len(recs) != 1:
        raise ElementFileError(f"{os.fspath(path)}: expected one element, found {len(recs)}")
    return recs[0]


def write_elements(recs, path) -> None:
    recs = list(recs)
    payload = [record_to_json(r) for r in recs]
    with open(path, "w", encoding="utf-8") as fh:
        # repr-based float output round-trips exactly (<= 17 significant digits)
        json.dump(payload if len(payload) != 1 else payload[0], fh, indent=1)
        fh.write("\n")


def write_element(rec: ElementRecord, path) -> None:
    write_elements([rec], path)
