"""Accuracy study: closed-form and quadrature schemes against the exact oracle."""

from __future__ import annotations

import io
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .hex8 import NodalDensities
from .mass import LumpedMass, centroid_metric, lumped_exact, lumped_mass
from .meshgen import RandomFamilySpec, derive_seed, gen_random_family, gen_shear_family

log = logging.getLogger(__name__)

STUDY_SCHEMES = ("cm", "lm", "np1", "np4")
# closed-form rule -> the quadrature of comparable cost
EQUIVALENT = {"cm": "np1", "lm": "np4"}
CSV_HEADER = "scheme,delta,n_elements,n_skipped,mean_error_pct,max_error_pct"


def element_error_pct(approx, exact) -> float:
    """Mean over the 8 nodes of |approx - exact| / |exact|, in percent."""
    a = approx.diag if isinstance(approx, LumpedMass) else np.asarray(approx, dtype=np.float64)
    e = exact.diag if isinstance(exact, LumpedMass) else np.asarray(exact, dtype=np.float64)
    if np.any(e == 0.0):
        raise ValueError("exact lumped mass has a zero entry; relative error undefined")
    return float(np.mean(np.abs(a - e) / np.abs(e)) * 100.0)


def run_epsilon_table(epsilon: float, densities=None) -> dict[str, float]:
    g = gen_shear_family(epsilon)
    d = NodalDensities.study() if densities is None else densities
    exact = lumped_exact(g, d)
    return {s: element_error_pct(lumped_mass(g, d, s), exact) for s in STUDY_SCHEMES}


def delta_grid(delta_max: float = 0.7, step: float = 0.05) -> list[float]:
    if step <= 0.0 or delta_max < 0.0:
        raise ValueError("need step > 0 and delta_max >= 0")
    n = int(round(delta_max / step))
    return [round(k * step, 12) for k in range(n + 1)]


@dataclass(frozen=True)
class StudyConfig:
    deltas: tuple = field(default_factory=lambda: tuple(delta_grid()))
    elements_per_delta: int = 100
    seed: int = 42
    schemes: tuple = STUDY_SCHEMES
    densities: NodalDensities = field(default_factory=NodalDensities.study)
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "deltas", tuple(float(x) for x in self.deltas))
        object.__setattr__(self, "schemes", tuple(self.schemes))
        if any(x < 0.0 for x in self.deltas) or list(self.deltas) != sorted(self.deltas):
            raise ValueError("deltas must be non-negative and ascending")
        if self.elements_per_delta < 1:
            raise ValueError("elements_per_delta must be at least 1")
        bad = set(self.schemes) - set(STUDY_SCHEMES)
        if bad or not self.schemes:
            raise ValueError(f"schemes must be a non-empty subset of {STUDY_SCHEMES}")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


@dataclass(frozen=True)
class ErrorStats:
    scheme: str
    delta: float
    n_elements: int
    n_skipped: int
    mean_error_pct: float
    max_error_pct: float

    def csv_row(self) -> str:
        return (
            f"{self.scheme},{self.delta:.12g},{self.n_elements},{self.n_skipped},"
            f"{self.mean_error_pct:.12g},{self.max_error_pct:.12g}"
        )


def _element_errors(g, d, schemes):
    if not centroid_metric(g) > 0.0:
        return None
    exact = lumped_exact(g, d)
    if np.any(exact.diag == 0.0):
        return None
    return [element_error_pct(lumped_mass(g, d, s), exact) for s in schemes]


def run_delta_study(cfg: StudyConfig) -> list[ErrorStats]:
    """One ErrorStats row per (delta, scheme), deltas outermost.

    Elements are generated sequentially from a per-delta seed; evaluation may
    run on ``cfg.workers`` threads but results are reduced in element order.
    """
    rows = []
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        for k, delta in enumerate(cfg.deltas):
            spec = RandomFamilySpec(delta, cfg.elements_per_delta, derive_seed(cfg.seed, k))
            elements = gen_random_family(spec)
            if cfg.workers == 1:
                results = [_element_errors(g, cfg.densities, cfg.schemes) for g in elements]
            else:
                results = list(
                    pool.map(lambda g: _element_errors(g, cfg.densities, cfg.schemes), elements)
                )
            kept = np.array([r for r in results if r is not None]).reshape(-1, len(cfg.schemes))
            skipped = len(results) - len(kept)
            if skipped:
                log.warning("delta=%g: skipped %d inverted element(s)", delta, skipped)
            for j, scheme in enumerate(cfg.schemes):
                col = kept[:, j]
                mean = float(np.mean(col)) if len(col) else float("nan")
                peak = float(np.max(col)) if len(col) else float("nan")
                rows.append(ErrorStats(scheme, delta, len(kept), skipped, mean, peak))
    return rows


def ordering_violations(rows: list[ErrorStats]) -> list[tuple[float, str, str]]:
    """(delta, rule, equivalent) wherever a closed-form rule is not strictly better.

    Rows at delta = 0 are ignored.
    """
    by_key = {(r.delta, r.scheme): r.mean_error_pct for r in rows}
    out = []
    for delta in sorted({r.delta for r in rows}):
        if delta == 0.0:
            continue
        for rule, quad in EQUIVALENT.items():
            if (delta, rule) in by_key and (delta, quad) in by_key:
                if not by_key[(delta, rule)] < by_key[(delta, quad)]:
                    out.append((delta, rule, quad))
    return out


def study_csv(rows: list[ErrorStats]) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for r in rows:
        buf.write(r.csv_row() + "\n")
    return buf.getvalue()


BENCH_SCHEMES = ("cm", "lm", "np1", "np4", "exact")


def run_bench(n_elements: int, repetitions: int, seed: int = 0) -> dict[str, float]:
    """Wall time per element (seconds) for each scheme, best of ``repetitions``."""
    if n_elements < 1:
        raise ValueError("n_elements must be at least 1")
    if repetitions < 1:
        raise ValueError("repetitions must be at least 1")
    elements = gen_random_family(RandomFamilySpec(0.3, n_elements, seed))
    d = NodalDensities.study()
    report = {}
    for scheme in BENCH_SCHEMES:
        best = float("inf")
        for _ in range(repetitions):
            t0 = time.perf_counter()
            for g in elements:
                lumped_mass(g, d, scheme)
            best = min(best, time.perf_counter() - t0)
        report[scheme] = best / n_elements
    return report
