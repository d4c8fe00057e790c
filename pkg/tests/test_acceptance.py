"""Exit criteria for the package.

Run with ``pytest tests/test_acceptance.py``; one PASS/FAIL line per
criterion is printed in the "acceptance criteria" summary section.
"""

import time

import numpy as np
import pytest

from hexmass.cli import main
from hexmass.hex8 import CORNERS, NodalDensities, shape_gradients, shape_values
from hexmass.mass import (
    centroid_metric,
    consistent_exact,
    consistent_quadrature,
    lumped_cm,
    lumped_exact,
    lumped_lm,
    lumped_mass,
    lumped_quadrature,
)
from hexmass.meshgen import RandomFamilySpec, gen_random_family, gen_random_parallelepiped
from hexmass.quadrature import gauss_tensor
from hexmass.study import run_epsilon_table

STUDY = NodalDensities.study()


def _max_rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / np.abs(b)))


def _read_csv(path):
    rows = {}
    lines = path.read_text().splitlines()
    assert lines[0] == "scheme,delta,n_elements,n_skipped,mean_error_pct,max_error_pct"
    for line in lines[1:]:
        scheme, delta, n, skipped, mean, peak = line.split(",")
        rows[(float(delta), scheme)] = float(mean)
    return rows


def test_ac1_epsilon_table(acceptance, capsys):
    t0 = time.perf_counter()
    table = run_epsilon_table(100.0)
    elapsed = time.perf_counter() - t0
    assert main(["table", "--epsilon", "100"]) == 0
    printed = {
        line.split()[0]: float(line.split()[1])
        for line in capsys.readouterr().out.splitlines()
        if line.split()[0] in ("CM", "LM", "NP1", "NP4")
    }
    ok = (
        max(table["cm"], table["lm"], table["np4"]) < 1e-9
        and abs(table["np1"] - 11.25) <= 1e-6
        and abs(printed["NP1"] - 11.25) <= 1e-6
        and max(printed["CM"], printed["LM"], printed["NP4"]) < 1e-9
        and elapsed < 0.1
    )
    detail = ", ".join(f"{k}={v:.10g}%" for k, v in table.items()) + f", {elapsed * 1e3:.1f} ms"
    acceptance("AC1 epsilon=100 table: CM=LM=NP4=0, NP1=11.25%", ok, detail)


def test_ac2_parallelepiped_exactness(acceptance):
    t0 = time.perf_counter()
    worst = 0.0
    for seed in range(200):
        g = gen_random_parallelepiped(seed)
        ref = lumped_exact(g, STUDY).diag
        for scheme in ("cm", "lm", "np4"):
            worst = max(worst, _max_rel(lumped_mass(g, STUDY, scheme).diag, ref))
    elapsed = time.perf_counter() - t0
    acceptance(
        "AC2 200 parallelepipeds: CM, LM, NP4 equal oracle to rel 1e-12",
        worst <= 1e-12 and elapsed < 1.0,
        f"max rel {worst:.2e}, {elapsed:.2f} s",
    )


def test_ac3_oracle_validity(acceptance):
    t0 = time.perf_counter()
    worst = 0.0
    g4 = gauss_tensor(4)
    for g in gen_random_family(RandomFamilySpec(0.5, 100, 2015)):
        worst = max(worst, _max_rel(lumped_exact(g, STUDY).diag, lumped_quadrature(g, STUDY, g4).diag))
        worst = max(worst, _max_rel(consistent_exact(g, STUDY).m, consistent_quadrature(g, STUDY, g4).m))
    elapsed = time.perf_counter() - t0
    acceptance(
        "AC3 gauss3 vs gauss4 lumped+consistent agree to rel 1e-12 (100 elements, delta=0.5)",
        worst <= 1e-12 and elapsed < 1.0,
        f"max rel {worst:.2e}, {elapsed:.2f} s",
    )


def test_ac4_figure1_ordering(acceptance, tmp_path):
    out = tmp_path / "study.csv"
    t0 = time.perf_counter()
    assert main(["study", "--out", str(out)]) == 0
    elapsed = time.perf_counter() - t0
    rows = _read_csv(out)
    deltas = sorted({d for d, _ in rows})
    assert len(deltas) == 15 and deltas[-1] == 0.7
    failures = []
    for d in deltas:
        if d == 0.0:
            # zero up to floating-point rounding of the Gauss oracle
            for s in ("cm", "lm", "np4"):
                if not rows[(d, s)] < 1e-12:
                    failures.append(f"delta=0 {s}={rows[(d, s)]:.3g}")
            continue
        if not rows[(d, "cm")] < rows[(d, "np1")]:
            failures.append(f"delta={d} CM>=NP1")
        if not rows[(d, "lm")] < rows[(d, "np4")]:
            failures.append(f"delta={d} LM>=NP4")
    acceptance(
        "AC4 study: CM<NP1 and LM<NP4 at every delta>0; CM=LM=NP4=0 at delta=0",
        not failures and elapsed < 10.0,
        (", ".join(failures) or "ordering holds at all 14 deltas") + f", {elapsed:.2f} s",
    )


def test_ac5_invariant_suite(acceptance):
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    results = {}

    p = rng.uniform(-1, 1, size=(1000, 3))
    results["partition of unity"] = np.max(np.abs(shape_values(p).sum(axis=1) - 1)) <= 1e-14
    results["kronecker"] = np.array_equal(shape_values(CORNERS), np.eye(8))

    h = 1e-6
    fd_err = 0.0
    for q in p[:100]:
        for n in range(3):
            e = np.zeros(3)
            e[n] = h
            fd = (shape_values(q + e) - shape_values(q - e)) / (2 * h)
            fd_err = max(fd_err, np.max(np.abs(fd - shape_gradients(q)[:, n])))
    results["gradient vs finite differences"] = fd_err <= 1e-8

    elements = gen_random_family(RandomFamilySpec(0.5, 100, 555))
    mass_ok = sym_ok = pd_ok = cm_ok = True
    g2 = gauss_tensor(2)
    for g in elements:
        cons = consistent_exact(g, STUDY).m
        lumped = lumped_exact(g, STUDY).diag
        integral = np.sum(g2.weights * (g2.phi @ STUDY.rho) * np.linalg.det(
            np.einsum("im,pin->pmn", g.nodes, g2.dphi)))
        mass_ok &= abs(lumped.sum() - integral) <= 1e-12 * integral
        mass_ok &= _max_rel(cons.sum(axis=1), lumped) <= 1e-12
        sym_ok &= np.max(np.abs(cons - cons.T)) <= 1e-13 * np.max(np.abs(cons))
        try:
            np.linalg.cholesky(cons)
        except np.linalg.LinAlgError:
            pd_ok = False
        cm_ok &= lumped_cm(g, STUDY).total == pytest.approx(centroid_metric(g) * STUDY.rho.sum(), rel=1e-15, abs=0)
    results["mass conservation"] = mass_ok
    results["consistent symmetry"] = sym_ok
    results["consistent positive definite"] = pd_ok
    results["CM total = J0 * sum(rho)"] = cm_ok

    collapse = 0.0
    for seed in range(100):
        g = gen_random_parallelepiped(seed)
        collapse = max(collapse, _max_rel(lumped_lm(g, STUDY).diag, lumped_cm(g, STUDY).diag))
    results["LM -> CM on constant metric"] = collapse <= 1e-13

    elapsed = time.perf_counter() - t0
    failed = [k for k, v in results.items() if not v]
    acceptance(
        "AC5 invariant suite",
        not failed and elapsed < 5.0,
        (f"failed: {failed}" if failed else f"{len(results)} invariants hold") + f", {elapsed:.2f} s",
    )


def test_ac6_determinism(acceptance, tmp_path):
    a, b, c = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "c.csv"
    args = ["study", "--count", "30", "--seed", "7"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert main(args + ["--workers", "4", "--out", str(c)]) == 0
    same = a.read_bytes() == b.read_bytes() == c.read_bytes()
    acceptance("AC6 study CSV byte-identical across runs and worker counts", same)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
