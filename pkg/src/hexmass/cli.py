"""Command line entry point: ``hexmass {mass,table,study,bench,gen}``."""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from .exceptions import HexmassError
from .hex8 import NodalDensities
from .mass import LUMPED_SCHEMES, consistent_exact, lumped_mass
from .meshgen import (
    ElementRecord,
    RandomFamilySpec,
    gen_random_family,
    gen_random_parallelepiped,
    gen_shear_family,
    read_elements,
    write_elements,
)
from .study import (
    StudyConfig,
    delta_grid,
    ordering_violations,
    run_bench,
    run_delta_study,
    run_epsilon_table,
    study_csv,
)

EXIT_USAGE = 1
EXIT_INPUT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def cmd_mass(args) -> int:
    for rec in read_elements(args.file):
        print(f"# {rec.id} scheme={args.scheme}")
        if args.scheme == "exact-consistent":
            m = consistent_exact(rec.geometry, rec.densities).m
            for row in m:
                print(" ".join(_fmt(x) for x in row))
            total = float(np.sum(m))
        else:
            lm = lumped_mass(rec.geometry, rec.densities, args.scheme)
            for i, x in enumerate(lm.diag, start=1):
                print(f"M{i}{i} {_fmt(x)}")
            if lm.flagged:
                print("# warning: non-positive lumped mass entry", file=sys.stderr)
            total = lm.total
        print(f"total {_fmt(total)}")
    return 0


def cmd_table(args) -> int:
    d = NodalDensities.uniform(args.rho) if args.rho is not None else None
    table = run_epsilon_table(args.epsilon, d)
    print(f"epsilon = {args.epsilon:g}")
    print(f"{'scheme':<8}{'error %':>16}")
    for scheme, err in table.items():
        print(f"{scheme.upper():<8}{err:>16.10g}")
    return 0


def cmd_study(args) -> int:
    cfg = StudyConfig(
        deltas=tuple(delta_grid(args.delta_max, args.step)),
        elements_per_delta=args.count,
        seed=args.seed,
        workers=args.workers,
    )
    rows = run_delta_study(cfg)
    text = study_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for delta, rule, quad in ordering_violations(rows):
        print(
            f"!! delta={delta:g}: {rule.upper()} mean error is not below {quad.upper()}",
            file=sys.stderr,
        )
    return 0


def cmd_bench(args) -> int:
    report = run_bench(args.elements, args.reps, args.seed)
    print(f"{'scheme':<8}{'us/element':>14}")
    for scheme, sec in report.items():
        print(f"{scheme.upper():<8}{sec * 1e6:>14.3f}")
    return 0


def cmd_gen(args) -> int:
    if args.family == "shear":
        recs = [ElementRecord(gen_shear_family(args.epsilon), id=f"shear-eps{args.epsilon:g}")]
    elif args.family == "random":
        spec = RandomFamilySpec(args.delta, args.count, args.seed)
        recs = [
            ElementRecord(g, id=f"random-d{args.delta:g}-s{args.seed}-{i}")
            for i, g in enumerate(gen_random_family(spec))
        ]
    else:
        recs = [ElementRecord(gen_random_parallelepiped(args.seed), id=f"ppiped-s{args.seed}")]
    if args.rho is not None:
        recs = [ElementRecord(r.geometry, NodalDensities.uniform(args.rho), r.id) for r in recs]
    write_elements(recs, args.out)
    return 0


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hexmass", description="Mass matrices for the 8-node brick element.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("mass", help="lumped or consistent mass of elements in a file")
    s.add_argument("file")
    s.add_argument("--scheme", choices=LUMPED_SCHEMES + ("exact-consistent",), default="exact")
    s.set_defaults(func=cmd_mass)

    s = sub.add_parser("table", help="scheme errors on the sheared parallelepiped")
    s.add_argument("--epsilon", type=float, default=100.0)
    s.add_argument("--rho", type=float, default=None, help="homogeneous density instead of 1/2")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("study", help="mean error versus random perturbation delta (CSV)")
    s.add_argument("--delta-max", type=float, default=0.7)
    s.add_argument("--step", type=float, default=0.05)
    s.add_argument("--count", type=_positive_int, default=100)
    s.add_argument("--seed", type=int, default=42)
    s.add_argument("--workers", type=_positive_int, default=1)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_study)

    s = sub.add_parser("bench", help="time per element for each scheme")
    s.add_argument("--elements", type=_positive_int, default=1000)
    s.add_argument("--reps", type=_positive_int, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("gen", help="write a test element file")
    fam = s.add_subparsers(dest="family", required=True, parser_class=_Parser)
    f = fam.add_parser("shear")
    f.add_argument("--epsilon", type=float, required=True)
    f = fam.add_parser("random")
    f.add_argument("--delta", type=float, required=True)
    f.add_argument("--count", type=_positive_int, default=1)
    f.add_argument("--seed", type=int, default=0)
    f = fam.add_parser("ppiped")
    f.add_argument("--seed", type=int, default=0)
    for f in fam.choices.values():
        f.add_argument("--out", required=True)
        f.add_argument("--rho", type=float, default=None, help="homogeneous density")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (HexmassError, OSError) as exc:
        print(f"hexmass: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"hexmass: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
