"""Command-line driver for the cavity experiments."""

from __future__ import annotations

import argparse
import math
import os
import sys

from .catalog import FAMILIES
from .experiments import ExperimentConfig, run_experiment


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="helios", description="Wavelet Galerkin cavity solver.")
    p.add_argument("--family", choices=FAMILIES, default="sr3")
    p.add_argument("--variant-recombined", action="store_true",
                   help="recombine the left boundary scaling functions (b4 only)")
    p.add_argument("--kappa-over-pi", type=float, default=4.0)
    p.add_argument("--J0", type=int, default=None, help="coarsest level (default: table value)")
    p.add_argument("--J-min", type=int, default=5)
    p.add_argument("--J-max", type=int, default=6)
    p.add_argument("--experiment", choices=("manufactured", "scattering"), default="manufactured")
    p.add_argument("--theta", type=float, default=0.0, help="incident angle in radians")
    p.add_argument("--solver", choices=("gmres", "direct", "both"), default="both")
    p.add_argument("--gmres-tol", type=float, default=1e-8)
    p.add_argument("--svd-mode", choices=("exact", "iterative", "skip", "auto"), default="auto",
                   help="auto: exact up to 4096 unknowns, iterative above")
    p.add_argument("--error-grid-exp", type=int, default=9)
    p.add_argument("--out", default="helios-out")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = ExperimentConfig(
        family=args.family, recombined=args.variant_recombined,
        kappa_over_pi=args.kappa_over_pi, J0=args.J0, J_min=args.J_min, J_max=args.J_max,
        experiment=args.experiment, theta=args.theta, solver=args.solver,
        gmres_tol=args.gmres_tol, svd_mode=args.svd_mode,
        error_grid_exp=args.error_grid_exp, out=args.out)
    threads = os.environ.get("HELIOS_THREADS")
    log = lambda msg: print(msg, file=sys.stderr)
    if threads:
        from threadpoolctl import threadpool_limits
        with threadpool_limits(limits=int(threads)):
            report = run_experiment(cfg, log=log)
    else:
        report = run_experiment(cfg, log=log)
    print(",".join(("family", "J", "size", "sigma_max", "sigma_min", "cond", "iter",
                    "rel_err", "order", "basis")))
    for r in report.rows:
        print(",".join(r.as_csv()))
    for J, msg in report.failures:
        print(f"level {J} failed: {msg}", file=sys.stderr)
    return 1 if report.failures else 0


if __name__ == "__main__":
    sys.exit(main())
