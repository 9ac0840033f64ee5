"""GMRES iteration counts per level for the wavelet and FEM systems.

    python scripts/iteration_study.py --family sr3 --kappa-over-pi 8 --J0 3 --J-max 6
"""

import argparse

from helios.experiments import ExperimentConfig, run_experiment


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--family", default="sr3")
    ap.add_argument("--kappa-over-pi", type=float, default=8.0)
    ap.add_argument("--J0", type=int, default=3)
    ap.add_argument("--J-min", type=int, default=5)
    ap.add_argument("--J-max", type=int, default=6)
    a = ap.parse_args()
    rep = run_experiment(ExperimentConfig(family=a.family, kappa_over_pi=a.kappa_over_pi,
                                          J0=a.J0, J_min=a.J_min, J_max=a.J_max,
                                          solver="gmres", svd_mode="skip"))
    prev = {}
    for r in sorted(rep.rows, key=lambda r: (r.J, r.basis)):
        ratio = f"x{r.iter / prev[r.basis]:.2f}" if r.basis in prev else ""
        print(f"J={r.J} {r.basis:>7} size={r.size:6d} iter={r.iter:5d} {ratio}")
        prev[r.basis] = r.iter


if __name__ == "__main__":
    main()
