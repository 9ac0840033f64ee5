"""Print the kappa = 4 pi rows for sr3, hmt and r3 next to the published ones.

    python scripts/reproduce_table1.py [--out DIR]
"""

import argparse

from helios.experiments import ExperimentConfig, run_experiment

# (family, J0, J range, published rows: J -> (basis -> (sigma_max, sigma_min, iter)), rel_err)
PUBLISHED = {
    "sr3": (2, (5, 6), {5: {"fem": (1.56, 4.50e-4, 418), "wavelet": (4.14, 2.10e-2, 161)},
                        6: {"fem": (None, None, 836), "wavelet": (4.28, 1.85e-2, 169)}},
            {5: 6.11e-4, 6: 7.63e-5}),
    "hmt": (4, (4, 4), {4: {"fem": (2.41, 8.42e-3, 117), "wavelet": (2.41, 8.42e-3, 117)}}, {}),
    "r3": (2, (4, 5), {4: {"fem": (2.17, 5.39e-4, 444), "wavelet": (4.33, 8.56e-3, 168)},
                       5: {"fem": (None, 1.34e-4, 892), "wavelet": (4.51, 8.57e-3, 179)}},
           {4: 2.35e-4}),
}


def fmt(v, spec="{:.3g}"):
    return "-" if v is None else spec.format(v)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    for fam, (J0, (lo, hi), rows, errs) in PUBLISHED.items():
        out = f"{args.out}/{fam}" if args.out else None
        rep = run_experiment(ExperimentConfig(family=fam, J0=J0, J_min=lo, J_max=hi,
                                              svd_mode="iterative", out=out))
        print(f"\n{fam}  (J0={J0})")
        print(f"{'J':>2} {'basis':>8} {'sigma_max':>18} {'sigma_min':>22} {'iter':>12} {'rel_err':>22}")
        for r in rep.rows:
            smax, smin, it = rows[r.J][r.basis]
            print(f"{r.J:>2} {r.basis:>8} {r.sigma_max:8.3g} ({fmt(smax):>6}) "
                  f"{r.sigma_min:10.3e} ({fmt(smin, '{:.2e}'):>8}) {r.iter:5d} ({it:>4}) "
                  f"{r.rel_err:10.3e} ({fmt(errs.get(r.J), '{:.2e}'):>8})")


if __name__ == "__main__":
    main()
