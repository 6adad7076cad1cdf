"""Residual decay in Dirichlet-type spaces and the normalised rate bands.

    python scripts/decay_rates.py --n-max 200 --out runs/decay
"""

import argparse
from pathlib import Path

import numpy as np

from optapprox.convergence_lab import decay_series, dirichlet_rate_bound_check
from optapprox.serialization import write_csv, write_json
from optapprox.weighted_space import Polynomial, WeightSequence

FUNCTIONS = {
    "one_minus_z": Polynomial([1.0, -1.0]),
    "one_minus_z_two_minus_z": Polynomial([2.0, -3.0, 1.0]),
    "one_minus_z_squared": Polynomial([1.0, -2.0, 1.0]),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="runs/decay")
    ap.add_argument("--n-max", type=int, default=200)
    ap.add_argument("--alphas", type=float, nargs="+", default=[-1.0, 0.0, 0.5, 1.0])
    args = ap.parse_args()

    out = Path(args.out)
    reports = []
    for alpha in args.alphas:
        w = WeightSequence.dirichlet(alpha)
        for name, f in FUNCTIONS.items():
            series = decay_series(f, w, range(args.n_max + 1), name)
            write_csv(out / f"{name}_a{alpha:g}.csv", ["n", "residual_sq"], zip(series.ns, series.residuals))
            if alpha <= 1 and name != "one_minus_z_squared":
                rep = dirichlet_rate_bound_check(alpha, f, args.n_max).to_dict()
                rep["function"] = name
                reports.append(rep)
                print(f"alpha={alpha:5g} {name:26s} band=[{rep['band_low']:.3f}, {rep['band_high']:.3f}] "
                      f"slope={rep['fitted_exponent']:.3f}")
    write_json(out / "rate_report.json", reports)


if __name__ == "__main__":
    main()
