"""Minimal OPA-zero modulus M_alpha from Jacobi matrices, swept over alpha.

    python scripts/jacobi_M_alpha.py --N 4000 --out runs/jacobi
"""

import argparse
from dataclasses import asdict
from pathlib import Path

import numpy as np

from optapprox.serialization import write_csv
from optapprox.zero_analysis import M_alpha_estimate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="runs/jacobi")
    ap.add_argument("--N", type=int, default=4000)
    ap.add_argument("--alpha-min", type=float, default=-3.0)
    ap.add_argument("--alpha-max", type=float, default=1.0)
    ap.add_argument("--steps", type=int, default=41)
    args = ap.parse_args()

    rows = []
    for alpha in np.linspace(args.alpha_min, args.alpha_max, args.steps):
        est = asdict(M_alpha_estimate(float(alpha), args.N))
        rows.append((alpha, est["value"], est["raw"], est["trend"], est["extrapolated"]))
        print(f"alpha={alpha:6.2f}  M={est['value']:.6f}  trend={est['trend']:.1e}")
    write_csv(Path(args.out) / "M_alpha.csv", ["alpha", "M", "raw", "trend", "extrapolated"], rows)


if __name__ == "__main__":
    main()
