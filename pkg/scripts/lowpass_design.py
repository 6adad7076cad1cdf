"""Design lowpass filters over a range of orders and record staged errors.

    python scripts/lowpass_design.py --out runs/lowpass --orders 8 16 24 48
"""

import argparse
from pathlib import Path

import numpy as np

from optapprox.filter_design import IdealFilterSpec, design_filter, magnitude_response
from optapprox.serialization import filter_to_dict, write_csv, write_json


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="runs/lowpass")
    ap.add_argument("--cutoff", type=float, default=np.pi / 2)
    ap.add_argument("--eta", type=float, default=0.1)
    ap.add_argument("--T", type=int, default=256)
    ap.add_argument("--orders", type=int, nargs="+", default=[8, 16, 24, 48])
    args = ap.parse_args()

    out = Path(args.out)
    spec = IdealFilterSpec.lowpass(args.cutoff)
    rows = []
    for N in args.orders:
        H = design_filter(spec, args.eta, N, N, args.T)
        s, mag = magnitude_response(H, 1024)
        write_json(out / f"filter_N{N}.json", filter_to_dict(H))
        write_csv(out / f"magnitude_N{N}.csv", ["s", "magnitude"], zip(s, mag))
        r = H.report
        rows.append((N, r["denominator"], r["numerator"], r["ideal_vs_outer"], float(np.max(np.abs(H.poles)))))
        print(f"N={N:3d}  ||qf-1||={r['denominator']:.4f}  ||qf-p||={r['numerator']:.4f}  "
              f"max|pole|={rows[-1][-1]:.4f}")
    write_csv(out / "staged_errors.csv", ["N", "denominator", "numerator", "ideal_vs_outer", "max_pole"], rows)


if __name__ == "__main__":
    main()
