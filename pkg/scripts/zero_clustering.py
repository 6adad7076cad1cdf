"""Zeros of q_1..q_n for a few functions and spaces, as CSV for scatter plots.

    python scripts/zero_clustering.py --n-max 40 --out runs/zeros
"""

import argparse
from pathlib import Path

from optapprox.functions import parse_function
from optapprox.serialization import write_csv, write_json
from optapprox.weighted_space import WeightSequence
from optapprox.zero_analysis import zero_scan

CASES = [
    ("one_minus_z", "H2"),
    ("one_minus_z", "D:1"),
    ("one_minus_z", "A2"),
    ("one_minus_z_squared", "H2"),
    ("random:6", "H2"),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="runs/zeros")
    ap.add_argument("--n-max", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    out = Path(args.out)
    summary = {}
    for name, space in CASES:
        w = WeightSequence.parse(space)
        f = parse_function(name, w, args.seed)
        scan = zero_scan(f, w, args.n_max)
        tag = f"{name}_{space.replace(':', '')}"
        write_csv(out / f"{tag}.csv", ["n", "re", "im", "modulus"],
                  [(n, r.real, r.imag, abs(r)) for n, zs in scan.rows for r in zs.roots])
        summary[tag] = {k: scan.summary[k] for k in ("min_modulus", "max_modulus", "angle_histogram")}
        print(f"{tag:28s} min|z|={scan.summary['min_modulus']:.4f}")
    write_json(out / "summary.json", summary)


if __name__ == "__main__":
    main()
