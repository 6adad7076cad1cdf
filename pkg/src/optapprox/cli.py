"""Command-line interface.

Examples
--------
optapprox opa --f one_minus_z --n 2 --space H2
optapprox design --spec lowpass.json --eta 0.1 --N 24 --M 24 --T 256 --out runs/lowpass
optapprox zeros --f one_minus_z --n-max 20 --space D:1
optapprox decay --f one_minus_z --n-max 100
optapprox double-lsi --f half_minus_z --k 16 32 64
optapprox jacobi --N 2000 --space bergman
optapprox boundary --f one_minus_z --n 10 20 40 80 --space A2

Every subcommand accepts ``--space``, ``--out``, ``--grid``, ``--seed``,
``--tol`` and ``--config``; values from the JSON config file apply only where
the flag is not given explicitly.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .convergence_lab import boundary_convergence, decay_series, double_lsi
from .errors import DomainError, PrecisionError
from .filter_design import DEFAULT_GRID, IdealFilterSpec, design_filter, magnitude_response
from .functions import parse_function
from .opa_core import opa, opa_toeplitz_h2
from .serialization import encode_complex_list, filter_to_dict, opa_to_dict, write_csv, write_json
from .weighted_space import DEFAULT_TAIL_TOL, Polynomial, WeightSequence
from .zero_analysis import M_alpha_estimate, jacobi_M, poly_roots, weight_gap_predicate, zero_scan

log = logging.getLogger("optapprox")

EXIT_DOMAIN = 2
EXIT_PRECISION = 3


@dataclass
class RunConfig:
    space: str = "H2"
    out: str = "."
    grid: int = DEFAULT_GRID
    seed: int = 0
    tol: float = DEFAULT_TAIL_TOL

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError("tolerance must be positive")
        if self.grid < 2:
            raise DomainError("grid must be at least 2")

    @property
    def weights(self) -> WeightSequence:
        return WeightSequence.parse(self.space)

    @property
    def out_dir(self) -> Path:
        return Path(self.out)


def _polynomial(f) -> Polynomial:
    return Polynomial(f.coeffs)


def cmd_opa(args, cfg: RunConfig) -> dict:
    w = cfg.weights
    f = parse_function(args.f, w, cfg.seed)
    if args.method == "toeplitz":
        if not w.is_hardy:
            raise DomainError("the Toeplitz path is available in H2 only")
        res = opa_toeplitz_h2(f, args.n, tail_tol=cfg.tol)
    else:
        res = opa(f, args.n, w, tail_tol=cfg.tol)
    zeros = poly_roots(res.q).roots if res.q.degree >= 1 else np.zeros(0)
    data = opa_to_dict(res, w.label, zeros)
    data["function"] = f.label
    write_json(cfg.out_dir / "opa.json", data)
    return data


def cmd_design(args, cfg: RunConfig) -> dict:
    if args.spec:
        spec = IdealFilterSpec.from_json(Path(args.spec).read_text())
    else:
        spec = IdealFilterSpec.lowpass(args.cutoff)
    H = design_filter(spec, args.eta, args.N, args.M, args.T, grid_size=cfg.grid)
    s, mag = magnitude_response(H, cfg.grid)
    out = cfg.out_dir
    write_json(out / "filter.json", filter_to_dict(H))
    write_csv(out / "magnitude.csv", ["s", "magnitude"], zip(s, mag))
    report = dict(H.report, spec=spec.to_dict(), N=args.N, M=args.M, max_pole_modulus=float(np.max(np.abs(H.poles))))
    write_json(out / "report.json", report)
    return report


def cmd_zeros(args, cfg: RunConfig) -> dict:
    w = cfg.weights
    f = parse_function(args.f, w, cfg.seed)
    scan = zero_scan(f, w, args.n_max, bins=args.bins)
    rows = [(n, r.real, r.imag, abs(r)) for n, zs in scan.rows for r in zs.roots]
    write_csv(cfg.out_dir / "zeros.csv", ["n", "re", "im", "modulus"], rows)
    summary = dict(scan.summary, space=w.label, function=f.label)
    summary["per_n"] = {str(k): v for k, v in summary["per_n"].items()}
    write_json(cfg.out_dir / "zeros_summary.json", summary)
    return {k: summary[k] for k in ("min_modulus", "max_modulus", "space", "function")}


def cmd_decay(args, cfg: RunConfig) -> dict:
    w = cfg.weights
    f = parse_function(args.f, w, cfg.seed)
    ns = range(args.n_min, args.n_max + 1)
    series = decay_series(f, w, ns)
    write_csv(cfg.out_dir / "decay.csv", ["n", "residual_sq"], zip(series.ns, series.residuals))
    n_arr = np.array(series.ns, dtype=float)
    res = np.array(series.residuals)
    top = n_arr >= (args.n_min + args.n_max) / 2
    report = {"space": w.label, "function": f.label}
    if np.all(res[top] > 0) and top.sum() >= 2:
        report["fitted_exponent"] = float(np.polyfit(np.log(n_arr[top] + 1), np.log(res[top]), 1)[0])
    if w.kind == "dirichlet" and w.alpha < 1:
        normalized = res[top] * (n_arr[top] + 1) ** (1 - w.alpha)
        report["band_low"] = float(normalized.min())
        report["band_high"] = float(normalized.max())
    write_json(cfg.out_dir / "decay_report.json", report)
    return report


def cmd_double_lsi(args, cfg: RunConfig) -> dict:
    f = parse_function(args.f, cfg.weights, cfg.seed)
    p = _polynomial(f)
    out = {"function": f.label, "results": []}
    for k in args.k:
        Q = double_lsi(p, k)
        out["results"].append({"k": k, "coefficients": encode_complex_list(Q.padded(p.degree + 1))})
    write_json(cfg.out_dir / "double_lsi.json", out)
    return out


def cmd_jacobi(args, cfg: RunConfig) -> dict:
    w = cfg.weights
    out = {"space": w.label, "N": args.N, "M": jacobi_M(w, args.N), "gap_condition": weight_gap_predicate(w, args.K)}
    if w.kind == "dirichlet":
        out["estimate"] = asdict(M_alpha_estimate(w.alpha, args.N))
    write_json(cfg.out_dir / "jacobi.json", out)
    return out


def cmd_boundary(args, cfg: RunConfig) -> dict:
    w = cfg.weights
    f = parse_function(args.f, w, cfg.seed)
    table = boundary_convergence(_polynomial(f), w, args.n, args.radius)
    write_csv(cfg.out_dir / "boundary.csv", ["n", "sup_error"], zip(table.ns, table.sup_errors))
    out = {"space": w.label, "function": f.label, "n": list(table.ns), "sup_error": list(table.sup_errors)}
    write_json(cfg.out_dir / "boundary.json", out)
    return out


COMMANDS = {
    "opa": cmd_opa,
    "design": cmd_design,
    "zeros": cmd_zeros,
    "decay": cmd_decay,
    "double-lsi": cmd_double_lsi,
    "jacobi": cmd_jacobi,
    "boundary": cmd_boundary,
}


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    common.add_argument("--space", default=S, help="H2, bergman, dirichlet, D:<alpha> or explicit:<w0>,<w1>,...")
    common.add_argument("--out", default=S, help="output directory")
    common.add_argument("--grid", type=int, default=S, help="frequency grid size")
    common.add_argument("--seed", type=int, default=S, help="seed for random:<deg> functions")
    common.add_argument("--tol", type=float, default=S, help="tolerance on declared truncation tails")
    common.add_argument("--config", default=S, help="JSON file with defaults for any flag")
    common.add_argument("-v", "--verbose", action="store_true", default=S)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="optapprox", description=__doc__.split("\n")[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    subs = {}
    p = subs["opa"] = sub.add_parser("opa", parents=[common], help="optimal polynomial approximant of 1/f")
    p.add_argument("--f", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["dense", "toeplitz"], default="dense")

    p = subs["design"] = sub.add_parser("design", parents=[common], help="stable IIR filter from an ideal spec")
    p.add_argument("--spec", help="JSON {breakpoints, values}; defaults to a lowpass")
    p.add_argument("--cutoff", type=float, default=float(np.pi / 2))
    p.add_argument("--eta", type=float, default=0.1)
    p.add_argument("--N", type=int, default=24)
    p.add_argument("--M", type=int, default=24)
    p.add_argument("--T", type=int, default=256)

    p = subs["zeros"] = sub.add_parser("zeros", parents=[common], help="zeros of q_1..q_nmax")
    p.add_argument("--f", required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--bins", type=int, default=16)

    p = subs["decay"] = sub.add_parser("decay", parents=[common], help="residual decay series")
    p.add_argument("--f", required=True)
    p.add_argument("--n-min", type=int, default=0)
    p.add_argument("--n-max", type=int, required=True)

    p = subs["double-lsi"] = sub.add_parser("double-lsi", parents=[common], help="double least-squares inverse")
    p.add_argument("--f", required=True)
    p.add_argument("--k", type=int, nargs="+", required=True)

    p = subs["jacobi"] = sub.add_parser("jacobi", parents=[common], help="minimal zero modulus via the Jacobi matrix")
    p.add_argument("--N", type=int, default=2000)
    p.add_argument("--K", type=int, default=100)

    p = subs["boundary"] = sub.add_parser("boundary", parents=[common], help="sup |1 - q_n f| on the closed disk")
    p.add_argument("--f", required=True)
    p.add_argument("--n", type=int, nargs="+", default=[10, 20, 40, 80])
    p.add_argument("--radius", type=float, default=0.2)
    parser.subcommand_parsers = subs
    return parser


def _load_config(argv) -> dict:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return {}
    data = json.loads(Path(known.config).read_text())
    return {k.replace("-", "_"): v for k, v in data.items()}


def main(argv: Optional[list] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        defaults = _load_config(argv)
    except (OSError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": "ConfigError", "message": str(exc)}))
        return EXIT_DOMAIN
    if defaults:
        for sp in parser.subcommand_parsers.values():
            sp.set_defaults(**defaults)
    args = parser.parse_args(argv)
    merged = vars(args)
    logging.basicConfig(level=logging.INFO if merged.get("verbose") else logging.WARNING)
    try:
        cfg = RunConfig(**{k: merged[k] for k in ("space", "out", "grid", "seed", "tol") if k in merged})
        result = COMMANDS[args.command](args, cfg)
    except DomainError as exc:
        print(json.dumps({"error": "DomainError", "message": str(exc)}))
        return EXIT_DOMAIN
    except PrecisionError as exc:
        print(json.dumps({"error": "PrecisionError", "message": str(exc)}))
        return EXIT_PRECISION
    print(json.dumps(result, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
