"""JSON and CSV encodings for results.

JSON floats use Python's shortest round-trip repr, so re-parsing recovers
every double exactly; CSV cells use 17 significant digits.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable

import numpy as np

from .filter_design import RationalFilter
from .opa_core import OpaResult
from .weighted_space import Polynomial


def encode_complex_list(values) -> list:
    """Real lists when every imaginary part is zero, else ``[re, im]`` pairs."""
    arr = np.asarray(values, dtype=complex)
    if np.all(arr.imag == 0):
        return [float(v) for v in arr.real]
    return [[float(v.real), float(v.imag)] for v in arr]


def encode_pairs(values) -> list:
    return [[float(v.real), float(v.imag)] for v in np.asarray(values, dtype=complex)]


def decode_complex_list(items) -> np.ndarray:
    if len(items) == 0:
        return np.zeros(0, dtype=complex)
    return np.array([complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v) for v in items])


def opa_to_dict(result: OpaResult, space: str = "", zeros=None) -> dict:
    out = {
        "n": result.n,
        "space": space,
        "coefficients": encode_complex_list(result.coefficients),
        "residual_sq": float(result.residual_sq),
    }
    if zeros is not None:
        out["zeros"] = encode_pairs(zeros)
    return out


def opa_from_dict(data: dict) -> OpaResult:
    return OpaResult(Polynomial(decode_complex_list(data["coefficients"])), float(data["residual_sq"]), int(data["n"]))


def filter_to_dict(H: RationalFilter) -> dict:
    return {
        "b": encode_complex_list(H.b),
        "a": encode_complex_list(H.a),
        "poles": encode_pairs(H.poles),
        "zeros": encode_pairs(H.zeros),
        "numerator": encode_complex_list(H.numerator.coeffs),
        "denominator": encode_complex_list(H.denominator.coeffs),
        "M": H.M,
        "N": H.N,
        "report": H.report,
    }


def filter_from_dict(data: dict) -> RationalFilter:
    """Rebuild a filter; poles and zeros are taken from the file, not recomputed."""
    if "numerator" in data and "denominator" in data:
        num = Polynomial(decode_complex_list(data["numerator"]))
        den = Polynomial(decode_complex_list(data["denominator"]))
    else:
        H = RationalFilter.from_difference_equation(decode_complex_list(data["b"]), decode_complex_list(data["a"]))
        num, den = H.numerator, H.denominator
    return RationalFilter(
        num,
        den,
        decode_complex_list(data["poles"]),
        decode_complex_list(data["zeros"]),
        int(data.get("M", max(num.degree, 0))),
        int(data.get("N", den.degree)),
        dict(data.get("report", {})),
    )


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, allow_nan=True)


def write_json(path, data) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(data) + "\n")
    return path


def _cell(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def write_csv(path, header: Iterable[str], rows: Iterable[Iterable]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([_cell(v) for v in row])
    return path
