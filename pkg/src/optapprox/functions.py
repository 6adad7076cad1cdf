"""Named example functions and parsing of function descriptors."""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .errors import DomainError
from .weighted_space import Polynomial, TruncatedFunction, WeightSequence


def bergman_extremal(T: int = 200, w: Optional[WeightSequence] = None) -> TruncatedFunction:
    """Taylor truncation of ``(1 - z/sqrt 2)^{-3}``, the Bergman-space minimal-zero extremal.

    Coefficients are ``C(k+2, 2) 2^{-k/2}``. The tail bound is the neglected
    mass in ``w`` (Bergman by default): summed explicitly until terms fall
    below 1e-300, after which the remainder is dominated by a geometric series
    of ratio 3/4 (the term ratio tends to 1/2).
    """
    w = w or WeightSequence.bergman()
    ks = np.arange(T + 1)
    coeffs = np.array([math.comb(k + 2, 2) for k in ks], dtype=float) * 2.0 ** (-ks / 2)
    extra = 4 * T + 400
    kt = np.arange(T + 1, T + 1 + extra)
    tail_terms = np.array([math.comb(int(k) + 2, 2) ** 2 for k in kt], dtype=float) * 2.0 ** (-kt.astype(float))
    tail_terms *= w.array(T + 1 + extra)[T + 1 :]
    tail = float(np.sum(tail_terms) + 4.0 * tail_terms[-1])
    return TruncatedFunction(coeffs, tail, "bergman_extremal")


BUILTINS = {
    "one_minus_z": [1.0, -1.0],
    "two_minus_z": [2.0, -1.0],
    "half_minus_z": [0.5, -1.0],
    "one_minus_z_squared": [1.0, -2.0, 1.0],
    "one_minus_z_two_minus_z": [2.0, -3.0, 1.0],
    "one": [1.0],
}


def random_polynomial(degree: int, rng: np.random.Generator, complex_coeffs: bool = True) -> Polynomial:
    """Random polynomial with ``f(0)`` bounded away from zero."""
    c = rng.standard_normal(degree + 1)
    if complex_coeffs:
        c = c + 1j * rng.standard_normal(degree + 1)
    c[0] = c[0] + (1.0 if c[0].real >= 0 else -1.0)
    return Polynomial(c)


def parse_function(text: str, w: Optional[WeightSequence] = None, seed: int = 0) -> TruncatedFunction:
    """Resolve a builtin name, ``random:<degree>`` or a comma-separated coefficient list."""
    key = text.strip()
    if key in BUILTINS:
        return TruncatedFunction(np.array(BUILTINS[key], dtype=complex), 0.0, key)
    if key == "bergman_extremal" or key.startswith("bergman_extremal:"):
        T = int(key.split(":", 1)[1]) if ":" in key else 200
        return bergman_extremal(T, w)
    if key.startswith("random:"):
        deg = int(key.split(":", 1)[1])
        p = random_polynomial(deg, np.random.default_rng(seed))
        return TruncatedFunction(p.coeffs, 0.0, key)
    try:
        coeffs = [complex(part.strip().replace(" ", "")) for part in key.split(",") if part.strip()]
    except ValueError as exc:
        raise DomainError(f"cannot parse function {text!r}") from exc
    if not coeffs:
        raise DomainError("empty coefficient list")
    return TruncatedFunction(np.array(coeffs), 0.0, key)
