"""Zeros of optimal polynomial approximants.

Covers root extraction, the closed-form zero of the degree-1 OPA, the minimal
zero modulus ``M = 2 / ||J||`` through a Jacobi matrix built from the weights,
the weight-gap criterion for zeros inside the disk, and zero-clustering scans.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import scipy.linalg

from .errors import DomainError, PrecisionError
from .opa_core import opa
from .weighted_space import FunctionLike, Polynomial, WeightSequence, as_function, inner, norm_sq


@dataclass(frozen=True, eq=False)
class ZeroSet:
    roots: np.ndarray
    residual: float

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.roots)


# Ceiling on the relative backward error |p(r)| / sum |c_k| |r|^k of a computed root.
ROOT_BACKWARD_TOL = 1e-10


def backward_error(p: Polynomial, roots) -> float:
    r = np.abs(np.asarray(roots))
    scale = np.polynomial.polynomial.polyval(r, np.abs(p.coeffs))
    value = np.abs(p(roots))
    # scale vanishes only at an exact root 0 of a polynomial with c_0 = 0
    return float(np.max(np.divide(value, scale, out=np.zeros_like(value), where=scale > 0)))


def poly_roots(p) -> ZeroSet:
    """All roots of ``p`` with multiplicity.

    Eigenvalues of the companion matrix, each followed by one Newton step that
    is kept only if it reduces ``|p|``. ``residual`` is the largest relative
    backward error ``|p(r)| / sum |c_k| |r|^k`` over the roots.
    """
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    if p.degree < 1:
        raise DomainError("root finding needs a polynomial of degree >= 1")
    c = p.coeffs
    d = p.degree
    with np.errstate(over="ignore", invalid="ignore"):
        monic = c[:d] / c[d]
    if not np.all(np.isfinite(monic)):
        raise PrecisionError("leading coefficient too small to resolve the roots")
    companion = np.zeros((d, d), dtype=complex)
    companion[1:, :-1] = np.eye(d - 1)
    companion[:, -1] = -monic
    roots = np.linalg.eigvals(companion)

    dp = p.deriv()
    val = p(roots)
    slope = dp(roots)
    with np.errstate(divide="ignore", invalid="ignore"):
        stepped = roots - val / slope
    better = np.isfinite(stepped)
    better[better] = np.abs(p(stepped[better])) < np.abs(val[better])
    roots = np.where(better, stepped, roots)

    residual = backward_error(p, roots)
    if residual > ROOT_BACKWARD_TOL:
        raise PrecisionError(f"root residual {residual:.3g} above tolerance")
    return ZeroSet(roots, residual)


def first_order_zero(f: FunctionLike, w: WeightSequence) -> complex:
    """Zero of the degree-1 OPA of ``1/f``: ``||z f||^2 / <f, z f>``.

    Returns complex infinity when ``<f, z f> = 0`` (the OPA is then constant).
    """
    f = as_function(f)
    zf = np.concatenate([[0.0], f.coeffs])
    denom = inner(f, zf, w)
    if denom == 0:
        return complex(math.inf, 0.0)
    return norm_sq(zf, w) / denom


def jacobi_off_diagonal(w: WeightSequence, N: int) -> np.ndarray:
    """Off-diagonal ``sqrt(w[j] / w[j+1])`` for ``j = 1..N-1`` (matrix indices start at 1)."""
    weights = w.array(N + 1)
    return np.sqrt(weights[1:N] / weights[2 : N + 1])


def jacobi_norm(w: WeightSequence, N: int) -> float:
    """Operator norm of the N x N symmetric tridiagonal Jacobi matrix.

    The diagonal is zero, so the spectrum is symmetric and the norm is the
    largest eigenvalue.
    """
    if N < 2:
        raise DomainError("Jacobi matrix needs N >= 2")
    off = jacobi_off_diagonal(w, N)
    top = scipy.linalg.eigvalsh_tridiagonal(np.zeros(N), off, select="i", select_range=(N - 1, N - 1))
    return float(top[0])


def jacobi_M(w: WeightSequence, N: int) -> float:
    """``2 / ||J_N||``; non-increasing in N and decreasing to ``2 / ||J||``."""
    return 2.0 / jacobi_norm(w, N)


def weight_gap_predicate(w: WeightSequence, K: int) -> bool:
    """Whether some ``k, n >= 0`` with ``k + n + 1 <= K`` have ``w[k+n+1] < w[k+1] / 4``."""
    if K < 1:
        return False
    weights = w.array(K + 1)
    # suffix_min[i] = min(weights[i:K+1])
    suffix_min = np.minimum.accumulate(weights[::-1])[::-1]
    return bool(np.any(suffix_min[1:] < weights[1:] / 4))


@dataclass(frozen=True)
class MEstimate:
    value: float
    raw: float
    value_half: float
    trend: float
    extrapolated: float


def M_alpha_estimate(alpha: float, N: int) -> MEstimate:
    """Estimate the minimal OPA-zero modulus in ``D_alpha`` from ``2 / ||J_N||``.

    Reports the change between ``N/2`` and ``N`` and a Richardson
    extrapolation assuming an ``O(1/N^2)`` error. For ``alpha >= 0`` the
    weights are non-decreasing and the value is clamped to 1.
    """
    w = WeightSequence.dirichlet(alpha)
    raw = jacobi_M(w, N)
    half = jacobi_M(w, max(N // 2, 2))
    trend = raw - half
    extrapolated = raw + trend / 3.0
    value = min(raw, 1.0) if alpha >= 0 else raw
    return MEstimate(value, raw, half, trend, extrapolated)


def deflate(p: Polynomial, root: complex) -> Polynomial:
    """Quotient of ``p`` by ``(z - root)`` via synthetic division."""
    c = p.coeffs
    d = p.degree
    out = np.zeros(d, dtype=complex)
    acc = 0j
    for k in range(d, 0, -1):
        acc = c[k] + acc * root
        out[k - 1] = acc
    return Polynomial(out)


@dataclass(frozen=True, eq=False)
class ZeroScan:
    rows: List[tuple]  # (n, ZeroSet)
    weight_label: str
    function_label: str = ""
    summary: dict = field(default_factory=dict)

    @property
    def all_moduli(self) -> np.ndarray:
        if not self.rows:
            return np.zeros(0)
        return np.concatenate([zs.moduli for _, zs in self.rows])


def zero_scan(f: FunctionLike, w: WeightSequence, n_max: int, bins: int = 16) -> ZeroScan:
    """Zeros of the OPAs ``q_1, ..., q_{n_max}`` of ``1/f`` with per-degree moduli and an angle histogram."""
    f = as_function(f)
    if f.at_zero() == 0:
        raise DomainError("zero scan needs f(0) != 0")
    rows = []
    per_n = {}
    for n in range(1, n_max + 1):
        q = opa(f, n, w).q
        if q.degree < 1:
            continue
        zs = poly_roots(q)
        rows.append((n, zs))
        per_n[n] = {"min_modulus": float(zs.moduli.min()), "max_modulus": float(zs.moduli.max())}
    angles = np.concatenate([np.angle(zs.roots) for _, zs in rows]) if rows else np.zeros(0)
    hist, _ = np.histogram(angles, bins=bins, range=(-np.pi, np.pi))
    moduli = np.concatenate([zs.moduli for _, zs in rows]) if rows else np.zeros(0)
    summary = {
        "per_n": per_n,
        "min_modulus": float(moduli.min()) if moduli.size else math.inf,
        "max_modulus": float(moduli.max()) if moduli.size else 0.0,
        "angle_histogram": hist.tolist(),
    }
    return ZeroScan(rows, w.label, f.label, summary)
