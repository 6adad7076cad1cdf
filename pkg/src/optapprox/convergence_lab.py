"""Decay of OPA residuals, double least-squares inverses and boundary convergence."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence

import numpy as np

from .errors import DomainError
from .opa_core import opa, opa_toeplitz_h2
from .weighted_space import FunctionLike, Polynomial, WeightSequence, as_function, norm_sq
from .zero_analysis import poly_roots

UNIT_CIRCLE_TOL = 1e-6
SIMPLE_ROOT_TOL = 1e-6


@dataclass(frozen=True)
class DecaySeries:
    """Squared residuals ``||q_n f - 1||_w^2`` indexed by degree."""

    ns: tuple
    residuals: tuple
    weight_label: str
    function_label: str = ""

    def as_array(self) -> np.ndarray:
        return np.column_stack([self.ns, self.residuals])


def decay_series(f: FunctionLike, w: WeightSequence, ns: Iterable[int], label: str = "") -> DecaySeries:
    f = as_function(f)
    ns = tuple(int(n) for n in ns)
    res = tuple(opa(f, n, w).residual_sq for n in ns)
    return DecaySeries(ns, res, w.label, label or f.label)


def rate_check_1mz(w: WeightSequence, n: int) -> float:
    """Exact squared residual of the degree-n OPA of ``1/(1-z)``: ``1 / sum_{k<=n+1} 1/w[k]``."""
    if n < 0:
        raise DomainError("degree n must be non-negative")
    return float(1.0 / np.sum(1.0 / w.array(n + 2)))


@dataclass(frozen=True)
class RateReport:
    alpha: float
    ns: np.ndarray
    residuals: np.ndarray
    normalized: np.ndarray
    fitted_exponent: float
    band: tuple

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "fitted_exponent": self.fitted_exponent,
            "band_low": self.band[0],
            "band_high": self.band[1],
            "n_min": int(self.ns[0]),
            "n_max": int(self.ns[-1]),
        }


def _unit_root_split(p: Polynomial, tol: float = UNIT_CIRCLE_TOL):
    roots = poly_roots(p).roots
    mod = np.abs(roots)
    on_circle = np.abs(mod - 1.0) <= tol
    inside = mod < 1.0 - tol
    return roots, on_circle, inside


def dirichlet_rate_bound_check(
    alpha: float,
    f,
    n_max: int,
    n_min: Optional[int] = None,
) -> RateReport:
    """Measure ``||q_n f - 1||^2`` in ``D_alpha`` against ``(n+1)^{-(1-alpha)}`` (``1/log`` at alpha = 1).

    The fit uses the top half of the degree range unless ``n_min`` is given.
    ``band`` is the (min, max) of the normalised residual over that range;
    a positive lower end reflects the sharpness of the rate when f has a zero
    on the circle.
    """
    if alpha > 1:
        raise DomainError("rate bounds apply to alpha <= 1")
    p = f if isinstance(f, Polynomial) else Polynomial(as_function(f).coeffs)
    if p.degree >= 1:
        _, on_circle, inside = _unit_root_split(p)
        if np.any(inside):
            raise DomainError("f has a zero inside the open disk")
        if not np.any(on_circle):
            raise DomainError("f needs a zero on the unit circle")
    else:
        raise DomainError("f must be a non-constant polynomial")
    w = WeightSequence.dirichlet(alpha)
    start = n_max // 2 if n_min is None else n_min
    ns = np.arange(start, n_max + 1)
    res = np.array([opa(p, int(n), w).residual_sq for n in ns])
    if alpha < 1:
        scale = (ns + 1.0) ** (1.0 - alpha)
        slope = np.polyfit(np.log(ns + 1.0), np.log(res), 1)[0]
    else:
        scale = np.log(ns + 1.0)
        slope = np.polyfit(np.log(np.log(ns + 1.0)), np.log(res), 1)[0]
    normalized = res * scale
    return RateReport(float(alpha), ns, res, normalized, float(slope), (float(normalized.min()), float(normalized.max())))


def double_lsi(f, k: int) -> Polynomial:
    """Double least-squares inverse ``Q_{n,k}``: the degree-n OPA of ``1/q_k`` where
    ``q_k`` is the degree-k OPA of ``1/f`` in H^2 and ``n = deg f``.
    """
    p = f if isinstance(f, Polynomial) else Polynomial(as_function(f).coeffs)
    if p.is_zero():
        raise DomainError("f must not vanish identically")
    if p.coeffs[0] == 0:
        raise DomainError("double least-squares inverse needs f(0) != 0")
    n = p.degree
    qk = opa_toeplitz_h2(p, k).q
    return opa_toeplitz_h2(qk, n).q


def reflected_polynomial(f) -> Polynomial:
    """``f`` with every zero inside the disk replaced by its reflection ``1/conj(a)``.

    Zeros are written as factors ``(a - z)`` so the leading behaviour matches
    the factorisation ``p(z) prod (a_j - z)``.
    """
    p = f if isinstance(f, Polynomial) else Polynomial(f)
    if p.degree < 1:
        return p
    roots = poly_roots(p).roots
    # p = c * prod (z - r) = c (-1)^d prod (r - z)
    lead = p.coeffs[-1] * (-1) ** p.degree
    out = Polynomial([lead])
    for r in roots:
        r_new = 1.0 / np.conj(r) if abs(r) < 1 else r
        out = out * Polynomial([r_new, -1.0])
    return out


def izumino_decay(f, n: int, k_list: Sequence[int]) -> List[float]:
    """``||Q_{n,k}||_{H^2}`` over ``k_list`` for f with m zeros on the circle and ``n < m``."""
    p = f if isinstance(f, Polynomial) else Polynomial(f)
    if p.degree < 1:
        raise DomainError("f has no zeros on the unit circle")
    _, on_circle, inside = _unit_root_split(p)
    m = int(np.sum(on_circle))
    if m == 0:
        raise DomainError("f has no zeros on the unit circle")
    if np.any(inside):
        raise DomainError("the outer factor of f must be zero-free on the closed disk")
    if not 0 <= n < m:
        raise DomainError(f"need 0 <= n < m = {m}")
    hardy = WeightSequence.hardy()
    out = []
    for k in k_list:
        qk = opa(p, int(k), hardy).q
        Q = opa(qk, n, hardy).q
        out.append(math.sqrt(norm_sq(Q, hardy)))
    return out


@dataclass(frozen=True)
class BoundaryTable:
    ns: tuple
    sup_errors: tuple
    exclusion_radius: float
    weight_label: str


def disk_grid(radii: int = 64, angles: int = 512) -> np.ndarray:
    r = np.linspace(0.0, 1.0, radii)
    t = 2 * np.pi * np.arange(angles) / angles
    return (r[:, None] * np.exp(1j * t)[None, :]).ravel()


def boundary_convergence(
    f,
    w: WeightSequence,
    n_list: Sequence[int],
    exclusion_radius: float = 0.2,
    radii: int = 64,
    angles: int = 512,
) -> BoundaryTable:
    """``sup |1 - q_n f|`` over a polar grid of the closed disk with discs around the zeros of f removed."""
    if not (w.kind == "dirichlet" and w.alpha in (0.0, -1.0)):
        raise DomainError("boundary convergence is established for H^2 and A^2 only")
    p = f if isinstance(f, Polynomial) else Polynomial(f)
    if p.is_zero():
        raise DomainError("f must not vanish identically")
    roots = poly_roots(p).roots if p.degree >= 1 else np.zeros(0, dtype=complex)
    if np.any(np.abs(roots) < 1.0 - UNIT_CIRCLE_TOL):
        raise DomainError("f has a zero in the open disk")
    if roots.size > 1:
        gaps = np.abs(roots[:, None] - roots[None, :])
        np.fill_diagonal(gaps, np.inf)
        if gaps.min() < SIMPLE_ROOT_TOL:
            raise DomainError("f must have simple zeros")
    z = disk_grid(radii, angles)
    if roots.size:
        keep = np.min(np.abs(z[:, None] - roots[None, :]), axis=1) >= exclusion_radius
        z = z[keep]
    fz = p(z)
    sups = []
    for n in n_list:
        q = opa(p, int(n), w).q
        sups.append(float(np.max(np.abs(1.0 - q(z) * fz))))
    return BoundaryTable(tuple(int(n) for n in n_list), tuple(sups), float(exclusion_radius), w.label)
