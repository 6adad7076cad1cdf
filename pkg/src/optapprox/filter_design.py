"""Stable IIR filters from ideal (step-function) magnitude specifications.

Pipeline: the ideal response ``chi`` is smoothed into a continuous positive
``chi_eps``; the outer function ``f_eps`` with ``|f_eps| = chi_eps`` on the circle
is built from the Fourier series of ``log chi_eps``; the Hardy-space OPA ``q_N``
of ``1/f_eps`` gives the denominator and the degree-M part ``p_M`` of
``q_N f_eps`` the numerator. Reversing both polynomials reflects the zeros of
``q_N`` (outside the closed disk) into poles inside the disk.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, PrecisionError
from .opa_core import opa_toeplitz_h2
from .orthopoly import reverse_poly
from .weighted_space import Polynomial, TruncatedFunction
from .zero_analysis import poly_roots

DEFAULT_GRID = 4096
IMAG_TOL = 1e-12
# Smallest smoothing width, relative to pi, that still separates the knots.
RESOLVE_RTOL = 1e-12


def _wrap(s):
    """Map angles onto [-pi, pi)."""
    return np.mod(np.asarray(s, dtype=float) + np.pi, 2 * np.pi) - np.pi


@dataclass(frozen=True)
class IdealFilterSpec:
    """Even, non-negative step function on [-pi, pi].

    ``values[i]`` holds on ``[breakpoints[i-1], breakpoints[i])`` of [0, pi]
    (with ``breakpoints[-1] = 0`` and a final interval ending at pi), and the
    function is mirrored to negative angles.
    """

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        bps = tuple(float(b) for b in self.breakpoints)
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)
        if len(vals) != len(bps) + 1:
            raise DomainError("need exactly one more value than breakpoints")
        if any(not 0 < b < math.pi for b in bps):
            raise DomainError("breakpoints must lie strictly inside (0, pi)")
        if any(b1 <= b0 for b0, b1 in zip(bps, bps[1:])):
            raise DomainError("breakpoints must be strictly increasing")
        if any(v < 0 or not math.isfinite(v) for v in vals):
            raise DomainError("step values must be finite and non-negative")
        if max(vals) <= 0:
            raise DomainError("at least one step value must be positive")

    @classmethod
    def lowpass(cls, cutoff: float = math.pi / 2, gain: float = 1.0) -> "IdealFilterSpec":
        return cls((cutoff,), (gain, 0.0))

    @classmethod
    def constant(cls, c: float) -> "IdealFilterSpec":
        return cls((), (c,))

    @classmethod
    def from_dict(cls, data: dict) -> "IdealFilterSpec":
        return cls(tuple(data["breakpoints"]), tuple(data["values"]))

    @classmethod
    def from_json(cls, text: str) -> "IdealFilterSpec":
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        return {"breakpoints": list(self.breakpoints), "values": list(self.values)}

    @property
    def sup(self) -> float:
        return max(self.values)

    @property
    def min_positive(self) -> float:
        return min(v for v in self.values if v > 0)

    def discontinuities(self) -> list:
        """Breakpoints in (0, pi) where the value actually jumps."""
        return [s for i, s in enumerate(self.breakpoints) if self.values[i] != self.values[i + 1]]

    def __call__(self, s):
        a = np.abs(_wrap(s))
        idx = np.searchsorted(np.asarray(self.breakpoints), a, side="right")
        return np.asarray(self.values)[idx]


def _knot_gaps(points: Sequence[float]) -> float:
    """Largest admissible smoothing width: intervals must stay disjoint and inside (0, pi)."""
    if not points:
        return math.inf
    gaps = [2 * points[0], 2 * (math.pi - points[-1])]
    gaps += [b - a for a, b in zip(points, points[1:])]
    return min(gaps)


def epsilon_for_eta(spec: IdealFilterSpec, eta: float) -> float:
    """Smoothing width guaranteeing ``||chi - chi_eps||_{L^2} < eta``.

    Returns ``0.9 * min(eta^2 pi / (N (sup^2 + 1)), eta / sqrt 2, min positive
    step, gap)`` where N counts the jumps on the whole circle (each jump in
    (0, pi) appears twice after mirroring).
    """
    if not eta > 0:
        raise DomainError("eta must be positive")
    jumps = spec.discontinuities()
    n_jumps = 2 * len(jumps)
    bounds = [eta / math.sqrt(2), spec.min_positive, _knot_gaps(jumps)]
    if n_jumps:
        bounds.append(eta**2 * math.pi / (n_jumps * (spec.sup**2 + 1)))
    return 0.9 * min(bounds)


@dataclass(frozen=True, eq=False)
class SmoothedFilter:
    """Continuous positive approximation of an ideal filter.

    Piecewise linear in ``|s|`` through ``knots``; ``samples`` holds its values
    at ``s_m = 2 pi m / grid_size``.
    """

    spec: IdealFilterSpec
    epsilon: float
    knots: np.ndarray
    knot_values: np.ndarray
    samples: np.ndarray

    @property
    def grid_size(self) -> int:
        return self.samples.size

    @property
    def grid(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.grid_size) / self.grid_size

    def __call__(self, s):
        return np.interp(np.abs(_wrap(s)), self.knots, self.knot_values)

    def l2_error_sq(self) -> float:
        """Exact ``(1/2pi) int |chi - chi_eps|^2 ds`` (both sides are piecewise linear)."""
        cuts = np.union1d(self.knots, np.asarray(self.spec.breakpoints))
        total = 0.0
        for a, b in zip(cuts[:-1], cuts[1:]):
            if b <= a:
                continue
            level = float(self.spec(0.5 * (a + b)))
            d0 = level - float(self(a))
            d1 = level - float(self(b))
            total += (b - a) * (d0 * d0 + d0 * d1 + d1 * d1) / 3.0
        # the integrand is even, so (1/2pi) int_{-pi}^{pi} = (1/pi) int_0^pi
        return total / math.pi


def smooth_ideal(spec: IdealFilterSpec, epsilon: float, grid_size: int = DEFAULT_GRID) -> SmoothedFilter:
    """Replace zero steps by ``epsilon`` and bridge each jump linearly over a width-``epsilon`` interval."""
    jumps = spec.discontinuities()
    if not epsilon > 0:
        raise DomainError("epsilon must be positive")
    if jumps and epsilon < RESOLVE_RTOL * math.pi:
        raise PrecisionError(f"epsilon {epsilon:g} is below the angular resolution of double precision")
    if epsilon >= spec.min_positive:
        raise DomainError(f"epsilon {epsilon:g} must be below the smallest positive step {spec.min_positive:g}")
    if epsilon >= _knot_gaps(jumps):
        raise DomainError(f"epsilon {epsilon:g} makes the smoothing intervals overlap")
    if grid_size < 2:
        raise DomainError("grid_size must be at least 2")
    floored = [v if v > 0 else epsilon for v in spec.values]
    xs = [0.0]
    ys = [floored[0]]
    for i, s in enumerate(spec.breakpoints):
        if spec.values[i] == spec.values[i + 1]:
            continue
        xs += [s - epsilon / 2, s + epsilon / 2]
        ys += [floored[i], floored[i + 1]]
    xs.append(math.pi)
    ys.append(floored[-1])
    knots = np.array(xs)
    knot_values = np.array(ys)
    grid = 2 * np.pi * np.arange(grid_size) / grid_size
    samples = np.interp(np.abs(_wrap(grid)), knots, knot_values)
    for arr in (knots, knot_values, samples):
        arr.setflags(write=False)
    return SmoothedFilter(spec, float(epsilon), knots, knot_values, samples)


def _exp_series(g: np.ndarray) -> np.ndarray:
    """Taylor coefficients of ``exp(sum g_m z^m)`` to the same degree.

    Uses ``m c_m = sum_{j=1}^{m} j g_j c_{m-j}``, which follows from ``c' = g' c``.
    """
    T = g.size - 1
    c = np.zeros(T + 1, dtype=g.dtype)
    c[0] = np.exp(g[0])
    jg = np.arange(T + 1) * g
    for m in range(1, T + 1):
        c[m] = jg[1 : m + 1] @ c[m - 1 :: -1][:m] / m
    return c


@dataclass(frozen=True, eq=False)
class OuterFunctionApprox:
    """Real Taylor coefficients of the outer function with modulus ``chi_eps``."""

    coeffs: np.ndarray
    log_coeffs: np.ndarray
    grid_size: int
    boundary_rel_error: float

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def as_function(self) -> TruncatedFunction:
        return TruncatedFunction(self.coeffs.astype(complex), 0.0, "outer")

    def boundary_values(self, grid_size: Optional[int] = None) -> np.ndarray:
        G = grid_size or self.grid_size
        return np.fft.ifft(self.coeffs, G) * G


def outer_function(chi_eps, T: int, tol: Optional[float] = None) -> OuterFunctionApprox:
    """Outer function ``f_eps`` with ``|f_eps(e^{is})| = chi_eps(s)``, to degree T.

    ``chi_eps`` is a :class:`SmoothedFilter` or an array of positive, even
    samples at ``s_m = 2 pi m / G``.

    ``log f_eps = u0 + 2 sum_{m>=1} u_m z^m`` where ``u_m`` are the Fourier
    coefficients of ``log chi_eps`` (real, since ``chi_eps`` is even); the
    exponential is expanded as a power series.

    Raises :class:`PrecisionError` when the recorded boundary modulus error
    exceeds ``tol`` (if given) or the grid is coarser than ``4 T``.
    """
    samples = chi_eps.samples if isinstance(chi_eps, SmoothedFilter) else np.asarray(chi_eps, dtype=float)
    G = samples.size
    if T < 0:
        raise DomainError("T must be non-negative")
    if G & (G - 1):
        raise DomainError(f"grid size {G} is not a power of two")
    if G < 4 * T:
        raise PrecisionError(f"grid of {G} points too small for degree {T}; need at least {4 * T}")
    if np.any(samples <= 0):
        raise DomainError("smoothed filter must be strictly positive")
    u_hat = np.fft.fft(np.log(samples))[: T + 1] / G
    scale = 1.0 + np.max(np.abs(u_hat))
    if np.max(np.abs(u_hat.imag)) > IMAG_TOL * scale:
        raise PrecisionError("log-modulus has a non-real Fourier coefficient; samples are not even")
    g = u_hat.real.copy()
    g[1:] *= 2.0
    c = _exp_series(g)
    values = np.abs(np.fft.ifft(c, G) * G)
    rel = float(np.max(np.abs(values - samples) / samples))
    if tol is not None and rel > tol:
        raise PrecisionError(f"boundary modulus error {rel:.3g} exceeds {tol:.3g}; increase T")
    c.setflags(write=False)
    g.setflags(write=False)
    return OuterFunctionApprox(c, g, G, rel)


def project_numerator(qN, f_eps, M: int) -> Polynomial:
    """Degree-M part of the Taylor product ``q_N f_eps`` (its best L^2 approximation in P_M)."""
    if M < 0:
        raise DomainError("M must be non-negative")
    q = qN if isinstance(qN, Polynomial) else Polynomial(qN)
    coeffs = f_eps.coeffs if hasattr(f_eps, "coeffs") else np.asarray(f_eps)
    return Polynomial(np.convolve(q.coeffs, coeffs)[: M + 1])


@dataclass(frozen=True, eq=False)
class RationalFilter:
    """Transfer function ``H(z) = numerator(z) / denominator(z)``, polynomials in z.

    ``b`` and ``a`` give the difference equation
    ``y(n) = sum b_k x(n-k) - sum_{j>=1} a_j y(n-j)`` with ``a[0] = 1``.
    """

    numerator: Polynomial
    denominator: Polynomial
    poles: np.ndarray
    zeros: np.ndarray
    M: int
    N: int
    report: dict = field(default_factory=dict)

    @classmethod
    def from_polynomials(cls, numerator, denominator, report: Optional[dict] = None) -> "RationalFilter":
        num = numerator if isinstance(numerator, Polynomial) else Polynomial(numerator)
        den = denominator if isinstance(denominator, Polynomial) else Polynomial(denominator)
        if den.is_zero():
            raise DomainError("denominator must not vanish")
        poles = poly_roots(den).roots if den.degree >= 1 else np.zeros(0, dtype=complex)
        zeros = poly_roots(num).roots if num.degree >= 1 else np.zeros(0, dtype=complex)
        return cls(num, den, poles, zeros, max(num.degree, 0), den.degree, dict(report or {}))

    @classmethod
    def from_difference_equation(cls, b, a) -> "RationalFilter":
        """Inverse of :attr:`b` / :attr:`a`: coefficients of powers of ``z^{-1}``."""
        b = np.asarray(b, dtype=complex)
        a = np.asarray(a, dtype=complex)
        order = max(a.size, b.size) - 1
        den = np.zeros(order + 1, dtype=complex)
        num = np.zeros(order + 1, dtype=complex)
        den[order - np.arange(a.size)] = a
        num[order - np.arange(b.size)] = b
        return cls.from_polynomials(Polynomial(num), Polynomial(den))

    @property
    def analytic_at_infinity(self) -> bool:
        return self.numerator.degree <= self.denominator.degree

    @property
    def is_stable(self) -> bool:
        return bool(np.all(np.abs(self.poles) < 1.0))

    def _difference_coeffs(self):
        order = self.denominator.degree
        if not self.analytic_at_infinity:
            raise DomainError("H is not analytic at infinity (numerator degree exceeds denominator)")
        den = self.denominator.padded(order + 1)[::-1]
        num = self.numerator.padded(order + 1)[::-1]
        lead = den[0]
        a, b = den / lead, num / lead
        if np.max(np.abs(a.imag)) == 0 and np.max(np.abs(b.imag)) == 0:
            return b.real, a.real
        return b, a

    @property
    def b(self) -> np.ndarray:
        return self._difference_coeffs()[0]

    @property
    def a(self) -> np.ndarray:
        return self._difference_coeffs()[1]

    def __call__(self, z):
        return self.numerator(z) / self.denominator(z)


def magnitude_response(H: RationalFilter, grid_size: int = DEFAULT_GRID):
    """Return ``(s, |H(e^{is})|)`` on ``grid_size`` equispaced points of [0, pi]."""
    if grid_size < 2:
        raise DomainError("grid_size must be at least 2")
    s = np.linspace(0.0, np.pi, grid_size)
    z = np.exp(1j * s)
    return s, np.abs(H.numerator(z)) / np.abs(H.denominator(z))


def apply_filter(b, a, x) -> np.ndarray:
    """Run ``y(n) = sum_k b_k x(n-k) - sum_{j>=1} a_j y(n-j)`` on a causal input."""
    a = np.asarray(a)
    b = np.asarray(b)
    x = np.asarray(x)
    if a.size == 0:
        raise DomainError("denominator coefficients are empty")
    if a[0] != 1:
        raise DomainError(f"a[0] must be 1 (normalised difference equation), got {a[0]!r}")
    dtype = np.result_type(a, b, x, float)
    y = np.zeros(x.size, dtype=dtype)
    a_rev = a[1:][::-1]
    b_rev = b[::-1]
    for n in range(x.size):
        kb = min(b.size, n + 1)
        acc = b_rev[b.size - kb :] @ x[n - kb + 1 : n + 1]
        ka = min(a.size - 1, n)
        if ka:
            acc -= a_rev[a_rev.size - ka :] @ y[n - ka : n]
        y[n] = acc
    return y


def impulse_response(H: RationalFilter, L: int) -> np.ndarray:
    """``h(0..L)`` where ``H(z) = sum h(n) z^{-n}`` near infinity."""
    if L < 0:
        raise DomainError("L must be non-negative")
    impulse = np.zeros(L + 1)
    impulse[0] = 1.0
    return apply_filter(H.b, H.a, impulse)


def _realify(p: Polynomial, what: str) -> Polynomial:
    c = p.coeffs
    if np.max(np.abs(c.imag)) > IMAG_TOL * (1.0 + np.max(np.abs(c))):
        raise PrecisionError(f"{what} picked up a non-negligible imaginary part")
    return Polynomial(c.real)


def design_filter(
    spec: IdealFilterSpec,
    eta: float,
    N: int,
    M: int,
    T: int,
    grid_size: int = DEFAULT_GRID,
    epsilon: Optional[float] = None,
) -> RationalFilter:
    """Design the stable filter ``H = p_M^* / q_N^*`` for an ideal specification.

    ``epsilon`` overrides the smoothing width derived from ``eta``. The
    returned filter's ``report`` records the staged least-squares errors:
    ``ideal_vs_outer`` (``||chi - |f_eps|||``), ``denominator``
    (``||q_N f_eps - 1||``) and ``numerator`` (``||q_N f_eps - p_M||``).

    Raises
    ------
    RuntimeError
        If a pole lands on or outside the unit circle, which only happens on
        numerical breakdown.
    """
    if not 0 <= M <= N:
        raise DomainError("need 0 <= M <= N")
    eps = epsilon_for_eta(spec, eta) if epsilon is None else float(epsilon)
    grid = max(grid_size, 1 << (max(4 * T, 2) - 1).bit_length())
    chi_eps = smooth_ideal(spec, eps, grid)
    outer = outer_function(chi_eps, T)
    f_eps = outer.as_function()

    res = opa_toeplitz_h2(f_eps, N)
    qN = _realify(res.q, "denominator")
    pM = _realify(project_numerator(qN, outer, M), "numerator")

    prod = np.convolve(qN.coeffs, outer.coeffs)
    numerator_err = float(np.sqrt(np.sum(np.abs(prod[M + 1 :]) ** 2)))
    boundary = np.abs(outer.boundary_values(grid))
    ideal = spec(chi_eps.grid)
    report = {
        "epsilon": eps,
        "eta": float(eta),
        "T": int(T),
        "grid_size": int(grid),
        "ideal_vs_smoothed": math.sqrt(chi_eps.l2_error_sq()),
        "ideal_vs_outer": float(np.sqrt(np.mean((ideal - boundary) ** 2))),
        "outer_boundary_rel_error": outer.boundary_rel_error,
        "denominator": math.sqrt(res.residual_sq),
        "numerator": numerator_err,
    }
    H = RationalFilter.from_polynomials(reverse_poly(pM, M), reverse_poly(qN, N), report)
    H = RationalFilter(H.numerator, H.denominator, H.poles, H.zeros, M, N, report)
    if not H.is_stable:
        raise RuntimeError(
            f"designed filter has a pole of modulus {np.max(np.abs(H.poles)):.12g}; numerical breakdown"
        )
    return H
