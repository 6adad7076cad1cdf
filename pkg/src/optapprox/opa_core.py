"""Optimal polynomial approximants (OPAs) of 1/f.

The degree-n OPA ``q_n`` minimises ``||p f - 1||_w`` over polynomials ``p`` of
degree at most n, so ``q_n f`` is the orthogonal projection of 1 onto
``f * P_n``. Its coefficient vector ``a`` solves ``B a = y`` with the Gram
matrix ``B[j, k] = <z^k f, z^j f>_w`` and ``y = (conj(f(0)), 0, ..., 0)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from .errors import DomainError, PrecisionError
from .toeplitz import hermitian_toeplitz_solve
from .weighted_space import (
    FunctionLike,
    Polynomial,
    TruncatedFunction,
    WeightSequence,
    as_function,
)

# A Cholesky pivot below this fraction of the mean diagonal marks B as singular.
PIVOT_RTOL = 1e-13


@dataclass(frozen=True, eq=False)
class GramMatrix:
    entries: np.ndarray
    n: int
    f: TruncatedFunction
    w: WeightSequence


@dataclass(frozen=True, eq=False)
class OpaResult:
    """OPA ``q`` of degree at most ``n`` with ``residual_sq = ||q f - 1||_w^2``."""

    q: Polynomial
    residual_sq: float
    n: int

    @property
    def coefficients(self) -> np.ndarray:
        return self.q.padded(self.n + 1)


def _shift_matrix(a: np.ndarray, n: int) -> np.ndarray:
    """Rows are the coefficient vectors of ``z^k f`` for k = 0..n."""
    size = a.size + n
    F = np.zeros((n + 1, size), dtype=complex)
    for k in range(n + 1):
        F[k, k : k + a.size] = a
    return F


def _checked_function(f: FunctionLike, tail_tol: Optional[float]) -> TruncatedFunction:
    f = as_function(f)
    if not np.any(f.coeffs):
        raise DomainError("f must not vanish identically")
    f.check_truncation(tail_tol)
    return f


def gram_matrix(f: FunctionLike, n: int, w: WeightSequence, tail_tol: Optional[float] = None) -> GramMatrix:
    """Gram matrix ``B[j, k] = <z^k f, z^j f>_w`` for ``0 <= j, k <= n``.

    Only the upper triangle is trusted; the lower one is its conjugate mirror,
    so the result is exactly Hermitian.
    """
    if n < 0:
        raise DomainError("degree n must be non-negative")
    f = _checked_function(f, tail_tol)
    F = _shift_matrix(f.coeffs, n)
    weights = w.array(F.shape[1])
    B = (np.conj(F) * weights) @ F.T
    upper = np.triu(B, 1)
    B = upper + upper.conj().T + np.diag(np.diag(B).real)
    return GramMatrix(B, n, f, w)


def _cholesky_solve(B: np.ndarray, y: np.ndarray) -> np.ndarray:
    n1 = B.shape[0]
    try:
        L = scipy.linalg.cholesky(B, lower=True)
    except np.linalg.LinAlgError as exc:
        raise PrecisionError(
            "Gram matrix lost positive definiteness; a truncated f or an ill-conditioned "
            "family of shifts z^k f is the likely cause"
        ) from exc
    pivots = np.abs(np.diag(L)) ** 2
    threshold = PIVOT_RTOL * np.trace(B).real / n1
    if pivots.min() < threshold:
        raise PrecisionError(
            f"Gram matrix numerically singular (pivot {pivots.min():.3g} < {threshold:.3g}); "
            "check the truncation of f"
        )
    z = scipy.linalg.solve_triangular(L, y, lower=True)
    return scipy.linalg.solve_triangular(L.conj().T, z, lower=False)


def residual_norm_sq(f: FunctionLike, q, w: WeightSequence, tail_tol: Optional[float] = None) -> float:
    """``||q f - 1||_w^2`` summed over the coefficients of the truncated product."""
    f = as_function(f)
    f.check_truncation(tail_tol)
    q = q if isinstance(q, Polynomial) else Polynomial(q)
    r = np.convolve(q.coeffs, f.coeffs)
    r[0] -= 1.0
    return float(np.sum(np.abs(r) ** 2 * w.array(r.size)))


def opa(f: FunctionLike, n: int, w: WeightSequence, tail_tol: Optional[float] = None) -> OpaResult:
    """Degree-n optimal polynomial approximant of ``1/f`` in ``H^2_w``.

    Solves the Gram system by Cholesky factorisation.

    Raises
    ------
    DomainError
        If ``f`` vanishes identically.
    PrecisionError
        If the declared tail of ``f`` is too large or the Gram matrix is
        numerically singular.
    """
    gram = gram_matrix(f, n, w, tail_tol)
    f = gram.f
    y = np.zeros(n + 1, dtype=complex)
    y[0] = np.conj(f.at_zero())
    if y[0] == 0:
        return OpaResult(Polynomial(), 1.0, n)
    a = _cholesky_solve(gram.entries, y)
    q = Polynomial(a)
    return OpaResult(q, residual_norm_sq(f, q, w, tail_tol), n)


def default_grid_size(n: int, T: int) -> int:
    """Smallest power of two at least ``8 (n + T + 1)``."""
    target = 8 * (n + T + 1)
    return 1 << (target - 1).bit_length()


def autocorrelation(f: FunctionLike, lags: int, grid_size: int) -> np.ndarray:
    """Fourier coefficients ``r[l] = (1/2pi) int |f(e^{is})|^2 e^{ils} ds`` for ``l = 0..lags``.

    ``|f|^2`` is sampled on a uniform grid and transformed with the FFT.
    """
    a = as_function(f).coeffs
    if grid_size & (grid_size - 1) or grid_size <= 0:
        raise DomainError(f"grid_size must be a power of two, got {grid_size}")
    if grid_size < 4 * (lags + a.size - 1):
        raise PrecisionError(f"grid of {grid_size} points too small for degree {a.size - 1} and {lags} lags")
    # f(e^{2 pi i m / G}) = sum_k a_k e^{2 pi i k m / G}
    values = np.fft.ifft(a, grid_size) * grid_size
    density = np.abs(values) ** 2
    r = np.fft.ifft(density)[: lags + 1]
    # real coefficients give an even density, so drop the rounding noise
    return r.real.astype(complex) if not np.any(a.imag) else r


def opa_toeplitz_h2(
    f: FunctionLike,
    n: int,
    grid_size: Optional[int] = None,
    tail_tol: Optional[float] = None,
) -> OpaResult:
    """Hardy-space OPA via FFT Gram entries and a Levinson solve.

    In H^2 the Gram matrix is Hermitian Toeplitz with entries given by the
    Fourier coefficients of ``|f|^2`` on the unit circle.
    """
    if n < 0:
        raise DomainError("degree n must be non-negative")
    f = _checked_function(f, tail_tol)
    T = f.truncation_degree
    if grid_size is None:
        grid_size = default_grid_size(n, T)
    r = autocorrelation(f, n, grid_size)
    y = np.zeros(n + 1, dtype=complex)
    y[0] = np.conj(f.at_zero())
    if y[0] == 0:
        return OpaResult(Polynomial(), 1.0, n)
    a = hermitian_toeplitz_solve(r, y)
    q = Polynomial(a)
    return OpaResult(q, residual_norm_sq(f, q, WeightSequence.hardy(), tail_tol), n)


def opa_1mz_closed_form(n: int, w: WeightSequence) -> OpaResult:
    """Closed-form OPA of ``1/(1 - z)``.

    Coefficient k is ``1 - S_k / S_{n+1}`` with ``S_k = sum_{j<=k} 1/w[j]``; the
    squared residual is ``1 / S_{n+1}``.
    """
    if n < 0:
        raise DomainError("degree n must be non-negative")
    partial = np.cumsum(1.0 / w.array(n + 2))
    coeffs = 1.0 - partial[: n + 1] / partial[n + 1]
    return OpaResult(Polynomial(coeffs), float(1.0 / partial[n + 1]), n)
