"""Orthonormal polynomials for the inner product ``<p f, r f>_w``.

``phis[k]`` has exact degree k and positive leading coefficient, and the
products ``phis[k] * f`` are orthonormal in H^2_w. In H^2 these are the
orthonormal polynomials of the measure ``|f|^2 dtheta / 2pi`` on the circle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .errors import DomainError, PrecisionError
from .opa_core import _checked_function, opa
from .weighted_space import FunctionLike, Polynomial, TruncatedFunction, WeightSequence, as_function

REORTH_TOL = 1e-10
RANK_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class OrthonormalBasis:
    phis: List[Polynomial]
    f: TruncatedFunction
    w: WeightSequence
    n: int

    def leading(self, k: int) -> float:
        return float(self.phis[k].coeffs[k].real)

    def matrix(self) -> np.ndarray:
        """Coefficients as rows of an ``(n+1) x (n+1)`` lower-triangular array."""
        return np.array([p.padded(self.n + 1) for p in self.phis])


def orthonormal_basis(
    f: FunctionLike, n: int, w: WeightSequence, tail_tol: Optional[float] = None
) -> OrthonormalBasis:
    """Modified Gram-Schmidt on ``f, z f, ..., z^n f`` in the weighted inner product.

    A second orthogonalisation pass runs whenever the first leaves a projection
    larger than ``REORTH_TOL`` relative to the vector norm.
    """
    if n < 0:
        raise DomainError("degree n must be non-negative")
    f = _checked_function(f, tail_tol)
    a = f.coeffs
    size = a.size + n
    weights = w.array(size)

    def dot(u, v):
        return np.sum(u * np.conj(v) * weights)

    vecs: list = []  # orthonormal vectors phi_k * f
    coefs: list = []  # coefficients of phi_k, length n+1
    for k in range(n + 1):
        u = np.zeros(size, dtype=complex)
        u[k : k + a.size] = a
        p = np.zeros(n + 1, dtype=complex)
        p[k] = 1.0
        start = np.sqrt(dot(u, u).real)
        for _ in range(2):
            worst = 0.0
            for e, c in zip(vecs, coefs):
                proj = dot(u, e)
                u = u - proj * e
                p = p - proj * c
                worst = max(worst, abs(proj))
            nrm = np.sqrt(dot(u, u).real)
            if worst <= REORTH_TOL * max(nrm, np.finfo(float).tiny):
                break
        if nrm <= RANK_TOL * start:
            raise PrecisionError(f"rank loss at degree {k}; f is likely under-resolved")
        vecs.append(u / nrm)
        coefs.append(p / nrm)
    phis = [Polynomial(c[: k + 1]) for k, c in enumerate(coefs)]
    return OrthonormalBasis(phis, f, w, n)


def opa_from_basis(basis: OrthonormalBasis, f: Optional[FunctionLike] = None) -> Polynomial:
    """``q_n = conj(f(0)) * sum_k conj(phi_k(0)) phi_k`` (the kernel at 0 divided by f)."""
    f0 = as_function(f).at_zero() if f is not None else basis.f.at_zero()
    total = np.zeros(basis.n + 1, dtype=complex)
    for phi in basis.phis:
        total += np.conj(phi.coeffs[0]) * phi.padded(basis.n + 1)
    return Polynomial(np.conj(f0) * total)


def reverse_poly(p, n: int) -> Polynomial:
    """Reversed polynomial ``p*(z) = z^n conj(p(1/conj(z)))`` at degree ``n``."""
    p = p if isinstance(p, Polynomial) else Polynomial(p)
    if p.degree > n:
        raise DomainError(f"degree {p.degree} exceeds reversal degree {n}")
    return Polynomial(np.conj(p.padded(n + 1)[::-1]))


@dataclass(frozen=True)
class IdentityReport:
    max_abs_deviation: float
    opa_coefficients: np.ndarray
    reversed_coefficients: np.ndarray


def verify_h2_identity(f: FunctionLike, n: int, w: Optional[WeightSequence] = None) -> IdentityReport:
    """Compare the Hardy-space OPA with ``conj(f(0)) * lead(phi_n) * phi_n^*``.

    The OPA comes from the dense Gram solve, the right-hand side from
    Gram-Schmidt, so the two routes share no linear algebra.
    """
    if w is not None and not w.is_hardy:
        raise DomainError("the reversed-orthonormal identity holds only in H^2")
    hardy = WeightSequence.hardy()
    f = as_function(f)
    q = opa(f, n, hardy).q.padded(n + 1)
    basis = orthonormal_basis(f, n, hardy)
    rhs = np.conj(f.at_zero()) * basis.leading(n) * reverse_poly(basis.phis[n], n).padded(n + 1)
    return IdentityReport(float(np.max(np.abs(q - rhs))), q, rhs)


def kernel_at_zero(f: FunctionLike, n: int, w: WeightSequence, tail_tol: Optional[float] = None) -> TruncatedFunction:
    """Reproducing kernel of ``f * P_n`` at 0, i.e. ``q_n f``."""
    f = as_function(f)
    q = opa(f, n, w, tail_tol).q
    return f.times(q)
