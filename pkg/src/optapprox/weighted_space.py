"""Weight sequences, polynomials and truncated power series in H^2_omega.

A weighted Hardy space is fixed by positive weights ``w[k]`` with ``w[0] = 1``;
the norm of ``f = sum a_k z^k`` is ``sum |a_k|^2 w[k]``. Dirichlet-type spaces
use ``w[k] = (k + 1) ** alpha``: alpha = 0 is the Hardy space, alpha = 1 the
Dirichlet space and alpha = -1 the Bergman space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import DomainError, PrecisionError

# Default ceiling on the declared tail mass of a truncated series.
DEFAULT_TAIL_TOL = 1e-12


@dataclass(frozen=True)
class WeightSequence:
    """Weights ``w[k]`` of a space H^2_omega.

    Use the constructors :meth:`dirichlet` and :meth:`explicit` rather than
    building instances by hand. Explicit prefixes are extended past their end
    by ``tail_rule`` when given, otherwise by repeating the last value.
    The asymptotic condition ``w[k] / w[k+1] -> 1`` cannot be checked on a
    finite prefix; it is part of the caller's contract for ``tail_rule``.
    """

    kind: str
    alpha: float = 0.0
    values: tuple = ()
    tail_rule: Optional[Callable[[int], float]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind == "dirichlet":
            if not np.isfinite(self.alpha):
                raise DomainError("alpha must be finite")
        elif self.kind == "explicit":
            vals = np.asarray(self.values, dtype=float)
            if vals.size == 0:
                raise DomainError("explicit weights need at least w[0]")
            if vals[0] != 1.0:
                raise DomainError(f"w[0] must equal 1, got {vals[0]!r}")
            if not np.all(np.isfinite(vals)) or np.any(vals <= 0):
                raise DomainError("explicit weights must be finite and positive")
        else:
            raise DomainError(f"unknown weight kind {self.kind!r}")

    @classmethod
    def dirichlet(cls, alpha: float) -> "WeightSequence":
        return cls("dirichlet", alpha=float(alpha))

    @classmethod
    def hardy(cls) -> "WeightSequence":
        return cls.dirichlet(0.0)

    @classmethod
    def bergman(cls) -> "WeightSequence":
        return cls.dirichlet(-1.0)

    @classmethod
    def explicit(cls, values: Sequence[float], tail_rule=None) -> "WeightSequence":
        return cls("explicit", values=tuple(float(v) for v in values), tail_rule=tail_rule)

    @classmethod
    def parse(cls, descriptor: str) -> "WeightSequence":
        """Parse ``H2``, ``bergman``, ``dirichlet``, ``D:<alpha>`` or ``explicit:<w0>,<w1>,...``."""
        text = descriptor.strip()
        low = text.lower()
        named = {"h2": 0.0, "hardy": 0.0, "a2": -1.0, "bergman": -1.0, "dirichlet": 1.0, "d": 1.0}
        if low in named:
            return cls.dirichlet(named[low])
        head, sep, rest = text.partition(":")
        if sep and head.lower() in ("d", "dirichlet", "alpha"):
            return cls.dirichlet(float(rest))
        if sep and head.lower() == "explicit":
            return cls.explicit([float(v) for v in rest.split(",") if v.strip()])
        raise DomainError(f"cannot parse weight descriptor {descriptor!r}")

    @property
    def label(self) -> str:
        if self.kind == "dirichlet":
            if self.alpha == 0:
                return "H2"
            if self.alpha == -1:
                return "A2"
            return f"D:{self.alpha:g}"
        return "explicit:" + ",".join(f"{v:.17g}" for v in self.values)

    @property
    def is_hardy(self) -> bool:
        if self.kind == "dirichlet":
            return self.alpha == 0
        return False

    def __call__(self, k: int) -> float:
        return weight(self, k)

    def array(self, size: int) -> np.ndarray:
        """Return ``w[0], ..., w[size-1]`` as a float array."""
        if size < 0:
            raise DomainError("size must be non-negative")
        if self.kind == "dirichlet":
            return np.arange(1, size + 1, dtype=float) ** self.alpha
        vals = np.asarray(self.values, dtype=float)
        if size <= vals.size:
            return vals[:size].copy()
        if self.tail_rule is None:
            extra = np.full(size - vals.size, vals[-1])
        else:
            extra = np.array([float(self.tail_rule(k)) for k in range(vals.size, size)])
            if np.any(extra <= 0) or not np.all(np.isfinite(extra)):
                raise DomainError("tail_rule produced a non-positive weight")
        return np.concatenate([vals, extra])

    def is_nondecreasing(self, upto: int) -> bool:
        return bool(np.all(np.diff(self.array(upto + 1)) >= 0))


def weight(w: WeightSequence, k: int) -> float:
    """Return ``w[k]``; Dirichlet-type weights are exactly ``(k+1) ** alpha``."""
    if k < 0:
        raise DomainError(f"weight index must be >= 0, got {k}")
    if w.kind == "dirichlet":
        return float((k + 1) ** w.alpha)
    return float(w.array(k + 1)[k])


class Polynomial:
    """Polynomial in ``z`` with complex coefficients, lowest degree first.

    Trailing zero coefficients are dropped on construction so equality is
    unambiguous. The zero polynomial has degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=(0.0,)):
        arr = np.atleast_1d(np.array(coeffs, dtype=complex))
        if arr.ndim != 1:
            raise DomainError("polynomial coefficients must be one-dimensional")
        nz = np.flatnonzero(arr)
        arr = arr[: nz[-1] + 1] if nz.size else np.zeros(1, dtype=complex)
        arr.setflags(write=False)
        self.coeffs = arr

    @classmethod
    def monomial(cls, k: int, c: complex = 1.0) -> "Polynomial":
        out = np.zeros(k + 1, dtype=complex)
        out[k] = c
        return cls(out)

    @classmethod
    def from_roots(cls, roots, leading: complex = 1.0) -> "Polynomial":
        """Polynomial ``leading * prod (z - r)``."""
        return cls(leading * np.polynomial.polynomial.polyfromroots(np.asarray(roots, dtype=complex)))

    @property
    def degree(self) -> int:
        if self.coeffs.size == 1 and self.coeffs[0] == 0:
            return -1
        return self.coeffs.size - 1

    def is_zero(self) -> bool:
        return self.degree == -1

    def padded(self, size: int) -> np.ndarray:
        """Coefficients zero-padded (or cut) to ``size`` entries."""
        out = np.zeros(size, dtype=complex)
        m = min(size, self.coeffs.size)
        out[:m] = self.coeffs[:m]
        return out

    def truncate(self, m: int) -> "Polynomial":
        return Polynomial(self.coeffs[: m + 1])

    def deriv(self) -> "Polynomial":
        return Polynomial(np.polynomial.polynomial.polyder(self.coeffs)) if self.coeffs.size > 1 else Polynomial()

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if np.isscalar(other):
            return Polynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(np.polynomial.polynomial.polyadd(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Polynomial(self.coeffs / scalar)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs.shape == other.coeffs.shape and bool(np.all(self.coeffs == other.coeffs))

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def __repr__(self):
        return f"Polynomial({np.array2string(self.coeffs, precision=6, separator=', ')})"


@dataclass(frozen=True, eq=False)
class TruncatedFunction:
    """Taylor coefficients ``a_0..a_T`` of an analytic function at 0.

    ``tail_bound`` bounds the neglected mass ``sum_{k>T} |a_k|^2 w[k]`` in the
    space the function is used in; it is 0 for polynomials.
    """

    coeffs: np.ndarray
    tail_bound: float = 0.0
    label: str = ""

    def __post_init__(self):
        arr = np.atleast_1d(np.array(self.coeffs, dtype=complex))
        if arr.ndim != 1 or arr.size == 0:
            raise DomainError("coefficients must be a non-empty 1-d sequence")
        if self.tail_bound < 0 or not np.isfinite(self.tail_bound):
            raise DomainError("tail_bound must be finite and non-negative")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def truncation_degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_polynomial(self) -> bool:
        return self.tail_bound == 0.0

    @classmethod
    def from_polynomial(cls, p, label: str = "") -> "TruncatedFunction":
        p = p if isinstance(p, Polynomial) else Polynomial(p)
        return cls(p.coeffs, 0.0, label)

    def at_zero(self) -> complex:
        return complex(self.coeffs[0])

    def is_zero(self) -> bool:
        return not np.any(self.coeffs) and self.tail_bound == 0.0

    def padded(self, size: int) -> np.ndarray:
        out = np.zeros(size, dtype=complex)
        m = min(size, self.coeffs.size)
        out[:m] = self.coeffs[:m]
        return out

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    def as_polynomial(self) -> Polynomial:
        return Polynomial(self.coeffs)

    def times(self, p: Polynomial) -> "TruncatedFunction":
        """Product ``p * f`` carried to degree ``T + deg p``.

        The tail bound is scaled by ``(sum |p_j|)^2``, which is exact in H^2
        (``|p| <= sum |p_j|`` on the circle) and a heuristic for other weights.
        """
        scale = float(np.sum(np.abs(p.coeffs))) ** 2
        return TruncatedFunction(np.convolve(self.coeffs, p.coeffs), self.tail_bound * scale, self.label)

    def check_truncation(self, tol: Optional[float]) -> None:
        limit = DEFAULT_TAIL_TOL if tol is None else tol
        if self.tail_bound > limit:
            raise PrecisionError(
                f"declared tail mass {self.tail_bound:.3g} exceeds tolerance {limit:.3g}; "
                "raise the truncation degree"
            )


FunctionLike = Union[TruncatedFunction, Polynomial, Sequence[complex], np.ndarray]


def as_function(f: FunctionLike) -> TruncatedFunction:
    """Coerce polynomials and coefficient lists into a :class:`TruncatedFunction`."""
    if isinstance(f, TruncatedFunction):
        return f
    if isinstance(f, Polynomial):
        return TruncatedFunction.from_polynomial(f)
    return TruncatedFunction(np.asarray(f, dtype=complex))


def inner(f: FunctionLike, g: FunctionLike, w: WeightSequence) -> complex:
    """Weighted inner product ``sum a_k conj(b_k) w[k]`` over the common support."""
    a = as_function(f).coeffs
    b = as_function(g).coeffs
    m = min(a.size, b.size)
    if m == 0:
        return 0j
    return complex(np.sum(a[:m] * np.conj(b[:m]) * w.array(m)))


def norm_sq(f: FunctionLike, w: WeightSequence) -> float:
    a = as_function(f).coeffs
    return float(np.sum(np.abs(a) ** 2 * w.array(a.size)))


def shift_inner(f: FunctionLike, k: int, j: int, w: WeightSequence) -> complex:
    """Return ``<z^k f, z^j f>_w = sum_{m >= max(j,k)} a_{m-k} conj(a_{m-j}) w[m]``."""
    if k < 0 or j < 0:
        raise DomainError("shift indices must be non-negative")
    a = as_function(f).coeffs
    size = a.size + max(k, j)
    u = np.zeros(size, dtype=complex)
    v = np.zeros(size, dtype=complex)
    u[k : k + a.size] = a
    v[j : j + a.size] = a
    return complex(np.sum(u * np.conj(v) * w.array(size)))
