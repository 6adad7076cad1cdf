"""Levinson recursion for Toeplitz systems."""

from __future__ import annotations

import numpy as np

from .errors import DomainError, PrecisionError


def levinson_solve(column, row, y, pivot_tol: float = 1e-13) -> np.ndarray:
    """Solve ``T x = y`` for the Toeplitz matrix with first column ``column`` and first row ``row``.

    ``T[i, j] = column[i - j]`` for ``i >= j`` and ``row[j - i]`` otherwise.
    Forward and backward vectors are grown one order at a time (O(n^2) work).
    Raises :class:`PrecisionError` when a leading principal minor becomes
    numerically singular relative to ``|T[0, 0]|``.
    """
    col = np.asarray(column, dtype=complex)
    rw = np.asarray(row, dtype=complex)
    rhs = np.asarray(y, dtype=complex)
    n = col.size
    if rw.size != n or rhs.size != n:
        raise DomainError("column, row and right-hand side must have the same length")
    if n == 0:
        return np.zeros(0, dtype=complex)
    if col[0] != rw[0]:
        raise DomainError("column[0] and row[0] must agree")
    t0 = col[0]
    if abs(t0) == 0:
        raise PrecisionError("Toeplitz diagonal is zero")

    fwd = np.array([1.0 / t0])
    bwd = np.array([1.0 / t0])
    x = np.array([rhs[0] / t0])
    for m in range(1, n):
        # last row of T_{m+1} restricted to its first m columns: col[m], ..., col[1]
        last_row = col[m:0:-1]
        # first row of T_{m+1} restricted to its last m columns: row[1], ..., row[m]
        first_row = rw[1 : m + 1]
        eps_f = last_row @ fwd
        eps_b = first_row @ bwd
        denom = 1.0 - eps_f * eps_b
        if abs(denom) < pivot_tol:
            raise PrecisionError(f"Toeplitz minor of order {m + 1} is numerically singular")
        f_ext = np.append(fwd, 0.0)
        b_ext = np.insert(bwd, 0, 0.0)
        fwd = (f_ext - eps_f * b_ext) / denom
        bwd = (b_ext - eps_b * f_ext) / denom
        eps_x = last_row @ x
        x = np.append(x, 0.0) + (rhs[m] - eps_x) * bwd
    return x


def hermitian_toeplitz_solve(first_row, y, pivot_tol: float = 1e-13) -> np.ndarray:
    """Solve ``B x = y`` where ``B[j, k] = r[k - j]`` and ``r[-l] = conj(r[l])``."""
    r = np.array(first_row, dtype=complex)
    r[0] = r[0].real
    return levinson_solve(np.conj(r), r, y, pivot_tol)
