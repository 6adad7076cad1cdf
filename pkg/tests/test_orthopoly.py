import numpy as np
import pytest
from hypothesis import given, strategies as st

from optapprox.errors import DomainError
from optapprox.opa_core import opa
from optapprox.orthopoly import (
    kernel_at_zero,
    opa_from_basis,
    orthonormal_basis,
    reverse_poly,
    verify_h2_identity,
)
from optapprox.weighted_space import Polynomial, WeightSequence, inner
from optapprox.zero_analysis import poly_roots

from .strategies import alphas, polynomials

H2 = WeightSequence.hardy()


def test_basis_of_constant_is_scaled_monomials():
    w = WeightSequence.dirichlet(1.0)
    basis = orthonormal_basis([1.0], 3, w)
    for k, phi in enumerate(basis.phis):
        expected = np.zeros(k + 1)
        expected[k] = 1 / np.sqrt(k + 1)
        np.testing.assert_allclose(phi.coeffs, expected, atol=1e-15)


def test_basis_examples():
    basis = orthonormal_basis([1.0, -1.0], 1, H2)
    np.testing.assert_allclose(basis.phis[0].coeffs, [1 / np.sqrt(2)])
    np.testing.assert_allclose(opa_from_basis(basis).padded(2), [2 / 3, 1 / 3], atol=1e-14)
    np.testing.assert_allclose(opa_from_basis(orthonormal_basis([1.0, -1.0], 2, H2)).padded(3), [0.75, 0.5, 0.25])
    assert opa_from_basis(orthonormal_basis([1.0], 3, H2)) == Polynomial([1.0])
    assert opa_from_basis(orthonormal_basis([0.0, 1.0, 2.0], 2, H2)).is_zero()


@given(polynomials(max_degree=5), st.integers(0, 5), alphas)
def test_basis_is_orthonormal_with_positive_leading(p, n, alpha):
    w = WeightSequence.dirichlet(alpha)
    basis = orthonormal_basis(p, n, w)
    prods = [Polynomial(phi.coeffs) * p for phi in basis.phis]
    G = np.array([[inner(u.coeffs, v.coeffs, w) for u in prods] for v in prods])
    np.testing.assert_allclose(G, np.eye(n + 1), atol=1e-8)
    for k in range(n + 1):
        assert basis.phis[k].degree == k
        assert basis.leading(k) > 0


@given(polynomials(max_degree=5), st.integers(0, 5), alphas)
def test_basis_formula_matches_gram_solve(p, n, alpha):
    w = WeightSequence.dirichlet(alpha)
    np.testing.assert_allclose(
        opa_from_basis(orthonormal_basis(p, n, w)).padded(n + 1), opa(p, n, w).coefficients, atol=1e-8
    )


def test_reverse_examples():
    assert reverse_poly([1, 2], 1) == Polynomial([2, 1])
    assert reverse_poly(Polynomial.monomial(3), 3) == Polynomial([1.0])
    assert reverse_poly([0.75, 0.5, 0.25], 2) == Polynomial([0.25, 0.5, 0.75])
    assert reverse_poly([1j, 0.0], 1) == Polynomial([0.0, -1j])
    with pytest.raises(DomainError):
        reverse_poly([1, 2, 3], 1)


@given(polynomials(max_degree=5), st.integers(0, 6))
def test_reverse_is_involution(p, extra):
    n = max(p.degree, 0) + extra
    assert reverse_poly(reverse_poly(p, n), n) == p


def test_identity_examples(rng):
    assert verify_h2_identity([1.0, -1.0], 2).max_abs_deviation < 1e-9
    c = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    c[0] += 2.0
    assert verify_h2_identity(c, 4).max_abs_deviation < 1e-8
    assert verify_h2_identity([1.0], 3).max_abs_deviation < 1e-15
    with pytest.raises(DomainError):
        verify_h2_identity([1.0, -1.0], 2, WeightSequence.bergman())


def test_kernel_examples():
    np.testing.assert_allclose(kernel_at_zero([1.0], 3, WeightSequence.dirichlet(1.0)).padded(4), [1, 0, 0, 0])
    K = kernel_at_zero([1.0, -1.0], 2, H2)
    np.testing.assert_allclose(K.coeffs, [0.75, -0.25, -0.25, -0.25], atol=1e-15)
    # reproducing property on f * P_n: <p f, K> = p(0) f(0)
    pf = Polynomial([0.0, 1.0]) * Polynomial([1.0, -1.0])
    assert abs(inner(pf.coeffs, K.coeffs, H2)) < 1e-15


@given(polynomials(max_degree=4), st.integers(0, 4), alphas, st.integers(0, 2**32 - 1))
def test_kernel_reproduces(p, n, alpha, seed):
    w = WeightSequence.dirichlet(alpha)
    K = kernel_at_zero(p, n, w)
    rng = np.random.default_rng(seed)
    r = Polynomial(rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1))
    rf = r * p
    assert np.isclose(inner(rf.coeffs, K.coeffs, w), r(0.0) * p.coeffs[0], atol=1e-8)


@given(polynomials(max_degree=5), st.integers(1, 6))
def test_h2_orthonormal_zeros_lie_in_disk(p, n):
    phi = orthonormal_basis(p, n, H2).phis[n]
    assert np.all(poly_roots(phi).moduli < 1.0)
