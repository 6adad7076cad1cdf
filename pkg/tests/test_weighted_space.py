import numpy as np
import pytest
from hypothesis import given, strategies as st

from optapprox.errors import DomainError, PrecisionError
from optapprox.weighted_space import (
    Polynomial,
    TruncatedFunction,
    WeightSequence,
    inner,
    norm_sq,
    shift_inner,
    weight,
)

from .strategies import alphas, complex_coeffs

H2 = WeightSequence.hardy()
D1 = WeightSequence.dirichlet(1.0)
A2 = WeightSequence.bergman()


@pytest.mark.parametrize("w, k, expected", [(H2, 7, 1.0), (D1, 2, 3.0), (A2, 3, 0.25)])
def test_weight_values(w, k, expected):
    assert weight(w, k) == expected
    assert w(k) == expected


def test_negative_index_rejected():
    with pytest.raises(DomainError):
        weight(H2, -1)


def test_explicit_weights_validate_and_extend():
    w = WeightSequence.explicit([1.0, 2.0, 5.0])
    np.testing.assert_array_equal(w.array(5), [1, 2, 5, 5, 5])
    w2 = WeightSequence.explicit([1.0, 2.0], tail_rule=lambda k: k + 1.0)
    np.testing.assert_array_equal(w2.array(4), [1, 2, 3, 4])
    with pytest.raises(DomainError):
        WeightSequence.explicit([2.0, 1.0])
    with pytest.raises(DomainError):
        WeightSequence.explicit([1.0, -1.0])
    with pytest.raises(DomainError):
        WeightSequence.explicit([1.0], tail_rule=lambda k: -1.0).array(3)


@pytest.mark.parametrize(
    "text, alpha",
    [("H2", 0.0), ("hardy", 0.0), ("A2", -1.0), ("bergman", -1.0), ("dirichlet", 1.0), ("D:0.5", 0.5)],
)
def test_parse_named(text, alpha):
    w = WeightSequence.parse(text)
    assert w.kind == "dirichlet" and w.alpha == alpha


def test_parse_explicit_and_bad():
    assert WeightSequence.parse("explicit:1,2,3").values == (1.0, 2.0, 3.0)
    with pytest.raises(DomainError):
        WeightSequence.parse("nonsense")


def test_labels_round_trip():
    for w in (H2, A2, D1, WeightSequence.dirichlet(0.5), WeightSequence.explicit([1, 0.5, 0.25])):
        assert WeightSequence.parse(w.label) == w


def test_inner_examples():
    assert inner([1.0], [0.0, 1.0], H2) == 0
    assert inner([1, -1], [1, -1], D1) == 3
    assert inner([1, -1], [0, 1, -1], H2) == -1


def test_norm_examples():
    assert norm_sq([0.0], D1) == 0
    assert norm_sq([1, -1], H2) == 2
    assert norm_sq([0, 1, -1], H2) == 2


def test_shift_inner_examples():
    f = [1.0, -1.0]
    assert shift_inner(f, 0, 0, H2) == 2
    assert shift_inner(f, 1, 0, H2) == -1
    assert shift_inner(f, 2, 0, H2) == 0
    with pytest.raises(DomainError):
        shift_inner(f, -1, 0, H2)


@given(complex_coeffs(), complex_coeffs(), alphas)
def test_inner_is_hermitian(a, b, alpha):
    w = WeightSequence.dirichlet(alpha)
    assert np.isclose(inner(a, b, w), np.conj(inner(b, a, w)))
    assert norm_sq(a, w) >= 0
    assert np.isclose(inner(a, a, w).real, norm_sq(a, w))


@given(complex_coeffs(), st.integers(0, 4), st.integers(0, 4))
def test_h2_shift_inner_is_toeplitz(a, k, j):
    # in H^2 <z^k f, z^j f> depends only on k - j
    m = min(k, j)
    assert np.isclose(shift_inner(a, k, j, H2), shift_inner(a, k - m, j - m, H2))


@given(complex_coeffs(), st.integers(0, 3), st.integers(0, 3), alphas)
def test_shift_inner_brute_force(a, k, j, alpha):
    w = WeightSequence.dirichlet(alpha)
    u = np.concatenate([np.zeros(k), a])
    v = np.concatenate([np.zeros(j), a])
    size = max(u.size, v.size)
    u = np.pad(u, (0, size - u.size))
    v = np.pad(v, (0, size - v.size))
    expected = sum(u[m] * np.conj(v[m]) * (m + 1) ** alpha for m in range(size))
    assert np.isclose(shift_inner(a, k, j, w), expected)


def test_polynomial_basics():
    p = Polynomial([1, 2, 0, 0])
    assert p.degree == 1
    assert Polynomial().degree == -1 and Polynomial().is_zero()
    assert p * Polynomial([1, -1]) == Polynomial([1, 1, -2])
    assert (p - p).is_zero()
    assert Polynomial.from_roots([1.0, 2.0]) == Polynomial([2, -3, 1])
    assert Polynomial.monomial(2, 3.0) == Polynomial([0, 0, 3])
    assert Polynomial([1, 2, 3]).deriv() == Polynomial([2, 6])
    assert p(2.0) == 5


@given(complex_coeffs(), complex_coeffs(), st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False))
def test_polynomial_arithmetic_matches_evaluation(a, b, z):
    p, q = Polynomial(a), Polynomial(b)
    assert np.isclose((p * q)(z), p(z) * q(z), atol=1e-8)
    assert np.isclose((p + q)(z), p(z) + q(z), atol=1e-8)


def test_truncated_function_checks():
    f = TruncatedFunction([1.0, 0.5], tail_bound=1e-3)
    with pytest.raises(PrecisionError):
        f.check_truncation(None)
    f.check_truncation(1e-2)
    with pytest.raises(DomainError):
        TruncatedFunction([1.0], tail_bound=-1.0)
    with pytest.raises(DomainError):
        TruncatedFunction([])
    g = f.times(Polynomial([1, -1]))
    np.testing.assert_allclose(g.coeffs, [1, -0.5, -0.5])
    assert np.isclose(g.tail_bound, 4e-3)
