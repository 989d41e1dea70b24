from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special as sp

from dunkl_lab.jacobi import (
    JacobiBasis, determinantal_p, eigenvalue, jacobi_params, jacobi_poly, multivariate_jacobi,
    orthonormal_q, simplex_rule, vandermonde, weight,
)
from dunkl_lab.symmetric import Partition


def test_jacobi_poly_pins():
    r, s = 0.7, 1.3
    x = np.linspace(-1, 1, 9)
    np.testing.assert_allclose(jacobi_poly(0, r, s, x), 1.0)
    np.testing.assert_allclose(jacobi_poly(1, r, s, x), (r + 1) - (r + s + 2) * (1 - x) / 2, rtol=1e-13)
    for n in range(6):
        assert jacobi_poly(n, r, s, 1.0) == pytest.approx(sp.poch(r + 1, n) / factorial(n))


def test_univariate_orthonormal():
    r, s = 0.5, -0.3
    x, w = sp.roots_jacobi(40, s, r)  # weight (1-x)^s (1+x)^r on [-1, 1], lambda = (1+x)/2
    lam = (1 + x) / 2
    w = w / w.sum()
    Q = np.stack([orthonormal_q(n, r, s, lam) for n in range(6)])
    np.testing.assert_allclose(Q @ (w[:, None] * Q.T), np.eye(6), atol=1e-12)


def test_params():
    assert jacobi_params(2, 2.0, 3.0, 2.5) == (1.0, 0.5)


def test_weight_normalized():
    for m, beta in [(2, 2.0), (2, 1.0), (3, 2.0)]:
        rule = simplex_rule(m, 0.5, 0.25, beta)
        L = rule.nodes
        total = rule.integrate(np.ones(len(L)))
        # the rule already carries the unnormalized weight; compare against the closed form
        w = weight(m, 0.5, 0.25, beta, L)
        raw = (L ** 0.5).prod(1) * ((1 - L) ** 0.25).prod(1) * np.abs(vandermonde(L)) ** beta
        assert total == pytest.approx(float(np.median(raw / w)), rel=1e-8)


def test_empty_partition_is_constant():
    L = np.array([[0.8, 0.3], [0.6, 0.1]])
    np.testing.assert_allclose(multivariate_jacobi(Partition(()), 0.5, 0.5, 2.0, L), 1.0, rtol=1e-12)
    np.testing.assert_allclose(multivariate_jacobi(Partition(()), 0.5, 0.5, 1.0, L), 1.0, rtol=1e-10)


def test_determinantal_degree_one():
    r, s = 0.5, 0.5
    L = np.array([0.8, 0.3])
    q = lambda n, x: orthonormal_q(n, r, s, x)
    raw = (q(2, L[0]) * q(0, L[1]) - q(2, L[1]) * q(0, L[0])) / (L[0] - L[1])
    ratio = determinantal_p((1,), r, s, L) / raw
    L2 = np.array([0.55, 0.2])
    raw2 = (q(2, L2[0]) * q(0, L2[1]) - q(2, L2[1]) * q(0, L2[0])) / (L2[0] - L2[1])
    assert determinantal_p((1,), r, s, L2) / raw2 == pytest.approx(ratio, rel=1e-12)


@pytest.mark.parametrize("beta", [2.0, 1.0])
def test_orthonormality(beta):
    m, r, s = 2, 0.5, 0.25
    rule = simplex_rule(m, r, s, beta)
    w = rule.weights / rule.weights.sum()
    if beta == 2.0:
        parts = [Partition(t) for t in [(), (1,), (2,), (1, 1), (3,), (2, 1)]]
        P = np.stack([determinantal_p(t, r, s, rule.nodes) for t in parts], axis=1)
    else:
        P = JacobiBasis(m, r, s, beta, 3).values(rule.nodes)
    np.testing.assert_allclose(P.T @ (w[:, None] * P), np.eye(P.shape[1]), atol=1e-9)


def test_coincident_coordinates():
    with pytest.raises(ValueError):
        determinantal_p((1,), 0.5, 0.5, [0.4, 0.4])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 8), min_size=1, max_size=6),
       st.integers(-4, 20), st.integers(-4, 20))
def test_eigenvalue_identity(parts, r8, s8):
    tau = Partition(tuple(sorted([p for p in parts if p > 0], reverse=True)))
    m = len(parts)
    r, s = Fraction(r8, 8), Fraction(s8, 8)
    t = tau.padded(m)
    ns = [t[i] + m - 1 - i for i in range(m)]
    lhs = sum(n * (n + r + s + 1) for n in ns)
    e0 = sum(j * (j + r + s + 1) for j in range(m))
    assert lhs == eigenvalue(tau, r, s, 2, m) / 2 + e0
