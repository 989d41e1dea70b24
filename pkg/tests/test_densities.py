import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dunkl_lab import suites
from dunkl_lab.densities import (
    CoincidentCoordinates, grabiner_density, heat_kernel, jacobi_density_km, jacobi_semigroup_density,
    laguerre_multiplicity, laguerre_semigroup_density, semigroup_density,
)
from dunkl_lab.rng import normals
from dunkl_lab.roots import build, multiplicity

B2 = build("B", 2)
K11 = multiplicity(B2, k0=1.0, k1=1.0)


def test_grabiner_pin():
    x, y = np.array([2.0, 1.0]), np.array([1.5, 0.5])
    a = grabiner_density("B", 2, 0.7, x, y)
    assert semigroup_density(K11, 0.7, x, y) == pytest.approx(a, rel=1e-6)


def test_d_family_determinant():
    rs = build("D", 2)
    k = multiplicity(rs, k1=1.0)
    for y in ([1.5, 0.5], [1.2, -0.4]):
        a = grabiner_density("D", 2, 0.6, [2.0, -1.0], y)
        assert semigroup_density(k, 0.6, [2.0, -1.0], y) == pytest.approx(a, rel=1e-6)


def test_rank_one_is_killed_brownian_motion():
    rs = build("B", 1)
    k = multiplicity(rs, k0=1.0)
    x, t = 1.3, 0.4
    y = np.linspace(0.1, 3, 7)[:, None]
    killed = heat_kernel(t, y[:, 0] - x) - heat_kernel(t, y[:, 0] + x)
    np.testing.assert_allclose(grabiner_density("B", 1, t, [x], y), y[:, 0] / x * killed, rtol=1e-13)
    np.testing.assert_allclose(semigroup_density(k, t, [x], y), y[:, 0] / x * killed, rtol=1e-9)


def test_swap_guard():
    x = [2.0, 1.0]
    a = grabiner_density("B", 2, 0.7, x, [1.5, 0.5])
    b = grabiner_density("B", 2, 0.7, x, [0.5, 1.5])
    assert a == pytest.approx(b, rel=1e-14)
    with pytest.raises(CoincidentCoordinates):
        grabiner_density("B", 2, 0.7, x, [1.0, 1.0])


@settings(max_examples=30, deadline=None)
@given(st.floats(0.4, 2.0), st.lists(st.floats(0.05, 2.0), min_size=2, max_size=2),
       st.lists(st.floats(0.05, 2.0), min_size=2, max_size=2),
       st.sampled_from([(0.3, 0.6), (1.0, 1.0), (0.75, 0.25)]))
def test_nonnegative_and_symmetric(t, x, y, k):
    x, y = np.sort(x)[::-1] + [0.1, 0.0], np.sort(y)[::-1] + [0.1, 0.0]
    kk = multiplicity(B2, k0=k[0], k1=k[1])
    w = lambda v: np.prod((B2.positive_array() @ v) ** (2 * kk.per_positive()))
    a, b = semigroup_density(kk, t, x, y, max_degree=60), semigroup_density(kk, t, y, x, max_degree=60)
    assert a >= 0
    assert a / w(y) == pytest.approx(b / w(x), rel=1e-9)


def _chamber_mc(f, centre, t, n, seed):
    """int_C f(y) dy by Gaussian importance sampling around ``centre``."""
    Y = centre + np.sqrt(t) * normals(seed, n, 2, domain=21)
    inside = np.all(Y @ B2.simple_array().T > 0, axis=1)
    q = np.exp(-((Y - centre) ** 2).sum(1) / (2 * t)) / (2 * np.pi * t)
    v = np.zeros(n)
    v[inside] = f(Y[inside]) / q[inside]
    return v.mean(), v.std(ddof=1) / np.sqrt(n)


def test_normalization():
    x, t = np.array([2.0, 1.0]), 0.5
    est, se = _chamber_mc(lambda Y: semigroup_density(K11, t, x, Y, max_degree=60), x, t, 20_000, 1)
    assert abs(est - 1) <= 4 * se


def test_chapman_kolmogorov():
    k = multiplicity(B2, k0=0.75, k1=0.5)
    x, y, s, t = np.array([1.8, 0.9]), np.array([1.6, 0.7]), 0.3, 0.4
    kv = 2 * k.per_positive()
    w = lambda V: np.prod((np.atleast_2d(V) @ B2.positive_array().T) ** kv, axis=1)

    def integrand(Z):
        # p_t(z, y) = p_t(y, z) w(y) / w(z) by the symmetry checked above
        return (semigroup_density(k, s, x, Z, max_degree=60)
                * semigroup_density(k, t, y, Z, max_degree=60) * w(y) / w(Z))

    est, se = _chamber_mc(integrand, (t * x + s * y) / (s + t), s * t / (s + t), 20_000, 2)
    assert abs(est - semigroup_density(k, s + t, x, y)) <= 4 * se


def test_laguerre_from_zero():
    m, beta, delta = 2, 2.0, 3.0
    k = laguerre_multiplicity(m, beta, delta).named()
    Y = np.array([[2.0, 0.5], [3.5, 1.2], [1.0, 0.3]])
    q = laguerre_semigroup_density(m, beta, delta, 1.0, [0.0, 0.0], Y)
    shape = (np.exp(-Y.sum(1) / 2) * (Y ** (k["k0"] - 0.5)).prod(1)
             * np.abs(Y[:, 0] - Y[:, 1]) ** (2 * k["k1"]))
    ratio = q / shape
    np.testing.assert_allclose(ratio, ratio[0], rtol=1e-10)


def test_laguerre_change_of_variables():
    m, beta, delta, t = 2, 1.0, 4.0, 0.6
    x, y = np.array([3.0, 1.0]), np.array([2.5, 0.8])
    k = laguerre_multiplicity(m, beta, delta)
    direct = semigroup_density(k, t, np.sqrt(x), np.sqrt(y)) / np.prod(2 * np.sqrt(y))
    assert laguerre_semigroup_density(m, beta, delta, t, x, y) == pytest.approx(direct, rel=1e-12)


def test_jacobi_series_vs_determinant():
    th, lam = [0.7, 0.3], [0.6, 0.2]
    a = jacobi_semigroup_density(2, 2.0, 0.5, 0.5, 0.8, th, lam)
    assert a == pytest.approx(jacobi_density_km(2, 0.5, 0.5, 0.8, th, lam), rel=1e-6)


def test_jacobi_density_properties():
    assert suites.jacobi_density_properties(n_mc=50_000, n_partitions=20).passed


def test_determinantal_suite():
    assert suites.determinantal(n=4).passed
