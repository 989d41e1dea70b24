import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special as sp

from dunkl_lab.series import (
    NotConverged, PochhammerZero, SeriesSpec, hyperg_det_alpha1, hyperg_multi, hyperg_uni,
)


def test_univariate_pins():
    assert hyperg_uni(0, 1, [0.5], 1.0) == pytest.approx(np.cosh(2.0), rel=1e-14)
    assert hyperg_uni(1, 1, [0.7, 0.7], 1.0) == pytest.approx(np.e, rel=1e-14)
    assert hyperg_uni(2, 1, [1, 1, 2], 0.5) == pytest.approx(2 * np.log(2), rel=1e-13)


def test_univariate_against_scipy():
    z = np.linspace(-3, 3, 13)
    np.testing.assert_allclose(hyperg_uni(1, 1, [0.3, 1.7], z), sp.hyp1f1(0.3, 1.7, z), rtol=1e-12)
    w = np.linspace(-0.9, 0.9, 7)
    np.testing.assert_allclose(hyperg_uni(2, 1, [0.4, 1.3, 2.2], w), sp.hyp2f1(0.4, 1.3, 2.2, w),
                               rtol=1e-11)


def test_univariate_errors():
    with pytest.raises(NotConverged):
        hyperg_uni(2, 1, [1, 1, 2], 1.0)
    with pytest.raises(PochhammerZero):
        hyperg_uni(1, 1, [1.0, -2.0], 0.3)
    with pytest.raises(ValueError):
        hyperg_uni(1, 1, [1.0], 0.3)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_one_variable_reduces_to_classical(alpha):
    z = np.array([[0.3], [1.2], [-0.8]])
    val = hyperg_multi(SeriesSpec(alpha, (0.6,), (1.9,), tol=1e-14), z).value
    np.testing.assert_allclose(val, sp.hyp1f1(0.6, 1.9, z[:, 0]), rtol=1e-12)


def test_two_argument_at_ones_is_one_argument():
    x = np.array([0.4, 0.1])
    spec = SeriesSpec(1.5, (0.7,), (2.1,), tol=1e-14)
    two = hyperg_multi(spec, x, np.ones(2)).value
    one = hyperg_multi(spec, x).value
    assert two == pytest.approx(one, rel=1e-12)


@pytest.mark.parametrize("upper,lower", [((), (2.5,)), ((1.5,), (2.75,)), ((), ())])
def test_alpha_one_determinant(upper, lower):
    x, y = np.array([0.9, 0.3]), np.array([0.7, 0.2])
    ser = hyperg_multi(SeriesSpec(1.0, upper, lower, tol=1e-15), x, y).value
    assert ser == pytest.approx(hyperg_det_alpha1(upper, lower, x, y), rel=1e-9)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(0.05, 1.5), min_size=2, max_size=2),
       st.lists(st.floats(0.05, 1.5), min_size=2, max_size=2),
       st.sampled_from([0.5, 1.0, 2.0]))
def test_symmetric_in_x_and_y(x, y, alpha):
    spec = SeriesSpec(alpha, (), (1.8,))
    a = hyperg_multi(spec, x, y).value
    b = hyperg_multi(spec, y, x).value
    assert a == pytest.approx(b, rel=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(-1.0, 1.0), min_size=3, max_size=3), st.permutations(range(3)))
def test_permutation_invariance(x, perm):
    spec = SeriesSpec(2.0, (0.5,), (1.5,))
    a = hyperg_multi(spec, x).value
    b = hyperg_multi(spec, np.asarray(x)[list(perm)]).value
    assert a == pytest.approx(b, rel=1e-12, abs=1e-14)


def test_truncation_is_reported():
    with pytest.raises(NotConverged):
        hyperg_multi(SeriesSpec(1.0, (), (), max_degree=5), [4.0, 3.0], [4.0, 3.0])


def test_lower_parameter_zero():
    # (b)_tau with Jack parameter 1 vanishes once b - (i - 1) hits 0 for a row i
    with pytest.raises(PochhammerZero):
        hyperg_multi(SeriesSpec(1.0, (), (1.0,), max_degree=4), [0.5, 0.3], [0.2, 0.1])


def test_invalid_alpha():
    with pytest.raises(ValueError):
        SeriesSpec(0.0)
