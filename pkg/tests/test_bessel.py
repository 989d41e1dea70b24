import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special as sp

from dunkl_lab.bessel import (
    UnsupportedFamily, d_odd_coefficient, generalized_bessel, orbit_average, weyl_matrices,
)
from dunkl_lab.roots import build, multiplicity


def rank_one(k, a, b):
    """(1/2) D_k^W(a, b) for B_1: Gamma(k + 1/2) (ab/2)^{1/2-k} I_{k-1/2}(ab)."""
    z = a * b
    return sp.gamma(k + 0.5) * (z / 2) ** (0.5 - k) * sp.iv(k - 0.5, z)


@pytest.mark.parametrize("name,k", [("A3", {"k1": 0.7}), ("B2", {"k0": 0.4, "k1": 0.9}),
                                    ("D3", {"k1": 1.2}), ("B1", {"k0": 1.5})])
def test_value_at_origin(name, k):
    fam, m = name[0], int(name[1:])
    rs = build(fam, m)
    y = np.linspace(0.3, 1.1, m)[::-1] + 0.2
    assert generalized_bessel(rs, multiplicity(rs, **k), np.zeros(m), y) == pytest.approx(1.0)


@pytest.mark.parametrize("k0", [0.25, 0.75, 2.0])
def test_b1_closed_form(k0):
    rs = build("B", 1)
    for a, b in [(0.5, 1.0), (2.0, 1.5), (3.0, 2.5)]:
        assert generalized_bessel(rs, multiplicity(rs, k0=k0), [a], [b]) == pytest.approx(
            rank_one(k0, a, b), rel=1e-10)


def test_a1_relative_coordinate():
    rs = build("A", 2)
    k1 = 0.8
    x, y = np.array([1.3, 0.2]), np.array([0.9, -0.4])
    centre = (x.sum() * y.sum()) / 2
    a, b = (x[0] - x[1]) / np.sqrt(2), (y[0] - y[1]) / np.sqrt(2)
    expect = np.exp(centre) * rank_one(k1, a, b)
    assert generalized_bessel(rs, multiplicity(rs, k1=k1), x, y) == pytest.approx(expect, rel=1e-10)


def test_k_zero_is_orbit_average():
    rs = build("B", 2)
    x, y = np.array([1.0, 0.4]), np.array([0.8, 0.3])
    direct = np.mean([np.cosh(x[0] * y[0]) * np.cosh(x[1] * y[1]),
                      np.cosh(x[0] * y[1]) * np.cosh(x[1] * y[0])])
    assert orbit_average(rs, x, y) == pytest.approx(direct, rel=1e-14)
    assert generalized_bessel(rs, multiplicity(rs, k0=0, k1=0), x, y) == pytest.approx(direct)
    assert len(weyl_matrices(rs)) == 8


@settings(max_examples=20, deadline=None)
@given(st.lists(st.floats(0.0, 1.5), min_size=3, max_size=3),
       st.lists(st.floats(0.0, 1.5), min_size=3, max_size=3),
       st.sampled_from(["A3", "B3", "D3"]))
def test_symmetric(x, y, name):
    rs = build(name[0], 3)
    k = multiplicity(rs, **({"k1": 0.6} if name[0] != "B" else {"k0": 0.3, "k1": 0.6}))
    assert generalized_bessel(rs, k, x, y) == pytest.approx(generalized_bessel(rs, k, y, x), rel=1e-10)


def test_d2_is_product_of_rank_one():
    # D_2 = A_1 x A_1 in the coordinates (x1 - x2, x1 + x2) / sqrt(2)
    rs = build("D", 2)
    k1 = 0.7
    x, y = np.array([1.1, 0.3]), np.array([0.9, -0.2])
    u = lambda v: ((v[0] - v[1]) / np.sqrt(2), (v[0] + v[1]) / np.sqrt(2))
    (a1, a2), (b1, b2) = u(x), u(y)
    expect = rank_one(k1, a1, b1) * rank_one(k1, a2, b2)
    assert generalized_bessel(rs, multiplicity(rs, k1=k1), x, y) == pytest.approx(expect, rel=1e-9)


def test_d_odd_coefficient_k0():
    assert d_odd_coefficient(3, 0.0) == 8.0


def test_unsupported():
    rs = build("B", 2)
    with pytest.raises(UnsupportedFamily):
        generalized_bessel(rs, multiplicity(rs, k0=0.5, k1=0.0), [1, 0.5], [1, 0.5])
    rs = build("C", 2)
    with pytest.raises(UnsupportedFamily):
        generalized_bessel(rs, multiplicity(rs, k0=0.5, k1=0.5), [1, 0.5], [1, 0.5])
