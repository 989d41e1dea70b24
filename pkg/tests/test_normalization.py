import numpy as np
import pytest
from scipy import integrate, special as sp

from dunkl_lab.normalization import ck, ck_monte_carlo, norm_constants, weyl_order
from dunkl_lab.roots import build, multiplicity


@pytest.mark.parametrize("k0", [0.0, 0.25, 1.0, 2.5])
def test_rank_one(k0):
    rs = build("B", 1)
    quad, _ = integrate.quad(lambda y: np.exp(-y * y / 2) * abs(y) ** (2 * k0), -np.inf, np.inf)
    closed = 2 ** (k0 + 0.5) * sp.gamma(k0 + 0.5)
    assert ck(multiplicity(rs, k0=k0)) == pytest.approx(closed, rel=1e-12)
    assert closed == pytest.approx(quad, rel=1e-8)


@pytest.mark.parametrize("name", ["A3", "B2", "D3", "C2"])
def test_zero_multiplicity(name):
    rs = build(name[0], int(name[1:]))
    zero = {key: 0.0 for key in multiplicity(rs, **{"k1": 1.0} if name[0] in "AD" else
                                             {"k0": 1.0, "k1": 1.0}).named()}
    assert ck(multiplicity(rs, **zero)) == pytest.approx((2 * np.pi) ** (rs.dim / 2), rel=1e-12)


@pytest.mark.parametrize("name,k", [("B2", {"k0": 1.0, "k1": 1.0}), ("A3", {"k1": 0.5}),
                                    ("D3", {"k1": 0.75}), ("C2", {"k0": 0.5, "k1": 0.25})])
def test_monte_carlo_agrees(name, k):
    rs = build(name[0], int(name[1:]))
    kk = multiplicity(rs, **k)
    est, se = ck_monte_carlo(kk, 200_000, seed=3)
    assert abs(est - ck(kk)) <= 4 * se


def test_monte_carlo_seed_stability():
    rs = build("B", 2)
    k = multiplicity(rs, k0=1.0, k1=1.0)
    (a, sa), (b, sb) = ck_monte_carlo(k, 100_000, 1), ck_monte_carlo(k, 100_000, 2)
    assert abs(a - b) <= 3 * np.hypot(sa, sb)


def test_weyl_orders():
    assert [weyl_order(build(f, 3)) for f in "ABCD"] == [6, 48, 48, 24]


def test_constants_positive():
    rs = build("B", 2)
    nc = norm_constants(multiplicity(rs, k0=0.75, k1=0.5))
    assert nc.ck > 0 and nc.g0 > 0 and nc.Ck > 0
