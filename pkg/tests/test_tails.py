import numpy as np
import pytest

from dunkl_lab.roots import build, multiplicity
from dunkl_lab.series import NotConverged
from dunkl_lab.tails import (
    TailCase, TailSpec, a_type_diagnostic, bessel_survival_rank1, classify, flip, series_is_exact,
    survival, tail_distribution, tail_model,
)

B2 = build("B", 2)
TIMES = np.array([0.08, 0.2, 0.5, 1.0, 2.0, 5.0])
CASES = [(0.25, 0.75), (0.75, 0.25), (0.25, 0.25)]


def test_classify():
    assert classify(multiplicity(B2, k0=0.25, k1=0.25)) is TailCase.BOTH_GE_HALF
    assert classify(multiplicity(B2, k0=0.25, k1=0.75)) is TailCase.K0_LT_HALF
    assert classify(multiplicity(B2, k0=0.75, k1=0.25)) is TailCase.K1_LT_HALF
    rs = build("A", 3)
    assert classify(multiplicity(rs, k1=0.2)) is TailCase.A_TYPE
    with pytest.raises(ValueError):
        classify(multiplicity(B2, k0=0.5, k1=0.75))


def test_tail_case_checked():
    k = multiplicity(B2, k0=0.25, k1=0.75)
    with pytest.raises(ValueError):
        TailSpec(k, [2.0, 1.0], case=TailCase.K1_LT_HALF)
    with pytest.raises(ValueError):
        TailSpec(k, [1.0, 2.0])


@pytest.mark.parametrize("k0,k1", CASES)
def test_survival_shape(k0, k1):
    S = survival(multiplicity(B2, k0=k0, k1=k1), [2.0, 1.0], TIMES)
    assert S[0] > 0.99
    assert np.all((S >= 0) & (S <= 1))
    assert np.all(np.diff(S) <= 1e-12)


@pytest.mark.parametrize("k0,k1", CASES)
def test_small_time_is_reported(k0, k1):
    # below the reach of the series or quadrature an error is raised, never a silent value
    with pytest.raises(NotConverged):
        survival(multiplicity(B2, k0=k0, k1=k1), [2.0, 1.0], [0.01])


@pytest.mark.parametrize("k0", [0.1, 0.25, 0.4])
def test_rank_one(k0):
    rs = build("B", 1)
    times = np.concatenate([[0.05], TIMES])
    S = survival(multiplicity(rs, k0=k0), [1.3], times)
    np.testing.assert_allclose(S, bessel_survival_rank1(k0, 1.3, times), rtol=1e-9, atol=1e-12)


def test_series_and_quadrature_agree_when_exact():
    k = multiplicity(B2, k0=0.25, k1=0.75)
    assert series_is_exact(k)
    a = survival(k, [2.0, 1.0], TIMES[1:], method="series")
    b = survival(k, [2.0, 1.0], TIMES[1:], method="quadrature")
    np.testing.assert_allclose(a, b, rtol=1e-6)


def test_flipped_k1_uses_quadrature():
    k = multiplicity(B2, k0=0.75, k1=0.25)
    assert not series_is_exact(k)
    assert tail_model(k).method == "quadrature"


def test_index_flipped_tail():
    kplus = multiplicity(B2, k0=0.75, k1=0.5)
    spec = TailSpec.index_flipped(kplus, [2.0, 1.0], 0.5)
    assert spec.k.named() == pytest.approx({"k0": 0.25, "k1": 0.5})
    assert flip(spec.k).named() == pytest.approx(kplus.named())
    assert tail_distribution(spec) == pytest.approx(float(survival(spec.k, [2.0, 1.0], [0.5])[0]))


def test_times_validated():
    with pytest.raises(ValueError):
        survival(multiplicity(B2, k0=0.25, k1=0.75), [2.0, 1.0], [0.0])


def test_a_type():
    rs = build("A", 3)
    k = multiplicity(rs, k1=0.25)
    x = np.array([1.0, 0.0, -1.0])
    S = survival(k, x, TIMES[1:])
    assert 0.85 < S[0] < 1 and S[-1] > 0
    assert np.all(np.diff(S) <= 1e-9)
    d = a_type_diagnostic(TailSpec(k, x, 0.5))
    assert len(d.values) == 3
    if d.converged:
        assert np.isfinite(d.extrapolant) and d.spread >= 0
