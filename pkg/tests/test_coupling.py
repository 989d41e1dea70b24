import numpy as np
import pytest

from dunkl_lab.coupling import coupling_check, dominating_spec, halved, laguerre_consistency
from dunkl_lab.roots import build, multiplicity
from dunkl_lab.sde import ProcessKind, ProcessSpec


def test_rank_one_is_exact():
    spec = ProcessSpec.radial(multiplicity(build("B", 1), k0=0.3), [1.0], 0.2, 1e-3, seed=1)
    r = coupling_check(spec, (1,), n_paths=300)
    assert r.violations == 0 and r.samples > 0


def test_b2_dominance():
    spec = ProcessSpec.radial(multiplicity(build("B", 2), k0=0.3, k1=0.3), [2.0, 1.0], 0.1, 1e-4, seed=1)
    r = coupling_check(spec, (1, -1), n_paths=300)
    assert r.ok and r.root == "e1-e2"
    assert halved(spec).dt == 5e-5


def test_jacobi_dominating_process():
    spec = ProcessSpec.jacobi_from_k(0.2, 0.4, 0.75, [1.0, 0.5], 0.1, 1e-4, seed=1)
    dom = dominating_spec(spec, 1)
    assert dom.kind is ProcessKind.BETA_JACOBI and dom.m == 1
    k0, k1, _ = dom.jacobi_k
    assert (k0, k1) == pytest.approx((0.2, 0.4))
    # dimensions of the angle process: d = 2 k0 + k1 + 1, d' = k1 + 1
    assert (2 * k0 + k1 + 1, k1 + 1) == pytest.approx((1.8, 1.4))
    assert coupling_check(spec, n_paths=200).ok


def test_root_must_be_simple():
    spec = ProcessSpec.radial(multiplicity(build("B", 2), k0=0.3, k1=0.3), [2.0, 1.0], 0.1, 1e-3)
    with pytest.raises(ValueError):
        coupling_check(spec, (1, 1), n_paths=10)
    with pytest.raises(ValueError):
        coupling_check(ProcessSpec.laguerre(1.0, 4.0, [4.0, 1.0], 0.1, 1e-3), n_paths=10)


def test_laguerre_rank_one():
    r = laguerre_consistency(1, 2.0, 1.5, n_paths=2000, T=0.5, dt=2e-3)
    assert r.ok


def test_laguerre_needs_positive_multiplicity():
    with pytest.raises(ValueError):
        laguerre_consistency(2, 1.0, 1.5, n_paths=10)
