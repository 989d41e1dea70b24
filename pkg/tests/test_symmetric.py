from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dunkl_lab.symmetric import (
    Partition, PartitionError, gen_pochhammer, jack, jack_at_ones, jack_eigenvalue,
    jack_eval, jack_matrix, laplace_beltrami_matrix, partitions_of,
)
from dunkl_lab.oracles import jack_at_ones_bruteforce, jack_gram_schmidt

ALPHAS = [Fraction(1, 2), Fraction(1), Fraction(2)]


def test_partitions():
    assert [p.parts for p in partitions_of(3, 2)] == [(3,), (2, 1)]
    assert [p.parts for p in partitions_of(0, 3)] == [()]
    assert len(partitions_of(6, 6)) == 11
    with pytest.raises(PartitionError):
        Partition((1, 2))


def test_pochhammer():
    c, k1 = 0.37, 0.8
    assert gen_pochhammer(c, (1,), k1) == pytest.approx(c)
    assert gen_pochhammer(c, (2, 1), k1) == pytest.approx(c * (c + 1) * (c - k1))
    assert gen_pochhammer(c, (), k1) == 1


def test_small_examples():
    a = Fraction(3, 7)
    assert jack((1,), a, 3).coefficients == {Partition((1,)): 1}
    j2 = jack((2,), a, 2)
    assert j2.coefficient((2,)) == 1 + a and j2.coefficient((1, 1)) == 2
    assert jack((1, 1), a, 2).coefficients == {Partition((1, 1)): 2}
    assert jack_eval((1,), 0.3, [1.0, 1.0]) == pytest.approx(2)
    assert jack_eval((2,), 1.0, [1.0, 1.0]) == pytest.approx(6)
    assert jack_eval((2, 1), 0.7, [0.0, 0.0, 0.0]) == 0


@pytest.mark.parametrize("alpha", ALPHAS, ids=str)
@pytest.mark.parametrize("n", range(1, 6))
def test_solver_matches_gram_schmidt(n, alpha):
    oracle = jack_gram_schmidt(n, alpha)
    for m in range(1, 5):
        basis, C = jack_matrix(n, alpha, m)
        for tau, row in zip(basis, C):
            ref = {mu: c for mu, c in oracle[tau.parts].items() if len(mu) <= m}
            got = {p.parts: c for p, c in zip(basis, row) if c != 0}
            assert got == ref, (tau, m)


@pytest.mark.parametrize("alpha", ALPHAS, ids=str)
@pytest.mark.parametrize("n", range(1, 7))
def test_eigen_equation_exact(n, alpha):
    for m in range(1, 5):
        basis, D = laplace_beltrami_matrix(n, m, alpha)
        _, C = jack_matrix(n, alpha, m)
        for tau, row in zip(basis, C):
            E = jack_eigenvalue(tau, alpha, m)
            image = [sum(D[r][c] * row[c] for c in range(len(row))) for r in range(len(row))]
            assert image == [E * v for v in row]


@pytest.mark.parametrize("alpha", ALPHAS, ids=str)
def test_normalization_and_value_at_ones(alpha):
    for n in range(1, 6):
        for m in range(1, 5):
            basis, C = jack_matrix(n, alpha, m)
            for tau, row in zip(basis, C):
                coeffs = {p.parts: c for p, c in zip(basis, row)}
                if m >= n:
                    assert coeffs[(1,) * n] == factorial(n)
                assert jack_at_ones(tau, alpha, m) == jack_at_ones_bruteforce(coeffs, m)


def test_float_matches_exact():
    for m in (2, 3):
        basis, Cq = jack_matrix(6, Fraction(2, 3), m)
        _, Cf = jack_matrix(6, 2 / 3, m)
        assert np.allclose(np.array(Cq, dtype=float), Cf, rtol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-2, 2), min_size=3, max_size=3),
       st.sampled_from(partitions_of(4, 3) + partitions_of(5, 3)),
       st.floats(0.2, 3.0), st.floats(-2, 2), st.permutations(range(3)))
def test_symmetry_and_homogeneity(x, tau, alpha, c, perm):
    x = np.array(x)
    v = jack_eval(tau, alpha, x)
    assert jack_eval(tau, alpha, x[list(perm)]) == pytest.approx(v, rel=1e-9, abs=1e-9)
    assert jack_eval(tau, alpha, c * x) == pytest.approx(c ** tau.weight * v, rel=1e-9, abs=1e-8)
