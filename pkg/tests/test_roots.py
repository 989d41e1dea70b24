import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dunkl_lab.roots import (
    FAMILIES, RootSystemError, alcove_distance, build, chamber_distance,
    multiplicity, parse_name, reflect,
)

POS_COUNT = {
    "A": lambda m: m * (m - 1) // 2,
    "B": lambda m: m * m,
    "C": lambda m: m * m,
    "D": lambda m: m * (m - 1),
    "BC": lambda m: m * m + m,
}
ORBITS = {"A": 1, "B": 2, "C": 2, "D": 1, "BC": 3}


def all_systems(max_m=5):
    for fam in FAMILIES:
        for m in range(1, max_m + 1):
            try:
                yield build(fam, m)
            except RootSystemError:
                pass


@pytest.mark.parametrize("rs", list(all_systems()), ids=lambda r: r.name)
def test_counts(rs):
    assert len(rs.positive) == POS_COUNT[rs.family](rs.m)
    assert len(rs.roots) == 2 * len(rs.positive)
    expected = ORBITS[rs.family]
    # low-rank degeneracies: B1/C1 have one root length, D2 = A1 x A1
    if rs.m == 1 and rs.family in ("B", "C"):
        expected = 1
    if rs.m == 1 and rs.family == "BC":
        expected = 2
    if rs.name == "D2":
        expected = 2
    assert len(rs.orbits) == expected


@pytest.mark.parametrize("rs", list(all_systems()), ids=lambda r: r.name)
def test_closed_under_reflections(rs):
    for a in rs.roots:
        for b in rs.roots:
            img = reflect(rs, a, b)
            assert tuple(int(round(c)) for c in img) in rs.roots


@pytest.mark.parametrize("rs", list(all_systems()), ids=lambda r: r.name)
def test_positive_are_nonnegative_over_simple(rs):
    S = rs.simple_array()
    for a in rs.positive:
        c = rs.simple_coefficients(a)
        assert np.all(c >= 0)
        assert np.allclose(c @ S, a)


def test_examples():
    b2 = build("B", 2)
    assert set(b2.positive) == {(1, 0), (0, 1), (1, -1), (1, 1)}
    assert len(b2.orbits) == 2
    assert set(build("A", 3).positive) == {(1, -1, 0), (1, 0, -1), (0, 1, -1)}
    assert build("BC", 2).highest == (2, 0)
    assert parse_name("A2") is build("A", 3)


def test_reflection_example():
    b2 = build("B", 2)
    assert np.allclose(reflect(b2, (1, -1), [3.0, 1.0]), [1.0, 3.0])
    with pytest.raises(RootSystemError):
        reflect(b2, (2, 0), [1.0, 0.0])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(list(all_systems(4))), st.data())
def test_reflection_involutive_isometry(rs, data):
    a = data.draw(st.sampled_from(sorted(rs.roots)))
    x = np.array(data.draw(st.lists(st.floats(-5, 5), min_size=rs.dim, max_size=rs.dim)))
    y = reflect(rs, a, x)
    assert np.allclose(reflect(rs, a, y), x, atol=1e-12)
    assert np.isclose(np.linalg.norm(y), np.linalg.norm(x), atol=1e-12)
    assert np.isclose(np.dot(y, a), -np.dot(x, a), atol=1e-12)


def test_chamber_and_alcove():
    b2 = build("B", 2)
    assert chamber_distance(b2, [2.0, 1.0]) > 0
    assert chamber_distance(b2, [1.0, 2.0]) < 0
    bc = build("BC", 2)
    assert alcove_distance(bc, [1.0, 0.5]) > 0
    assert alcove_distance(bc, [1.7, 0.2]) < 0  # beyond phi1 = pi/2
    with pytest.raises(RootSystemError):
        alcove_distance(b2, [0.1, 0.05])


def test_multiplicity_named():
    k = multiplicity(build("BC", 2), k0=1, k1=2, k2=1)
    assert k.of((1, 0)) == 1 and k.of((0, 2)) == 2 and k.of((1, -1)) == 1
    with pytest.raises(ValueError):
        multiplicity(build("B", 2), k0=1)
    with pytest.raises(ValueError):
        multiplicity(build("B", 2), k0=-1, k1=1)
    assert multiplicity(build("D", 2), k1=0.7).gamma() == pytest.approx(1.4)
