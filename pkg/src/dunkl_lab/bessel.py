"""Generalized Bessel functions (1/|W|) D_k^W(x, y) for the families A, B and D."""
from __future__ import annotations

from collections import deque
from functools import lru_cache

import numpy as np

from .roots import MultiplicityFunction, RootSystem, reflect
from .series import SeriesSpec, hyperg_multi


class UnsupportedFamily(ValueError):
    pass


@lru_cache(maxsize=None)
def weyl_matrices(rs: RootSystem) -> np.ndarray:
    """All Weyl group elements as matrices (only for small rank)."""
    S = [np.eye(rs.dim) - 2.0 * np.outer(a, a) / np.dot(a, a) for a in rs.simple_array()]
    seen = {np.eye(rs.dim).round(8).tobytes(): np.eye(rs.dim)}
    queue = deque([np.eye(rs.dim)])
    while queue:
        g = queue.popleft()
        for s in S:
            h = s @ g
            key = h.round(8).tobytes()
            if key not in seen:
                seen[key] = h
                queue.append(h)
    return np.array(list(seen.values()))


def orbit_average(rs: RootSystem, x, y) -> np.ndarray | float:
    """(1/|W|) sum_w exp(<w x, y>): the k = 0 generalized Bessel function."""
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    X, Y = np.atleast_2d(x), np.atleast_2d(np.asarray(y, dtype=float))
    G = weyl_matrices(rs)
    vals = np.exp(np.einsum("gij,nj,ni->ng", G, X, np.broadcast_to(Y, X.shape))).mean(axis=1)
    return float(vals[0]) if single else vals


def d_odd_coefficient(m: int, k1: float) -> float:
    """Weight of prod(x_i y_i / 2) 0F1(q + 1/2) in the D_m Bessel function.

    Fixed by applying T_1 ... T_m to both sides at x = 0: the Dunkl operators
    give T_1 ... T_m (x_1 ... x_m) = prod_{j<m} (1 + 2 k1 j).
    """
    return 2.0 ** m / np.prod([1.0 + 2.0 * k1 * j for j in range(m)])


def generalized_bessel(rs: RootSystem, k: MultiplicityFunction, x, y,
                       tol: float = 1e-12, max_degree: int | None = None) -> np.ndarray | float:
    """(1/|W|) D_k^W(x, y) through the family's hypergeometric series.

    ``x`` and ``y`` are points of R^m or stacks of points of equal length.
    """
    if k.rs is not rs:
        raise ValueError("multiplicity function belongs to another root system")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    m = rs.dim
    named = k.named()
    opts = {"tol": tol}
    if max_degree is not None:
        opts["max_degree"] = max_degree
    if rs.family == "A":
        k1 = named["k1"]
        if k1 == 0:
            return orbit_average(rs, x, y)
        return hyperg_multi(SeriesSpec(1.0 / k1, (), (), **opts), x, y).value
    if rs.family == "B":
        k0, k1 = named["k0"], named.get("k1", 0.0)
        if m > 1 and k1 == 0:
            if k0 == 0:
                return orbit_average(rs, x, y)
            raise UnsupportedFamily("B_m with k1 = 0 and k0 > 0 is a product case; not implemented")
        alpha = 1.0 / k1 if m > 1 else 1.0
        b = k0 + (m - 1) * k1 + 0.5
        return hyperg_multi(SeriesSpec(alpha, (), (b,), **opts), x ** 2 / 2, y ** 2 / 2).value
    if rs.family == "D":
        k1 = named["k1"]
        if k1 == 0:
            return orbit_average(rs, x, y)
        q = 1.0 + (m - 1) * k1
        alpha = 1.0 / k1
        f = hyperg_multi(SeriesSpec(alpha, (), (q + 0.5,), **opts), x ** 2 / 2, y ** 2 / 2).value
        g = hyperg_multi(SeriesSpec(alpha, (), (q - 0.5,), **opts), x ** 2 / 2, y ** 2 / 2).value
        d = np.prod(np.atleast_2d(x) * np.atleast_2d(y) / 2, axis=1)
        if x.ndim == 1 and y.ndim == 1:
            d = float(d[0])
        return g + d_odd_coefficient(m, k1) * d * f
    raise UnsupportedFamily(f"no generalized Bessel function for family {rs.family}")


def _series_setup(rs: RootSystem, k: MultiplicityFunction):
    """(SeriesSpec-like args, argument map) for the families with a one-series formula."""
    named = k.named()
    m = rs.dim
    if rs.family == "A" and named["k1"] > 0:
        return 1.0 / named["k1"], (), (lambda z: z)
    if rs.family == "B" and (m == 1 or named.get("k1", 0) > 0):
        k0, k1 = named["k0"], named.get("k1", 0.0)
        alpha = 1.0 / k1 if m > 1 else 1.0
        return alpha, (k0 + (m - 1) * k1 + 0.5,), (lambda z: z ** 2 / 2)
    raise UnsupportedFamily(f"no single-series Bessel formula for {rs.name} with k={named}")


class BesselIntegral:
    """x -> int_C exp(-|y|^2/2) (1/|W|) D_k^W(x, y) w(y) dy for a fixed node rule.

    The y-integral is taken term by term: each Jack polynomial in y is
    integrated once, leaving a power series in x.  If the rule leaves a
    W-fixed direction u unintegrated, it is done in closed form using
    D_k(x, y + s u) = exp(s <x, u>) D_k(x, y); the weight must not depend on s.

    The integrand is concentrated around y = x, so the rule only resolves
    |x| <= radius - REACH_MARGIN; farther points raise NotConverged.
    """

    REACH_MARGIN = 7.0

    def __init__(self, rs: RootSystem, k: MultiplicityFunction, rule, weight_values: np.ndarray,
                 tol: float = 1e-13, max_degree: int = 40):
        from .series import _coef
        from .symmetric import jack_at_ones, jack_values

        self.alpha, lower, self.arg = _series_setup(rs, k)
        self.spec = SeriesSpec(self.alpha, (), lower, max_degree=max_degree, tol=tol)
        self.m = rs.dim
        self.line = getattr(rule, "line", None)
        self.radius = float(getattr(rule, "radius", np.inf))
        Y = self.arg(rule.nodes)
        wy = rule.weights * weight_values
        self.g0 = float(wy.sum())
        self.shells = []
        for n in range(1, max_degree + 1):
            basis, JY = jack_values(n, self.alpha, Y)
            c = np.array([_coef(self.spec, t) / jack_at_ones(t, self.alpha, self.m) for t in basis])
            self.shells.append(c * (wy @ JY))
        self._values = jack_values

    def __call__(self, x) -> np.ndarray | float:
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        from .series import NotConverged
        x2 = np.atleast_2d(x)
        r = x2 - np.outer(x2 @ self.line, self.line) if self.line is not None else x2
        reach = float(np.sqrt((r ** 2).sum(axis=1)).max())
        if reach > self.radius - self.REACH_MARGIN:
            raise NotConverged(f"|x| = {reach:.3g} beyond the reach {self.radius - self.REACH_MARGIN:.3g} "
                               f"of the quadrature rule")
        X = self.arg(x2)
        total = np.full(X.shape[0], self.g0)
        quiet = 0
        for n, vec in enumerate(self.shells, start=1):
            _, JX = self._values(n, self.alpha, X)
            shell = JX @ vec
            total = total + shell
            if np.all(np.abs(shell) <= self.spec.tol * np.abs(total)):
                quiet += 1
                if quiet >= self.spec.stable_shells:
                    break
            else:
                quiet = 0
        else:
            raise NotConverged("weighted Bessel integral series did not converge")
        if self.line is not None:
            s = np.atleast_2d(x) @ self.line
            total = total * np.sqrt(2 * np.pi) * np.exp(s ** 2 / 2)
        return float(total[0]) if single else total
