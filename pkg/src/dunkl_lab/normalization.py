"""Gaussian integrals of root-system weights (Macdonald-Mehta type constants).

c_k = int_{R^m} exp(-|y|^2/2) prod_{alpha>0} |<alpha, y>|^{2k(alpha)} dy.

Closed forms are primary.  A Monte Carlo estimator is kept as a cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lgamma, log, pi

import numpy as np

from .bessel import weyl_matrices
from .rng import normals
from .roots import MultiplicityFunction, RootSystem


def log_b_selberg(m: int, a: float, b: float) -> float:
    """log int_{R^m} exp(-|y|^2/2) prod |y_i|^{2a} prod_{i<j} |y_i^2 - y_j^2|^{2b} dy."""
    out = m * (a + 0.5) * log(2.0) + b * m * (m - 1) * log(2.0)
    for j in range(m):
        out += lgamma(a + 0.5 + j * b) + lgamma(1 + (j + 1) * b) - lgamma(1 + b)
    return out


def log_mehta(m: int, k: float) -> float:
    """log int_{R^m} exp(-|y|^2/2) prod_{i<j} |y_i - y_j|^{2k} dy."""
    out = 0.5 * m * log(2 * pi)
    for j in range(1, m + 1):
        out += lgamma(1 + j * k) - lgamma(1 + k)
    return out


def log_ck(k: MultiplicityFunction) -> float:
    """log c_k in closed form for the families A, B, C, D."""
    rs = k.rs
    m = rs.dim
    named = k.named()
    if rs.family == "A":
        return log_mehta(m, named["k1"])
    if rs.family == "B":
        return log_b_selberg(m, named["k0"], named.get("k1", 0.0))
    if rs.family == "C":
        # <2e_i, y> = 2 y_i
        return 2 * named["k0"] * m * log(2.0) + log_b_selberg(m, named["k0"], named.get("k1", 0.0))
    if rs.family == "D":
        return log_b_selberg(m, 0.0, named["k1"])
    raise ValueError(f"no closed form for family {rs.family}")


def ck(k: MultiplicityFunction) -> float:
    return float(np.exp(log_ck(k)))


def weyl_order(rs: RootSystem) -> int:
    from math import factorial
    m = rs.dim
    if rs.family == "A":
        return factorial(m)
    if rs.family in ("B", "C", "BC"):
        return 2 ** m * factorial(m)
    if rs.family == "D":
        return 2 ** (m - 1) * factorial(m)
    return len(weyl_matrices(rs))


def ck_monte_carlo(k: MultiplicityFunction, n: int = 200_000, seed: int = 0) -> tuple[float, float]:
    """(estimate, standard error) of c_k by Gaussian sampling."""
    rs = k.rs
    Y = normals(seed, n, rs.dim, domain=11)
    vals = np.abs(Y @ rs.positive_array().T) ** (2 * k.per_positive())
    f = np.prod(vals, axis=1) * (2 * pi) ** (rs.dim / 2)
    return float(f.mean()), float(f.std(ddof=1) / np.sqrt(n))


@dataclass(frozen=True)
class NormConstants:
    ck: float
    g0: float  # int_C exp(-|y|^2/2) prod <alpha, y>^{e(alpha)} dy for the tail weight
    weyl_order: int

    @property
    def Ck(self) -> float:
        """Tail constant |W| g0 / c_k; makes the survival function tend to 1 as t -> 0."""
        return self.weyl_order * self.g0 / self.ck


def norm_constants(k: MultiplicityFunction, exponents: MultiplicityFunction | None = None) -> NormConstants:
    """c_k plus the chamber integral with weight exponents e (default e = 1 on every root)."""
    rs = k.rs
    if exponents is None:
        from .roots import multiplicity
        named = {key: 0.5 for key in k.named()}
        exponents = multiplicity(rs, **named)  # exponent 2 * 0.5 = 1
    g0 = float(np.exp(log_ck(exponents))) / weyl_order(rs)
    return NormConstants(ck(k), g0, weyl_order(rs))
