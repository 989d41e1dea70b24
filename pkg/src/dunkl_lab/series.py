"""Hypergeometric series of one and two matrix arguments with Jack parameter alpha.

With C_tau the zonal-type normalization (sum over |tau| = n of C_tau = p_1^n),

    pFq(a; b; x, y) = sum_tau (a)_tau / (b)_tau  C_tau(x) C_tau(y) / (C_tau(1) |tau|!)
    pFq(a; b; x)    = sum_tau (a)_tau / (b)_tau  C_tau(x) / |tau|!

so that one variable gives back the classical series.  Internally
C_tau = alpha^n n! J_tau / j_tau, with j_tau the product of upper and lower hooks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import lgamma
from typing import Sequence

import numpy as np
from scipy import special as sp

from .symmetric import (
    DEFAULT_DEGREE, gen_pochhammer, jack_at_ones, jack_values, upper_lower_hooks,
)


class NotConverged(ArithmeticError):
    """Series tail still above tolerance at the maximal degree."""


class PochhammerZero(ZeroDivisionError):
    """A lower parameter hits a zero of the generalized Pochhammer symbol."""


@dataclass(frozen=True)
class SeriesSpec:
    alpha: float
    upper: Sequence[float] = ()
    lower: Sequence[float] = ()
    max_degree: int = DEFAULT_DEGREE
    tol: float = 1e-10
    stable_shells: int = 3

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("Jack parameter must be positive")
        object.__setattr__(self, "upper", tuple(float(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(float(b) for b in self.lower))


@dataclass
class SeriesResult:
    value: np.ndarray | float
    remainder: np.ndarray | float  # magnitude of the last summed shell
    degree: int  # last degree summed


def _coef(spec: SeriesSpec, tau) -> float:
    k1 = 1.0 / spec.alpha
    num = 1.0
    for a in spec.upper:
        num *= gen_pochhammer(a, tau, k1)
    if num == 0.0:
        return 0.0
    den = 1.0
    for b in spec.lower:
        d = gen_pochhammer(b, tau, k1)
        if d == 0.0:
            raise PochhammerZero(f"lower parameter {b} vanishes at partition {tau.parts}")
        den *= d
    return num / den * spec.alpha ** tau.weight / upper_lower_hooks(tau, spec.alpha)


def hyperg_multi(spec: SeriesSpec, x, y=None) -> SeriesResult:
    """Sum the series by total-degree shells.

    ``x`` (and ``y``) may be a single point of shape (m,) or a stack (npts, m).
    Stops once ``stable_shells`` consecutive shells are below tol * |sum| at
    every point; raises NotConverged otherwise.
    """
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    X = np.atleast_2d(x)
    npts, m = X.shape
    Y = None
    if y is not None:
        Y = np.atleast_2d(np.asarray(y, dtype=float))
        if Y.shape[1] != m:
            raise ValueError("x and y must have the same dimension")
        if Y.shape[0] != npts:
            Y = np.broadcast_to(Y, X.shape)
    total = np.ones(npts)
    quiet = 0
    last = np.zeros(npts)
    n = 0
    for n in range(1, spec.max_degree + 1):
        with np.errstate(over="ignore", invalid="ignore"):  # overflow is reported below
            basis, JX = jack_values(n, spec.alpha, X)
            coefs = np.array([_coef(spec, tau) for tau in basis])
            if Y is not None:
                _, JY = jack_values(n, spec.alpha, Y)
                ones = np.array([jack_at_ones(tau, spec.alpha, m) for tau in basis])
                shell = (JX * JY) @ (coefs / ones)
            else:
                shell = JX @ coefs
            total = total + shell
        last = np.abs(shell)
        if not np.all(np.isfinite(total)):
            raise NotConverged(f"series overflowed at degree {n}")
        if np.all(last <= spec.tol * np.abs(total)):
            quiet += 1
            if quiet >= spec.stable_shells:
                break
        else:
            quiet = 0
    else:
        raise NotConverged(
            f"shell {spec.max_degree} still {float(np.max(last / np.maximum(np.abs(total), 1e-300))):.3g} "
            f"relative to the sum")
    if single:
        return SeriesResult(float(total[0]), float(last[0]), n)
    return SeriesResult(total, last, n)


def hyperg_uni(p: int, q: int, params: Sequence[float], z, tol: float = 1e-16,
               max_terms: int = 2000) -> np.ndarray | float:
    """Classical pFq(a_1..a_p; b_1..b_q; z) by direct summation."""
    params = [float(v) for v in params]
    if len(params) != p + q:
        raise ValueError(f"expected {p + q} parameters, got {len(params)}")
    a, b = params[:p], params[p:]
    if p == 2 and q == 1 and np.any(np.abs(np.asarray(z)) >= 1):
        raise NotConverged("2F1 series requires |z| < 1")
    for bj in b:
        if bj <= 0 and float(bj).is_integer():
            raise PochhammerZero(f"lower parameter {bj} is a nonpositive integer")
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    quiet = 0
    for n in range(max_terms):
        ratio = np.prod([ai + n for ai in a]) / np.prod([bj + n for bj in b]) / (n + 1) if b else \
            np.prod([ai + n for ai in a]) / (n + 1)
        term = term * ratio * z
        total = total + term
        if np.all(term == 0):
            break
        if np.all(np.abs(term) <= tol * np.abs(total)):
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
    else:
        raise NotConverged(f"{p}F{q} did not converge in {max_terms} terms")
    return float(total) if total.ndim == 0 else total


def hyperg_det_alpha1(upper: Sequence[float], lower: Sequence[float], x, y) -> float:
    """pFq with Jack parameter 1 via the determinant of one-variable series.

    pFq^(1)(a; b; x, y) = const * det[ K pFq(a-m+1; b-m+1; x_i y_j) ] / (V(x) V(y)),
    K = prod Gamma(a-m+1) / prod Gamma(b-m+1) and
    const = prod_{i<m} Gamma(m-i) prod_b Gamma(b-i) / prod_a Gamma(a-i)  (i = 0..m-1).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    m = x.size
    ash = [a - m + 1 for a in upper]
    bsh = [b - m + 1 for b in lower]
    logK = sum(lgamma(a) for a in ash) - sum(lgamma(b) for b in bsh)
    signK = np.prod([np.sign(sp.gamma(a)) for a in ash]) * np.prod([np.sign(sp.gamma(b)) for b in bsh])
    Z = np.outer(x, y)
    F = hyperg_uni(len(ash), len(bsh), ash + bsh, Z)
    M = signK * np.exp(logK) * F
    const = 1.0
    for i in range(m):
        const *= sp.gamma(m - i)
        for b in lower:
            const *= sp.gamma(b - i)
        for a in upper:
            const /= sp.gamma(a - i)
    vx = np.prod([x[i] - x[j] for i in range(m) for j in range(i + 1, m)])
    vy = np.prod([y[i] - y[j] for i in range(m) for j in range(i + 1, m)])
    return float(const * np.linalg.det(M) / (vx * vy))
