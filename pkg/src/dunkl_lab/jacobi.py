"""Classical and multivariate Jacobi polynomials on [0, 1]^m.

Parameters follow the eigenvalue process: weight
    prod lambda_i^r (1 - lambda_i)^s prod_{i<j} |lambda_i - lambda_j|^beta
on the ordered simplex 1 > lambda_1 > ... > lambda_m > 0, normalized to a
probability measure.  The polynomials P_tau are orthonormal for it and have
top-degree part proportional to the Jack polynomial J_tau^(2/beta).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import lgamma

import numpy as np
from scipy import special as sp

from .symmetric import Partition, as_partition, jack_values, partitions_of


def jacobi_poly(n: int, r: float, s: float, x) -> np.ndarray | float:
    """P_n^{r,s}(x) = ((r+1)_n / n!) 2F1(-n, n+r+s+1; r+1; (1-x)/2) on [-1, 1]."""
    return sp.eval_jacobi(n, r, s, x)


def jacobi_params(m: int, beta: float, p: float, q: float) -> tuple[float, float]:
    """(r, s) with beta (p - (m-1)) = 2 (r+1) and beta (q - (m-1)) = 2 (s+1)."""
    return beta * (p - (m - 1)) / 2 - 1, beta * (q - (m - 1)) / 2 - 1


def _log_h(n: int, r: float, s: float) -> float:
    """log of int_0^1 P_n(1-2l)^2 l^r (1-l)^s dl / B(r+1, s+1)."""
    log_b = lgamma(r + 1) + lgamma(s + 1) - lgamma(r + s + 2)
    if n == 0:
        return 0.0
    val = (lgamma(n + r + 1) + lgamma(n + s + 1) - np.log(2 * n + r + s + 1)
           - lgamma(n + r + s + 1) - lgamma(n + 1))
    return val - log_b


def _log_lead(n: int, r: float, s: float) -> float:
    """log |leading coefficient in l| of P_n^{r,s}(1 - 2l)."""
    return lgamma(2 * n + r + s + 1) - lgamma(n + 1) - lgamma(n + r + s + 1)


def orthonormal_q(n: int, r: float, s: float, lam) -> np.ndarray:
    """Q_n on [0, 1]: orthonormal for the Beta(r+1, s+1) law, positive leading coefficient."""
    lam = np.asarray(lam, dtype=float)
    return (-1) ** n * jacobi_poly(n, r, s, 1 - 2 * lam) * np.exp(-0.5 * _log_h(n, r, s))


def q_leading(n: int, r: float, s: float) -> float:
    return float(np.exp(_log_lead(n, r, s) - 0.5 * _log_h(n, r, s)))


def beta_density(r: float, s: float, lam) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    log_b = lgamma(r + 1) + lgamma(s + 1) - lgamma(r + s + 2)
    return np.exp(r * np.log(lam) + s * np.log1p(-lam) - log_b)


def log_selberg_ordered(m: int, r: float, s: float, beta: float) -> float:
    """log of the integral of the unnormalized weight over the ordered simplex."""
    a, b, g = r + 1, s + 1, beta / 2
    tot = 0.0
    for j in range(m):
        tot += (lgamma(a + j * g) + lgamma(b + j * g) + lgamma(1 + (j + 1) * g)
                - lgamma(a + b + (m + j - 1) * g) - lgamma(1 + g))
    return tot - lgamma(m + 1)


def vandermonde(L: np.ndarray) -> np.ndarray:
    L = np.atleast_2d(L)
    m = L.shape[1]
    out = np.ones(L.shape[0])
    for i in range(m):
        for j in range(i + 1, m):
            out = out * (L[:, i] - L[:, j])
    return out


def weight(m: int, r: float, s: float, beta: float, L) -> np.ndarray | float:
    """Normalized density W_m^{r,s,beta} on the ordered simplex (0 outside)."""
    L = np.asarray(L, dtype=float)
    single = L.ndim == 1
    L2 = np.atleast_2d(L)
    inside = np.all((L2 > 0) & (L2 < 1), axis=1) & np.all(np.diff(L2, axis=1) < 0, axis=1)
    out = np.zeros(L2.shape[0])
    Li = L2[inside]
    if Li.size:
        logw = (r * np.log(Li).sum(1) + s * np.log1p(-Li).sum(1)
                + beta * np.log(np.abs(vandermonde(Li))))
        out[inside] = np.exp(logw - log_selberg_ordered(m, r, s, beta))
    return float(out[0]) if single else out


@dataclass(frozen=True)
class SimplexRule:
    """Nodes/weights integrating f(l) prod l^r (1-l)^s |V|^beta over the ordered simplex.

    Substitution l_1 = t, l_j = t u_1 ... u_{j-1} moves the |l_i - l_{i+1}|^beta
    and endpoint singularities into Gauss-Jacobi weights.
    """

    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, values) -> float:
        return float(self.weights @ values)


def _gauss_unit(n: int, P: float, Q: float):
    """Gauss rule for t^P (1-t)^Q on [0, 1]."""
    x, w = sp.roots_jacobi(n, Q, P)
    return (1 + x) / 2, w / 2 ** (P + Q + 1)


@lru_cache(maxsize=32)
def simplex_rule(m: int, r: float, s: float, beta: float, n: int = 40) -> SimplexRule:
    A = m * r + beta * m * (m - 1) / 2 + (m - 1)
    t, wt = _gauss_unit(n, A, s)
    axes = [t]
    wts = [wt]
    for i in range(1, m):
        B = r * (m - i) + beta * (m - i) * (m - i - 1) / 2 + (m - 1 - i)
        u, wu = _gauss_unit(n, B, beta)
        axes.append(u)
        wts.append(wu)
    grids = np.meshgrid(*axes, indexing="ij")
    wgrid = np.ones_like(grids[0])
    for k, w in enumerate(wts):
        shape = [1] * m
        shape[k] = -1
        wgrid = wgrid * w.reshape(shape)
    T = grids[0].reshape(-1)
    U = [g.reshape(-1) for g in grids[1:]]
    W = wgrid.reshape(-1)
    L = np.empty((T.size, m))
    L[:, 0] = T
    prodU = np.ones_like(T)
    for j in range(1, m):
        prodU = prodU * U[j - 1]
        L[:, j] = T * prodU
    # smooth leftovers: (1 - l_j)^s for j >= 2 and non-adjacent Vandermonde factors
    extra = np.ones_like(T)
    for j in range(1, m):
        extra *= (1 - L[:, j]) ** s
    for a in range(m):
        for b in range(a + 2, m):
            extra *= (1 - np.prod(np.stack(U[a:b]), axis=0)) ** beta
    return SimplexRule(L, W * extra)


def all_partitions(max_degree: int, m: int) -> list[Partition]:
    """Partitions of length <= m ordered by degree, then reverse lexicographically."""
    out = []
    for n in range(max_degree + 1):
        out.extend(partitions_of(n, m))
    return out


def jack_feature_matrix(parts, L: np.ndarray, alpha: float) -> np.ndarray:
    """Columns J_tau^(alpha)(l) for tau in ``parts`` (which must be grouped by degree)."""
    L = np.atleast_2d(L)
    cols = np.empty((L.shape[0], len(parts)))
    by_deg: dict = {}
    for idx, tau in enumerate(parts):
        by_deg.setdefault(tau.weight, []).append((idx, tau))
    for n, items in by_deg.items():
        if n == 0:
            for idx, _ in items:
                cols[:, idx] = 1.0
            continue
        basis, V = jack_values(n, alpha, L)
        pos = {p: i for i, p in enumerate(basis)}
        for idx, tau in items:
            cols[:, idx] = V[:, pos[tau]]
    return cols


class JacobiBasis:
    """Orthonormal multivariate Jacobi polynomials up to a total degree.

    Built by Gram-Schmidt of Jack polynomials J^(2/beta) in degree order with
    inner products from ``simplex_rule``.  Practical for m <= 3, degree <= 4.
    """

    def __init__(self, m: int, r: float, s: float, beta: float, max_degree: int = 4,
                 n_nodes: int = 40):
        self.m, self.r, self.s, self.beta = m, r, s, beta
        self.alpha = 2.0 / beta
        self.parts = all_partitions(max_degree, m)
        rule = simplex_rule(m, float(r), float(s), float(beta), n_nodes)
        w = rule.weights / rule.weights.sum()  # probability weights
        F = jack_feature_matrix(self.parts, rule.nodes, self.alpha)
        G = F.T @ (w[:, None] * F)  # Gram matrix of Jacks
        # Cholesky G = R^T R: columns of F R^{-1} are orthonormal, triangular in the order
        R = np.linalg.cholesky(G).T
        self.coef = np.linalg.inv(R)  # P = F @ coef, upper triangular
        self.index = {p: i for i, p in enumerate(self.parts)}

    def values(self, L) -> np.ndarray:
        """(npts, n_parts) matrix of P_tau(l)."""
        return jack_feature_matrix(self.parts, np.atleast_2d(L), self.alpha) @ self.coef

    def __call__(self, tau, L):
        tau = as_partition(tau)
        v = self.values(L)[:, self.index[tau]]
        return float(v[0]) if np.asarray(L).ndim == 1 else v


def eigenvalue(tau, r: float, s: float, beta: float, m: int) -> float:
    """2 r_tau: eigenvalue of minus the eigenvalue-process generator on P_tau."""
    tau = as_partition(tau)
    t = tau.padded(m)
    return 2 * (sum(t[i] * (t[i] - 1 - beta * i) for i in range(m))
                  + tau.weight * (r + s + beta * (m - 1) + 2))


def determinantal_p(tau, r: float, s: float, L) -> np.ndarray | float:
    """beta = 2: det[Q_{tau_i + m - i}(l_j)] / (V(l) prod_i kappa_{m-i})."""
    L = np.asarray(L, dtype=float)
    single = L.ndim == 1
    L2 = np.atleast_2d(L)
    m = L2.shape[1]
    t = as_partition(tau).padded(m)
    ns = [t[i] + m - 1 - i for i in range(m)]
    M = np.stack([orthonormal_q(n, r, s, L2) for n in ns], axis=1)  # (npts, i, j)
    V = vandermonde(L2)
    if np.any(V == 0):
        raise ValueError("coincident coordinates: determinantal formula undefined")
    norm = np.prod([q_leading(m - 1 - i, r, s) for i in range(m)])
    out = np.linalg.det(M) / (V * norm)
    return float(out[0]) if single else out


def multivariate_jacobi(tau, r: float, s: float, beta: float, L, max_degree: int | None = None):
    """Orthonormal P_tau^{r,s,beta}(l)."""
    tau = as_partition(tau)
    if beta == 2:
        return determinantal_p(tau, r, s, L)
    basis = _basis(np.asarray(L).shape[-1], float(r), float(s), float(beta),
                   max_degree or max(tau.weight, 1))
    return basis(tau, L)


@lru_cache(maxsize=16)
def _basis(m, r, s, beta, max_degree):
    return JacobiBasis(m, r, s, beta, max_degree)
