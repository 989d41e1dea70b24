"""Transition densities: radial Dunkl, beta-Laguerre, determinantal (beta = 2) and beta-Jacobi."""
from __future__ import annotations

import numpy as np

from .bessel import generalized_bessel
from .jacobi import (
    JacobiBasis, beta_density, determinantal_p, eigenvalue, orthonormal_q,
    vandermonde, weight,
)
from .normalization import log_ck, weyl_order
from .roots import MultiplicityFunction, build, multiplicity
from .series import NotConverged
from .symmetric import partitions_of

class CoincidentCoordinates(ValueError):
    pass

def _rows(a) -> tuple[np.ndarray, bool]:
    a = np.asarray(a, dtype=float)
    return np.atleast_2d(a), a.ndim == 1

def semigroup_density(k: MultiplicityFunction, t: float, x, y, **series_opts):
    """p_t^k(x, y) with respect to dy on the closed chamber."""
    rs = k.rs
    X, _ = _rows(x)
    Y, single = _rows(y)
    X = np.broadcast_to(X, Y.shape)
    gamma = k.gamma()
    m = rs.dim
    prods = Y @ rs.positive_array().T
    if np.any(prods < 0):
        raise ValueError("y outside the closed chamber")
    with np.errstate(divide="ignore"):
        logw = (2 * k.per_positive() * np.log(prods)).sum(axis=1)
    logpre = (np.log(weyl_order(rs)) - log_ck(k) - (gamma + m / 2) * np.log(t)
              - ((X ** 2).sum(1) + (Y ** 2).sum(1)) / (2 * t) + logw)
    bes = generalized_bessel(rs, k, X / np.sqrt(t), Y / np.sqrt(t), **series_opts)
    out = np.exp(logpre) * bes
    return float(out[0]) if single else out

def heat_kernel(t: float, z) -> np.ndarray:
    return np.exp(-np.asarray(z) ** 2 / (2 * t)) / np.sqrt(2 * np.pi * t)

def grabiner_density(family: str, m: int, t: float, x, y):
    """Density of the k = 1 radial process from the killed Brownian determinant.

    B: h(y)/h(x) det[N_t(y_j - x_i) - N_t(y_j + x_i)]
    D: h(y)/h(x) (det[N - N'] + det[N + N']) / 2, N' = N_t(y_j + x_i)
    with h the product of the positive roots.
    """
    family = family.upper()
    rs = build(family, m)
    x = np.asarray(x, dtype=float)
    Y, single = _rows(y)
    if len(set(np.round(x, 15))) < m or any(len(set(row)) < m for row in Y):
        raise CoincidentCoordinates("coincident coordinates")
    P = rs.positive_array()
    hx = np.prod(P @ x)
    hy = np.prod(Y @ P.T, axis=1)
    N = heat_kernel(t, Y[:, None, :] - x[None, :, None])  # [n, i, j] = N(y_j - x_i)
    Np = heat_kernel(t, Y[:, None, :] + x[None, :, None])
    if family == "B":
        det = np.linalg.det(N - Np)
    elif family == "D":
        det = 0.5 * (np.linalg.det(N - Np) + np.linalg.det(N + Np))
    else:
        raise ValueError("grabiner_density supports families B and D")
    out = hy / hx * det
    return float(out[0]) if single else out

def laguerre_multiplicity(m: int, beta: float, delta: float) -> MultiplicityFunction:
    """B_m multiplicities of the square-root map: 2 k0 = beta (delta - m + 1) - 1, k1 = beta / 2."""
    k0 = (beta * (delta - m + 1) - 1) / 2
    rs = build("B", m)
    if m == 1:
        return multiplicity(rs, k0=k0)
    return multiplicity(rs, k0=k0, k1=beta / 2)

def laguerre_semigroup_density(m: int, beta: float, delta: float, t: float, x, y, **series_opts):
    """Density of the beta-Laguerre eigenvalues: q_t(x, y) = p_t^k(sqrt x, sqrt y) / prod 2 sqrt(y_i)."""
    k = laguerre_multiplicity(m, beta, delta)
    Y, single = _rows(y)
    sx = np.sqrt(np.asarray(x, dtype=float))
    out = semigroup_density(k, t, sx, np.sqrt(Y), **series_opts) / np.prod(2 * np.sqrt(Y), axis=1)
    return float(out[0]) if single else out

# ---------------------------------------------------------------- beta-Jacobi

def _ground_energy(m: int, r: float, s: float) -> float:
    return sum(j * (j + r + s + 1) for j in range(m))

def jacobi_kernel_1d(t: float, r: float, s: float, theta, lam, tol: float = 1e-15,
                     max_terms: int = 400) -> np.ndarray:
    """sum_n exp(-2 n (n + r + s + 1) t) Q_n(theta) Q_n(lam) w(lam), broadcasting theta, lam."""
    theta = np.asarray(theta, dtype=float)
    lam = np.asarray(lam, dtype=float)
    total = np.zeros(np.broadcast(theta, lam).shape)
    quiet = 0
    for n in range(max_terms):
        term = np.exp(-2 * n * (n + r + s + 1) * t) * orthonormal_q(n, r, s, theta) * orthonormal_q(n, r, s, lam)
        total = total + term
        if n > 0 and np.all(np.abs(term) <= tol * np.maximum(np.abs(total), 1e-300)):
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
    else:
        raise NotConverged("one-dimensional Jacobi kernel did not converge")
    return total * beta_density(r, s, lam)

def jacobi_density_km(m: int, r: float, s: float, t: float, theta, lam) -> np.ndarray | float:
    """beta = 2 density by the Karlin-McGregor determinant (ordered coordinates)."""
    theta = np.asarray(theta, dtype=float)
    L, single = _rows(lam)
    K = jacobi_kernel_1d(t, r, s, theta[None, :, None], L[:, None, :])  # [n, i, j]
    vt = vandermonde(theta)[0]
    out = np.exp(2 * _ground_energy(m, r, s) * t) * vandermonde(L) / vt * np.linalg.det(K)
    return float(out[0]) if single else out

def jacobi_semigroup_density(m: int, beta: float, r: float, s: float, t: float, theta, lam,
                             tol: float = 1e-13, max_degree: int | None = None,
                             basis: JacobiBasis | None = None) -> np.ndarray | float:
    """sum over partitions of exp(-2 r_tau t) P_tau(theta) P_tau(lam) W(lam).

    beta = 2 uses the determinantal polynomials (any degree); other beta use a
    Gram-Schmidt basis, which caps the degree (default 4).
    """
    theta = np.asarray(theta, dtype=float)
    L, single = _rows(lam)
    det_path = beta == 2 and basis is None
    if max_degree is None:
        max_degree = 60 if det_path else (basis.parts[-1].weight if basis else 4)
    if not det_path and basis is None:
        basis = JacobiBasis(m, r, s, beta, max_degree)
    if not det_path:
        Pt_all = basis.values(theta)[0]
        PL_all = basis.values(L)
        index = {tau: i for i, tau in enumerate(basis.parts)}

    def shell(n):
        parts = partitions_of(n, m)
        E = np.array([eigenvalue(tau, r, s, beta, m) for tau in parts], dtype=float)
        if det_path:
            Pt = np.array([determinantal_p(tau, r, s, theta) for tau in parts])
            PL = np.stack([determinantal_p(tau, r, s, L) for tau in parts], axis=1)
        else:
            cols = [index[tau] for tau in parts]
            Pt, PL = Pt_all[cols], PL_all[:, cols]
        return (np.exp(-E * t)[None, :] * Pt[None, :] * PL).sum(axis=1), E

    total = np.zeros(L.shape[0])
    quiet = 0
    converged = False
    for n in range(max_degree + 1):
        sh, E = shell(n)
        total = total + sh
        if n > 0 and np.all(np.abs(sh) <= tol * np.maximum(np.abs(total), 1e-300)):
            quiet += 1
            if quiet >= 2:
                converged = True
                break
        else:
            quiet = 0
    if not converged:
        bound = np.exp(-E.min() * t)
        if bound > tol:
            raise NotConverged(f"degree {max_degree} shell still weighted by {bound:.2e}")
    out = total * weight(m, r, s, beta, L)
    return float(out[0]) if single else out
