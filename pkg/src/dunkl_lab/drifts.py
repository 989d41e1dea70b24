"""Drift vectors shared by the generators and the SDE engine.

Every function takes a stack of points of shape (n, m) and returns (n, m).
"""
from __future__ import annotations

import numpy as np

from .roots import MultiplicityFunction


def bdot(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """A @ B for a short contraction, summed in a fixed order with elementwise operations.

    BLAS rounds differently for one row and for many (gemv versus blocked gemm
    with FMA), which would make paths depend on the batch they were run in.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if B.ndim == 1:
        out = A[..., 0] * B[0]
        for j in range(1, B.shape[0]):
            out = out + A[..., j] * B[j]
        return out
    out = A[..., 0, None] * B[0]
    for j in range(1, B.shape[0]):
        out = out + A[..., j, None] * B[j]
    return out


def radial_dunkl_drift(k: MultiplicityFunction, X: np.ndarray) -> np.ndarray:
    """sum over positive roots of k(alpha) alpha / <alpha, x>."""
    X = np.atleast_2d(X)
    P = k.rs.positive_array()
    w = k.per_positive()
    return bdot(w / bdot(X, P.T), P)


def jacobi_parameters(m: int, beta: float, p: float, q: float) -> tuple[float, float, float]:
    """(k0, k1, k2) of the angular beta-Jacobi process.

    2 k0 = beta (p - q),  k1 = beta (q - (m - 1)) - 1,  2 k2 = beta.
    """
    return beta * (p - q) / 2.0, beta * (q - (m - 1)) - 1.0, beta / 2.0


def jacobi_angle_drift(k0: float, k1: float, k2: float, Phi: np.ndarray) -> np.ndarray:
    """k0 cot(phi_i) + k1 cot(2 phi_i) + k2 sum_{j != i} [cot(phi_i + phi_j) + cot(phi_i - phi_j)]."""
    Phi = np.atleast_2d(Phi)
    out = k0 / np.tan(Phi) + k1 / np.tan(2.0 * Phi)
    m = Phi.shape[1]
    if m > 1 and k2 != 0:
        S = Phi[:, :, None] + Phi[:, None, :]
        D = Phi[:, :, None] - Phi[:, None, :]
        eye = np.eye(m, dtype=bool)
        with np.errstate(divide="ignore"):
            T = 1.0 / np.tan(S) + np.where(eye, 0.0, 1.0 / np.tan(np.where(eye, 1.0, D)))
        T[:, eye] = 0.0
        out = out + k2 * T.sum(axis=2)
    return out


def laguerre_drift(beta: float, delta: float, L: np.ndarray) -> np.ndarray:
    """beta [delta + sum_{j != i} (l_i + l_j) / (l_i - l_j)] in eigenvalue coordinates."""
    L = np.atleast_2d(L)
    m = L.shape[1]
    out = np.full(L.shape, beta * delta)
    if m > 1:
        eye = np.eye(m, dtype=bool)
        num = L[:, :, None] + L[:, None, :]
        den = np.where(eye, 1.0, L[:, :, None] - L[:, None, :])
        out = out + beta * np.where(eye, 0.0, num / den).sum(axis=2)
    return out


def jacobi_lambda_drift(beta: float, p: float, q: float, L: np.ndarray) -> np.ndarray:
    """beta [p - (p+q) l_i + sum_{j != i} (l_i (1 - l_j) + l_j (1 - l_i)) / (l_i - l_j)]."""
    L = np.atleast_2d(L)
    m = L.shape[1]
    out = beta * (p - (p + q) * L)
    if m > 1:
        eye = np.eye(m, dtype=bool)
        Li, Lj = L[:, :, None], L[:, None, :]
        num = Li * (1 - Lj) + Lj * (1 - Li)
        den = np.where(eye, 1.0, Li - Lj)
        out = out + beta * np.where(eye, 0.0, num / den).sum(axis=2)
    return out
