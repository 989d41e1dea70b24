"""Fixed-node quadrature of exp(-|y|^2/2) F(y) over a Weyl chamber of rank <= 2.

R^m splits into the span of the simple roots (polar coordinates on the
chamber cone) and its orthogonal complement of dimension <= 1 (Gauss-Hermite).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import null_space, orth

from .roots import RootSystem


@dataclass(frozen=True)
class ChamberRule:
    nodes: np.ndarray  # (N, m)
    weights: np.ndarray  # (N,), include exp(-|y|^2/2) and the Jacobian
    line: np.ndarray | None = None  # unit W-fixed direction left unintegrated
    radius: float = np.inf  # nodes lie within this distance of the line (or origin)

    def integrate(self, values: np.ndarray) -> float:
        return float(self.weights @ values)


def _angles(a1: np.ndarray, a2: np.ndarray) -> tuple[float, float]:
    """Angular interval of {u : <a1,u> > 0, <a2,u> > 0} in the plane."""
    rays = []
    for a, b in ((a1, a2), (a2, a1)):
        d = np.array([-a[1], a[0]])
        if d @ b < 0:
            d = -d
        rays.append(np.arctan2(d[1], d[0]))
    lo, hi = sorted(rays)
    if hi - lo > np.pi:
        lo, hi = hi, lo + 2 * np.pi
    return lo, hi


def chamber_rule(rs: RootSystem, n_r: int = 80, n_theta: int = 48, n_line: int = 40,
                 radius: float | None = None, integrate_line: bool = True) -> ChamberRule:
    """Nodes and weights on the chamber.

    With ``integrate_line=False`` the W-fixed direction (present for A in R^m)
    is not integrated and is returned as ``line`` instead.
    """
    S = rs.simple_array()
    Q = orth(S.T)  # orthonormal basis of the root span, columns
    rank = Q.shape[1]
    if rank > 2:
        raise ValueError("chamber quadrature implemented for rank <= 2")
    comp = null_space(S)  # orthogonal complement
    if comp.shape[1] > 1:
        raise ValueError("complement of dimension > 1 not supported")
    R = 12.0 if radius is None else radius
    gr, wr = np.polynomial.legendre.leggauss(n_r)
    r = (gr + 1) * R / 2
    wr = wr * R / 2
    if rank == 1:
        a = S[0] @ Q[:, 0]
        u = Q[:, 0] * np.sign(a)
        pts = r[:, None] * u[None, :]
        w = wr * np.exp(-r ** 2 / 2)
    else:
        A = S @ Q  # simple roots in plane coordinates
        lo, hi = _angles(A[0], A[1])
        gt, wt = np.polynomial.legendre.leggauss(n_theta)
        th = lo + (gt + 1) * (hi - lo) / 2
        wt = wt * (hi - lo) / 2
        U = np.stack([np.cos(th), np.sin(th)], axis=1) @ Q.T  # (n_theta, m)
        pts = (r[:, None, None] * U[None, :, :]).reshape(-1, rs.dim)
        w = (wr[:, None] * r[:, None] * np.exp(-r[:, None] ** 2 / 2) * wt[None, :]).reshape(-1)
    if comp.shape[1] == 1 and not integrate_line:
        return ChamberRule(pts, w, comp[:, 0], R)
    if comp.shape[1] == 1:
        gs, ws = np.polynomial.hermite_e.hermegauss(n_line)  # weight exp(-s^2/2)
        line = comp[:, 0]
        pts = (pts[:, None, :] + gs[None, :, None] * line[None, None, :]).reshape(-1, rs.dim)
        w = (w[:, None] * ws[None, :]).reshape(-1)
    return ChamberRule(pts, w, radius=R)
