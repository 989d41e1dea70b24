"""Comparison couplings and the Laguerre square-root map, checked by simulation.

For a simple root a0 the reflection s_a0 permutes the other positive roots, so
pairing alpha with s_a0 alpha shows <a0, drift(x)> <= k(a0) |a0|^2 / <a0, x>.  Hence
V = <a0, X> / |a0| stays below the rank-one Bessel process R driven by the same
noise <a0, dB> / |a0|.  On the alcove the cross terms of the e_m coordinate are
negative and phi_m stays below the one-dimensional angle process with (k0, k1).
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.stats import ks_2samp

from .densities import laguerre_multiplicity
from .drifts import bdot
from .roots import build, multiplicity
from .rng import standard_normal
from .sde import (
    COLLAPSE_FACTOR, ProcessKind, ProcessSpec, _Engine, drift, simulate_paths, walls,
)

DOM_COUPLE_SPLIT = 4


@dataclass(frozen=True)
class CouplingReport:
    root: str
    n_paths: int
    dt: float
    samples: int  # (path, grid time) pairs compared while both processes were alive
    violations: int  # samples with V > R + tol
    fraction: float
    max_excess: float
    tol: float
    ended_fraction: float  # pairs stopped by a hit of either process before T
    collapsed: int

    @property
    def ok(self) -> bool:
        return self.fraction <= 1e-3


def dominating_spec(spec: ProcessSpec, wall: int) -> ProcessSpec:
    """One-dimensional comparison process for wall ``wall`` of ``spec``."""
    w = walls(spec)
    u0 = float(w.margins(spec.start[None, :])[0, wall])
    if spec.kind is ProcessKind.RADIAL_DUNKL:
        rs1 = build("B", 1)
        return ProcessSpec.radial(multiplicity(rs1, k0=float(w.k_eff[wall])), [u0], spec.T, spec.dt,
                                  spec.seed, bridge=False)
    if spec.kind is ProcessKind.BETA_JACOBI:
        if w.labels[wall] != f"e{spec.m}":
            raise ValueError("the Jacobi comparison is for the e_m wall")
        k0, k1, _ = spec.jacobi_k
        return ProcessSpec.jacobi_from_k(k0, k1, 0.0, [u0], spec.T, spec.dt, spec.seed, bridge=False)
    raise ValueError("coupling needs a radial Dunkl or beta-Jacobi process")


class _Pair:
    """Euler steps of (X, R) with shared noise and joint recursive halving."""

    def __init__(self, spec: ProcessSpec, rspec: ProcessSpec, wall: int):
        self.spec, self.rspec = spec, rspec
        self.w, self.wr = walls(spec), walls(rspec)
        self.n0 = self.w.normals[wall]
        self.min_h = spec.dt * COLLAPSE_FACTOR

    @staticmethod
    def _big(b, h):
        return np.sqrt(((b * h) ** 2).sum(axis=1)) > np.sqrt(h)

    def step(self, X, R, dW, h, paths, step, node=1):
        """Returns (X', R', ended, collapsed)."""
        s = self.spec
        bx, br = drift(s, X), drift(self.rspec, R)
        Xp = X + bx * h + dW
        Rp = R + br * h + bdot(dW, self.n0)[:, None]
        mx, mr = self.w.margins(Xp), self.wr.margins(Rp)
        hit = ((mx <= 0) & self.w.reachable).any(axis=1) | ((mr <= 0) & self.wr.reachable).any(axis=1)
        split = ~hit & ((mx <= 0).any(axis=1) | (mr <= 0).any(axis=1))
        # explicit Euler is only trusted while each drift moves less than sqrt(h), at both ends
        stiff = (self._big(bx, h) | self._big(br, h)) & ~hit
        inside = ~(hit | split)
        if inside.any():
            stiff[inside] |= (self._big(drift(s, Xp[inside]), h)
                              | self._big(drift(self.rspec, Rp[inside]), h))
        split |= stiff
        ended, collapsed = hit.copy(), np.zeros(hit.size, dtype=bool)
        Xp[hit], Rp[hit] = X[hit], R[hit]
        if split.any():
            idx = np.flatnonzero(split)
            if h / 2 < self.min_h:
                Xp[idx], Rp[idx] = X[idx], R[idx]
                ended[idx] = collapsed[idx] = True
                return Xp, Rp, ended, collapsed
            m = s.m
            Z = standard_normal(s.seed, DOM_COUPLE_SPLIT, paths[idx][:, None], step,
                                node * m + np.arange(m)[None, :])
            dW1 = dW[idx] / 2 + np.sqrt(h / 4) * Z
            X1, R1, e1, c1 = self.step(X[idx], R[idx], dW1, h / 2, paths[idx], step, 2 * node)
            go = ~e1
            X2, R2, e2, c2 = X1.copy(), R1.copy(), e1.copy(), c1.copy()
            if go.any():
                a, b, e, c = self.step(X1[go], R1[go], (dW[idx] - dW1)[go], h / 2, paths[idx][go],
                                       step, 2 * node + 1)
                X2[go], R2[go], e2[go], c2[go] = a, b, e, c
            Xp[idx], Rp[idx], ended[idx], collapsed[idx] = X2, R2, e2, c2
        return Xp, Rp, ended, collapsed


def coupling_check(spec: ProcessSpec, root=None, n_paths: int = 2000, tol: float = 0.0) -> CouplingReport:
    """Fraction of (path, grid time) samples with <a0, X>/|a0| > R + tol.

    ``root`` is a simple root (tuple) for radial processes, or None for the first
    simple root; beta-Jacobi processes always use the e_m wall.
    """
    w = walls(spec)
    if spec.kind is ProcessKind.RADIAL_DUNKL:
        simple = [tuple(int(c) for c in a) for a in spec.k.rs.simple_array()]
        root = simple[0] if root is None else tuple(int(c) for c in root)
        if root not in simple:
            raise ValueError(f"{root} is not a simple root")
        wall = simple.index(root)
    elif spec.kind is ProcessKind.BETA_JACOBI:
        wall = w.labels.index(f"e{spec.m}")
    else:
        raise ValueError("coupling needs a radial Dunkl or beta-Jacobi process")
    rspec = dominating_spec(spec, wall)
    pair, eng = _Pair(spec, rspec, wall), _Engine(spec)
    paths = np.arange(n_paths)
    X = np.tile(spec.start, (n_paths, 1))
    R = np.tile(rspec.start, (n_paths, 1))
    alive = np.ones(n_paths, dtype=bool)
    collapsed = np.zeros(n_paths, dtype=bool)
    samples = violations = 0
    max_excess = 0.0
    for step in range(spec.n_steps):
        idx = np.flatnonzero(alive)
        if idx.size == 0:
            break
        dW = eng.increments(paths[idx], step)
        Xn, Rn, ended, col = pair.step(X[idx], R[idx], dW, spec.dt, paths[idx], step)
        X[idx], R[idx] = Xn, Rn
        alive[idx[ended]] = False
        collapsed[idx[col]] = True
        live = ~ended
        if live.any():
            excess = w.margins(Xn[live])[:, wall] - Rn[live, 0]
            samples += int(live.sum())
            violations += int((excess > tol).sum())
            max_excess = max(max_excess, float(excess.max()))
    return CouplingReport(w.labels[wall], n_paths, spec.dt, samples, violations,
                          violations / max(samples, 1), max_excess, tol,
                          float(1 - alive.mean()), int(collapsed.sum()))


@dataclass(frozen=True)
class LaguerreReport:
    m: int
    beta: float
    delta: float
    n_paths: int
    pvalues: tuple  # per sorted component (largest first)
    statistics: tuple
    hit_fraction: float

    @property
    def ok(self) -> bool:
        return min(self.pvalues) > 1e-3


def laguerre_consistency(m: int, beta: float, delta: float, n_paths: int = 5000, start=None,
                         T: float = 1.0, dt: float = 1e-3, seed: int = 0) -> LaguerreReport:
    """KS comparison of sqrt(lambda_T) with X_T for the mapped B_m radial process.

    ``start`` is the starting point of X (ordered x_1 > ... > x_m > 0); lambda
    starts at its square.  The two simulations use independent seeds.
    """
    k = laguerre_multiplicity(m, beta, delta)
    named = k.named()
    if named["k0"] <= 0 or (m > 1 and named["k1"] <= 0):
        raise ValueError("the map needs k0 > 0 and k1 > 0")
    x0 = np.arange(m, 0, -1, dtype=float) if start is None else np.asarray(start, dtype=float)
    lag = ProcessSpec.laguerre(beta, delta, x0 ** 2, T, dt, seed)
    rad = ProcessSpec.radial(k, x0, T, dt, seed + 1)
    el = simulate_paths(lag, n_paths)
    er = simulate_paths(rad, n_paths)
    a = np.sort(np.sqrt(np.maximum(el.final, 0.0)), axis=1)[:, ::-1]
    b = np.sort(er.final, axis=1)[:, ::-1]
    res = [ks_2samp(a[:, i], b[:, i]) for i in range(m)]
    hits = float(np.mean(np.isfinite(el.hit_time)) + np.mean(np.isfinite(er.hit_time))) / 2
    return LaguerreReport(m, beta, delta, n_paths, tuple(float(r.pvalue) for r in res),
                          tuple(float(r.statistic) for r in res), hits)


def halved(spec: ProcessSpec) -> ProcessSpec:
    return replace(spec, dt=spec.dt / 2)
