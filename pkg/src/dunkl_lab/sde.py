"""Euler-Maruyama simulation of the radial Dunkl, beta-Laguerre and angular beta-Jacobi SDEs.

Paths are simulated as a vectorized batch.  Every random number is a pure
function of (seed, path index, step, ...) so results do not depend on batch
size or worker count.

Boundary handling.  A step is split in two with a Brownian bridge draw,
recursively, when the explicit drift displacement at either end exceeds
sqrt(h) (not applied within sqrt(h) of a reachable wall) or when the proposal
leaves the domain through a wall the process cannot reach (local
multiplicity >= 1/2).  Near such a wall its singular term K n / u is taken
drift-implicitly, u' = v + K h / u', whose positive root keeps paths inside.
Crossing a reachable wall is a hit.  On accepted steps an unseen excursion to a
reachable wall is accounted for by the ratio s of the killed Bessel transition
density to the Euler proposal density (``bridge_ratio``): the path is killed
with probability 1 - min(s, 1) and otherwise carries the weight max(s, 1).  With
u0, u1 the distances to the wall at both ends, z = u0 u1 / h and nu = k - 1/2,

    s = sqrt(2 pi z) exp(-z) I_{|nu|}(z) (u1/u0)^k exp(-k (u1 - u0)/u0 + k^2 h / (2 u0^2)),

which reduces to 1 - exp(-2z) for Brownian motion.  Survival estimates average
the weights of the surviving paths.
"""
from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.special import ive

from .drifts import bdot, jacobi_angle_drift, jacobi_parameters, laguerre_drift, radial_dunkl_drift
from .rng import hash64, standard_normal, to_unit
from .roots import MultiplicityFunction, _root_label

# stream domains of the counter-based generator
DOM_INCREMENT, DOM_SPLIT, DOM_HIT = 1, 2, 3
COLLAPSE_FACTOR = 1e-6
EPS_HIT_FACTOR = 1e-6


class StepCollapse(RuntimeError):
    """Too many paths needed substeps below dt * 1e-6."""


class ProcessKind(enum.Enum):
    RADIAL_DUNKL = "radial_dunkl"
    BETA_LAGUERRE = "beta_laguerre"
    BETA_JACOBI = "beta_jacobi"


@dataclass(frozen=True)
class ProcessSpec:
    kind: ProcessKind
    start: np.ndarray
    T: float
    dt: float
    seed: int = 0
    k: MultiplicityFunction | None = None  # radial Dunkl
    beta: float | None = None
    delta: float | None = None  # Laguerre
    p: float | None = None  # Jacobi
    q: float | None = None
    noise: bool = True  # False switches the Brownian part off (test hook)
    mirror: bool = False  # drive component i with minus the noise of component m-1-i
    crn_refine: int = 0  # increments summed from a grid of dt / 2**crn_refine
    bridge: bool = True  # Bessel bridge correction for reachable walls
    weighted: bool = False  # carry the bridge ratios as path weights instead of killing

    def __post_init__(self):
        object.__setattr__(self, "start", np.asarray(self.start, dtype=float).reshape(-1))
        if not (self.dt > 0 and self.T > 0):
            raise ValueError("T and dt must be positive")
        if self.kind is ProcessKind.RADIAL_DUNKL:
            if self.k is None:
                raise ValueError("radial Dunkl process needs a multiplicity function")
            if self.k.rs.dim != self.start.size:
                raise ValueError("start point has the wrong dimension")
        elif self.kind is ProcessKind.BETA_LAGUERRE:
            if not (self.beta and self.beta > 0 and self.delta and self.delta > 0):
                raise ValueError("beta-Laguerre needs beta > 0 and delta > 0")
        elif self.kind is ProcessKind.BETA_JACOBI:
            if not (self.beta and self.beta > 0) or self.p is None or self.q is None:
                raise ValueError("beta-Jacobi needs beta > 0 and real p, q")
        if walls(self).margins(self.start[None, :]).min() <= 0:
            raise ValueError("start point must lie strictly inside the domain")

    @property
    def m(self) -> int:
        return self.start.size

    @property
    def n_steps(self) -> int:
        return int(round(self.T / self.dt))

    @property
    def jacobi_k(self) -> tuple[float, float, float]:
        return jacobi_parameters(self.m, self.beta, self.p, self.q)

    @classmethod
    def radial(cls, k: MultiplicityFunction, start, T: float, dt: float, seed: int = 0, **kw):
        return cls(ProcessKind.RADIAL_DUNKL, start, T, dt, seed, k=k, **kw)

    @classmethod
    def laguerre(cls, beta: float, delta: float, start, T: float, dt: float, seed: int = 0, **kw):
        return cls(ProcessKind.BETA_LAGUERRE, start, T, dt, seed, beta=beta, delta=delta, **kw)

    @classmethod
    def jacobi(cls, beta: float, p: float, q: float, start, T: float, dt: float, seed: int = 0, **kw):
        return cls(ProcessKind.BETA_JACOBI, start, T, dt, seed, beta=beta, p=p, q=q, **kw)

    @classmethod
    def jacobi_from_k(cls, k0: float, k1: float, k2: float, start, T: float, dt: float,
                      seed: int = 0, **kw):
        """Angular process with prescribed (k0, k1, k2); k2 is irrelevant when m = 1."""
        m = np.asarray(start).size
        beta = 2 * k2 if k2 > 0 else 1.0
        q = (k1 + 1) / beta + m - 1
        p = q + 2 * k0 / beta
        return cls.jacobi(beta, p, q, start, T, dt, seed, **kw)


@dataclass(frozen=True)
class Walls:
    """Affine walls n . x + b = 0 with unit normals pointing into the domain."""

    normals: np.ndarray  # (W, m)
    offsets: np.ndarray  # (W,)
    k_eff: np.ndarray  # local multiplicity seen by the distance to the wall
    labels: tuple
    unit_noise: bool  # distance to each wall has unit diffusion coefficient

    def margins(self, X: np.ndarray) -> np.ndarray:
        return bdot(X, self.normals.T) + self.offsets

    @property
    def reachable(self) -> np.ndarray:
        return self.k_eff < 0.5


def _label(v: np.ndarray) -> str:
    return _root_label(tuple(int(round(c)) for c in v))


def walls(spec: ProcessSpec) -> Walls:
    m = spec.m
    if spec.kind is ProcessKind.RADIAL_DUNKL:
        S = spec.k.rs.simple_array()
        kv = np.array([spec.k.of(tuple(int(c) for c in a)) for a in S])
        return Walls(S / np.linalg.norm(S, axis=1)[:, None], np.zeros(len(S)), kv,
                     tuple(_label(a) for a in S), True)
    rows, offs, ks, labels = [], [], [], []
    for i in range(m - 1):
        v = np.zeros(m)
        v[i], v[i + 1] = 1.0, -1.0
        rows.append(v / np.sqrt(2))
        offs.append(0.0)
        labels.append(_label(v))
    v = np.zeros(m)
    v[-1] = 1.0
    rows.append(v)
    offs.append(0.0)
    labels.append(f"e{m}")
    if spec.kind is ProcessKind.BETA_LAGUERRE:
        k0 = (spec.beta * (spec.delta - m + 1) - 1) / 2
        ks = [spec.beta / 2] * (m - 1) + [k0]
        return Walls(np.array(rows), np.array(offs), np.array(ks), tuple(labels), False)
    k0, k1, k2 = spec.jacobi_k
    ks = [k2] * (m - 1) + [k0 + k1 / 2]
    v = np.zeros(m)
    v[0] = -1.0
    rows.append(v)
    offs.append(np.pi / 2)
    labels.append("affine")
    ks.append(k1 / 2)
    return Walls(np.array(rows), np.array(offs), np.array(ks), tuple(labels), True)


def drift(spec: ProcessSpec, X) -> np.ndarray:
    """Drift of the chosen SDE at a stack of interior points."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    if spec.kind is ProcessKind.RADIAL_DUNKL:
        return radial_dunkl_drift(spec.k, X)
    if spec.kind is ProcessKind.BETA_LAGUERRE:
        return laguerre_drift(spec.beta, spec.delta, X)
    return jacobi_angle_drift(*spec.jacobi_k, X)


def bessel_bridge_survival(u0, u1, h: float, k: float) -> np.ndarray:
    """sqrt(2 pi z) e^{-z} I_|nu|(z), z = u0 u1 / h: killed Bessel density over the
    Gaussian proposal with the exact drift tilt (u1/u0)^k removed.  Equals 1 - e^{-2z}
    for k = 0 and exceeds 1 slightly when |nu| < 1/2."""
    z = np.maximum(np.asarray(u0) * np.asarray(u1), 0.0) / h
    nu = abs(k - 0.5)
    with np.errstate(invalid="ignore"):
        s = np.sqrt(2 * np.pi * z) * ive(nu, z)
    return np.where(z > 0, np.nan_to_num(s, nan=1.0), 0.0)


def bridge_ratio(u0, u1, h: float, k: float, c=0.0) -> np.ndarray:
    """Killed Bessel transition density over the Euler proposal density.

    The proposal moves the wall distance by h (k/u0 + c) plus Gaussian noise, where
    c is the regular part of the drift normal to the wall.  The ratio is exact for a
    rank-one Bessel process (c = 0) at any step size.
    """
    u0 = np.asarray(u0, dtype=float)
    u1 = np.asarray(u1, dtype=float)
    pos = u1 > 0
    with np.errstate(divide="ignore", invalid="ignore"):
        log_tilt = (k * np.log(np.where(pos, u1, 1.0) / u0) - k * (u1 - u0) / u0
                    + k * k * h / (2 * u0 * u0) + k * np.asarray(c) * h / u0)
    return np.where(pos, bessel_bridge_survival(u0, u1, h, k) * np.exp(log_tilt), 0.0)


@dataclass
class _Step:
    X: np.ndarray
    hit: np.ndarray
    wall: np.ndarray
    collapsed: np.ndarray
    weight: np.ndarray


class _Engine:
    def __init__(self, spec: ProcessSpec):
        self.spec = spec
        self.w = walls(spec)
        self.eps_hit = EPS_HIT_FACTOR * np.sqrt(spec.dt)
        self.min_h = spec.dt * COLLAPSE_FACTOR

    def diffuse(self, X: np.ndarray, dW: np.ndarray) -> np.ndarray:
        if self.spec.kind is ProcessKind.BETA_LAGUERRE:
            return 2.0 * np.sqrt(X) * dW
        return dW

    def increments(self, paths: np.ndarray, step: int) -> np.ndarray:
        s, m = self.spec, self.spec.m
        if not s.noise:
            return np.zeros((paths.size, m))
        r = 2 ** s.crn_refine
        comps = np.arange(m)[None, :]
        Z = np.zeros((paths.size, m))
        for j in range(r):
            Z += standard_normal(s.seed, DOM_INCREMENT, paths[:, None], step * r + j, comps)
        dW = Z * np.sqrt(s.dt / r)
        if s.mirror:
            dW = -dW[:, ::-1]
        return dW

    def _singular(self, X) -> np.ndarray:
        """(n, W) coefficients c of the singular drift terms c n / u of each wall."""
        w = self.w
        if w.unit_noise:
            return np.broadcast_to(w.k_eff, (X.shape[0], len(w.k_eff)))
        # Laguerre: beta (l_i + l_j) / (l_i - l_j) on the collision walls, nothing on l_m = 0
        m = self.spec.m
        K = np.zeros((X.shape[0], len(w.k_eff)))
        K[:, :m - 1] = self.spec.beta * (X[:, :-1] + X[:, 1:])
        return K

    def _split_drift(self, X, h) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(explicit drift, mask of walls treated implicitly, their coefficients).

        The singular term c n / u of a non-reachable wall closer than
        max(4, 2c) sqrt(h) (so that c h / u < sqrt(h) / 2 outside) is removed from
        the explicit drift and applied implicitly.
        """
        w = self.w
        b = drift(self.spec, X)
        u = w.margins(X)
        K = self._singular(X)
        imp = (~w.reachable)[None, :] & (u < np.maximum(4.0, 2 * K) * np.sqrt(h)) & (K > 0)
        if imp.any():
            coef = np.where(imp, K / np.where(imp, u, 1.0), 0.0)
            b = b - bdot(coef, w.normals)
        return b, imp, K

    def _implicit(self, prop, imp, K, h) -> np.ndarray:
        """Solve u' = v + c h / u' along each implicit wall normal (positive root)."""
        w = self.w
        for j in np.flatnonzero(imp.any(axis=0)):
            rows = imp[:, j]
            v = bdot(prop[rows], w.normals[j]) + w.offsets[j]
            u_new = 0.5 * (v + np.sqrt(v * v + 4 * K[rows, j] * h))
            prop[rows] += (u_new - v)[:, None] * w.normals[j][None, :]
        return prop

    def _stiff(self, X, b, h) -> np.ndarray:
        """Explicit drift displacement above sqrt(h), except within sqrt(h) of a reachable wall."""
        w = self.w
        stiff = np.sqrt(((b * h) ** 2).sum(axis=1)) > np.sqrt(h)
        if w.reachable.any():
            # inside the boundary layer of a reachable wall the bridge factor takes over
            stiff &= (w.margins(X)[:, w.reachable] > np.sqrt(h)).all(axis=1)
        return stiff

    def advance(self, X, dW, h, paths, step, node=1) -> _Step:
        s, w = self.spec, self.w
        n = X.shape[0]
        b, imp, K = self._split_drift(X, h)
        prop = self._implicit(X + b * h + self.diffuse(X, dW), imp, K, h)
        marg = w.margins(prop)
        cross = marg <= 0
        reach = w.reachable[None, :]
        stiff = self._stiff(X, b, h)
        inside = ~cross.any(axis=1)
        if inside.any():
            # an endpoint where the next step would be stiff is as bad as a stiff start
            stiff[inside] |= self._stiff(prop[inside], self._split_drift(prop[inside], h)[0], h)
        hit_cross = (cross & reach).any(axis=1) & ~stiff
        cross[stiff] = True  # forces a split below
        out = _Step(prop, hit_cross.copy(), np.where(hit_cross, np.argmax(cross & reach, axis=1), -1),
                    np.zeros(n, dtype=bool), np.ones(n))
        out.X[hit_cross] = X[hit_cross]
        ok = ~cross.any(axis=1)
        if ok.any() and w.reachable.any():
            idx = np.flatnonzero(ok)
            m1 = marg[idx]
            close = (m1 < self.eps_hit) & reach
            if s.bridge and w.unit_noise and s.noise:
                m0 = w.margins(X[idx])
                W = len(w.k_eff)
                U = to_unit(hash64(s.seed, DOM_HIT, paths[idx][:, None], step, node * W + np.arange(W)[None, :]))
                surv = np.ones_like(m1)
                for j in np.flatnonzero(w.reachable):
                    surv[:, j] = bridge_ratio(m0[:, j], m1[:, j], h, w.k_eff[j])
                if s.weighted:
                    out.weight[idx] = np.prod(surv, axis=1)
                else:
                    # kill with probability 1 - min(ratio, 1); an excess above 1 becomes a path weight
                    close |= U >= surv
                    out.weight[idx] = np.prod(np.maximum(surv, 1.0), axis=1)
            bh = close.any(axis=1)
            out.hit[idx[bh]] = True
            out.wall[idx[bh]] = np.argmax(close[bh], axis=1)
        split = cross.any(axis=1) & ~hit_cross
        if split.any():
            idx = np.flatnonzero(split)
            if h / 2 < self.min_h:
                out.X[idx] = X[idx]
                # stuck next to a reachable wall: a Bessel path that close hits it
                # within the step with probability 1 - O((u^2/h)^|nu|)
                m0 = w.margins(X[idx])
                near = np.where(w.reachable[None, :], m0, np.inf)
                j = np.argmin(near, axis=1)
                is_hit = near[np.arange(idx.size), j] < np.sqrt(self.spec.dt) * 1e-3
                out.hit[idx[is_hit]] = True
                out.wall[idx[is_hit]] = j[is_hit]
                out.collapsed[idx[~is_hit]] = True
                return out
            m = s.m
            Z = standard_normal(s.seed, DOM_SPLIT, paths[idx][:, None], step,
                                node * m + np.arange(m)[None, :])
            dW1 = dW[idx] / 2 + np.sqrt(h / 4) * Z
            dW2 = dW[idx] - dW1
            a = self.advance(X[idx], dW1, h / 2, paths[idx], step, 2 * node)
            go = ~(a.hit | a.collapsed)
            X2 = a.X.copy()
            hit2, wall2, col2, wt2 = a.hit.copy(), a.wall.copy(), a.collapsed.copy(), a.weight.copy()
            if go.any():
                c2 = self.advance(a.X[go], dW2[go], h / 2, paths[idx][go], step, 2 * node + 1)
                X2[go], hit2[go], wall2[go], col2[go] = c2.X, c2.hit, c2.wall, c2.collapsed
                wt2[go] *= c2.weight
            out.X[idx], out.hit[idx], out.wall[idx], out.collapsed[idx] = X2, hit2, wall2, col2
            out.weight[idx] = wt2
        return out


@dataclass
class PathEnsemble:
    """Batch result: final states, hitting information and optional recorded states."""

    spec: ProcessSpec
    paths: np.ndarray  # path indices
    final: np.ndarray  # (n, m) state at T, or the last interior state of hit paths
    hit_time: np.ndarray  # nan when no hit before T
    hit_wall: np.ndarray  # index into walls(spec).labels, -1 when no hit
    collapsed: np.ndarray  # bool
    record_steps: np.ndarray  # step numbers of the recorded states
    recorded: np.ndarray | None  # (n, len(record_steps), m)
    weight: np.ndarray = None  # final bridge weight (1 unless a bridge ratio exceeded 1)
    weight_steps: np.ndarray = None  # steps at which weight_history is taken
    weight_history: np.ndarray = None  # (n, len(weight_steps))

    def __post_init__(self):
        if self.weight is None:
            self.weight = np.ones(self.paths.size)
        if self.weight_steps is None:
            self.weight_steps = np.zeros(0, dtype=int)
            self.weight_history = np.ones((self.paths.size, 0))

    @property
    def wall_labels(self) -> tuple:
        return walls(self.spec).labels


def _run_block(spec: ProcessSpec, paths: np.ndarray, record_steps: np.ndarray,
               weight_steps: np.ndarray) -> PathEnsemble:
    eng = _Engine(spec)
    n = paths.size
    X = np.tile(spec.start, (n, 1))
    hit_time = np.full(n, np.nan)
    hit_wall = np.full(n, -1)
    collapsed = np.zeros(n, dtype=bool)
    alive = np.ones(n, dtype=bool)
    weight = np.ones(n)
    whist = np.ones((n, weight_steps.size))
    wpos = {}
    for i, sv in enumerate(weight_steps):
        wpos.setdefault(int(sv), []).append(i)
    rec = None
    rpos = {int(sv): i for i, sv in enumerate(record_steps)}
    if record_steps.size:
        rec = np.empty((n, record_steps.size, spec.m))
        if 0 in rpos:
            rec[:, rpos[0]] = X
    for step in range(spec.n_steps):
        idx = np.flatnonzero(alive)
        if idx.size == 0:
            break
        dW = eng.increments(paths[idx], step)
        res = eng.advance(X[idx], dW, spec.dt, paths[idx], step)
        X[idx] = res.X
        weight[idx] *= res.weight
        stop = res.hit | res.collapsed
        hit_time[idx[res.hit]] = (step + 1) * spec.dt
        hit_wall[idx[res.hit]] = res.wall[res.hit]
        collapsed[idx[res.collapsed]] = True
        alive[idx[stop]] = False
        if rec is not None and (step + 1) in rpos:
            rec[:, rpos[step + 1]] = X
        for i in wpos.get(step + 1, ()):
            whist[:, i] = weight
    return PathEnsemble(spec, paths, X, hit_time, hit_wall, collapsed, record_steps, rec, weight,
                        weight_steps, whist)


def simulate_paths(spec: ProcessSpec, n_paths: int, record_steps=None, path_offset: int = 0,
                   threads: int = 1, block: int = 25_000, weight_steps=None) -> PathEnsemble:
    """Simulate paths path_offset .. path_offset + n_paths - 1 of ``spec``."""
    rs = np.asarray([] if record_steps is None else record_steps, dtype=int)
    ws = np.asarray([] if weight_steps is None else weight_steps, dtype=int)
    all_paths = np.arange(path_offset, path_offset + n_paths)
    blocks = [all_paths[i:i + block] for i in range(0, n_paths, block)]
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(threads) as ex:
            parts = list(ex.map(lambda b: _run_block(spec, b, rs, ws), blocks))
    else:
        parts = [_run_block(spec, b, rs, ws) for b in blocks]
    cat = lambda name: np.concatenate([getattr(p, name) for p in parts])
    recorded = np.concatenate([p.recorded for p in parts]) if rs.size else None
    return PathEnsemble(spec, all_paths, cat("final"), cat("hit_time"), cat("hit_wall"),
                        cat("collapsed"), rs, recorded, cat("weight"), ws, cat("weight_history"))


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # (len(times), m); truncated at the hit
    hit: tuple | None  # (wall label, hit time)
    wall_labels: tuple = field(default=(), repr=False)


def simulate(spec: ProcessSpec, path: int = 0, every: int = 1) -> Trajectory:
    """One path on the grid t = j dt (every ``every`` steps)."""
    steps = np.arange(0, spec.n_steps + 1, every)
    ens = simulate_paths(spec, 1, steps, path_offset=path)
    times = steps * spec.dt
    states = ens.recorded[0]
    hit = None
    if np.isfinite(ens.hit_time[0]):
        keep = times < ens.hit_time[0]
        times, states = times[keep], states[keep]
        hit = (ens.wall_labels[ens.hit_wall[0]], float(ens.hit_time[0]))
    if ens.collapsed[0]:
        raise StepCollapse(f"path {path} collapsed below dt * {COLLAPSE_FACTOR}")
    return Trajectory(times, states, hit, ens.wall_labels)


@dataclass(frozen=True)
class SurvivalCurve:
    times: np.ndarray
    survival: np.ndarray
    se: np.ndarray
    n_paths: int
    dt: float
    eps_hit: float
    collapse_fraction: float
    hit_times: np.ndarray = field(repr=False, default=None)


MAX_COLLAPSE_FRACTION = 1e-3


def survival_from_hits(hit_time: np.ndarray, times, dt: float, collapse_fraction: float = 0.0,
                       weight: np.ndarray | None = None) -> SurvivalCurve:
    """Survival estimate; ``weight`` is (n,) or (n, len(times)) with the bridge weight
    accumulated up to each time.  Without weights the errors are binomial."""
    times = np.asarray(times, dtype=float)
    n = hit_time.size
    ht = np.where(np.isnan(hit_time), np.inf, hit_time)
    # hits are stamped at step ends; the tolerance keeps t = j dt on the right side
    alive = ht[None, :] > times[:, None] + 1e-9 * dt
    if weight is None:
        S = alive.mean(axis=1)
        se = np.sqrt(S * (1 - S) / n)
    else:
        weight = np.asarray(weight, dtype=float)
        vals = alive * (weight[None, :] if weight.ndim == 1 else weight.T)
        S = vals.mean(axis=1)
        se = vals.std(axis=1, ddof=1) / np.sqrt(n)
    return SurvivalCurve(times, S, se, n, dt, EPS_HIT_FACTOR * np.sqrt(dt), collapse_fraction, hit_time)


def hitting_time_mc(spec: ProcessSpec, n_paths: int, times=None, threads: int = 1,
                    weighted: bool = True) -> SurvivalCurve:
    """Estimate of P(T_0 > t) on ``times`` (default: 10 points up to T).

    With ``weighted`` the bridge ratios are carried as path weights (the
    conditional survival probability given the grid path) instead of killing
    paths at random; same expectation, lower variance, and estimates at
    different dt driven by the same increments stay strongly correlated.
    """
    spec = replace(spec, weighted=weighted)
    if times is None:
        times = np.linspace(spec.T / 10, spec.T, 10)
    times = np.asarray(times, dtype=float)
    steps = np.floor(times / spec.dt + 1e-9).astype(int)
    ens = simulate_paths(spec, n_paths, threads=threads, weight_steps=steps)
    frac = float(ens.collapsed.mean())
    if frac >= MAX_COLLAPSE_FRACTION:
        raise StepCollapse(f"{frac:.2%} of paths collapsed")
    return survival_from_hits(ens.hit_time, times, spec.dt, frac, ens.weight_history)


def halving_pair(spec: ProcessSpec) -> tuple[ProcessSpec, ProcessSpec]:
    """(coarse, fine) specs sharing Brownian increments: dt with two fine normals per step, and dt/2."""
    return replace(spec, crn_refine=spec.crn_refine + 1), replace(spec, dt=spec.dt / 2)
