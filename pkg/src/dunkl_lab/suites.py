"""Verification suites: one check per acceptance criterion plus grouped suites for the CLI.

Every check returns a CheckResult; budgets (paths, grids) default to the full
acceptance sizes and can be lowered for smoke runs.
"""
from __future__ import annotations

import functools
import inspect
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

from .bessel import BesselIntegral, generalized_bessel
from .coupling import coupling_check, laguerre_consistency
from .densities import grabiner_density, jacobi_density_km, jacobi_semigroup_density, semigroup_density
from .jacobi import eigenvalue, weight
from .operators import OperatorKind, OperatorSpec, apply_laplacian, apply_operator
from .oracles import jack_gram_schmidt
from .quadrature import chamber_rule
from .roots import FAMILIES, RootSystemError, build, multiplicity, positive_products
from .sde import ProcessSpec, halving_pair, hitting_time_mc, simulate_paths
from .series import SeriesSpec, hyperg_multi, hyperg_uni
from .symmetric import Partition, jack_matrix
from .tails import survival

POS_COUNT = {
    "A": lambda m: m * (m - 1) // 2,
    "B": lambda m: m * m,
    "C": lambda m: m * m,
    "D": lambda m: m * (m - 1),
    "BC": lambda m: m * m + m,
}
ORBITS = {"A": 1, "B": 2, "C": 2, "D": 1, "BC": 3}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    metrics: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def _timed(fn):
    @functools.wraps(fn)
    def run(*a, **kw):
        t0 = time.perf_counter()
        res = fn(*a, **kw)
        res.seconds = time.perf_counter() - t0
        return res
    return run


# ---------------------------------------------------------------- 1. root systems


def expected_orbits(family: str, m: int) -> int:
    if m == 1 and family in ("B", "C"):
        return 1
    if m == 1 and family == "BC":
        return 2
    if family == "D" and m == 2:
        return 2
    return ORBITS[family]


@_timed
def root_axioms(max_m: int = 5) -> CheckResult:
    """Closure under reflections and positive-root / orbit counts."""
    bad = []
    n = 0
    for fam in FAMILIES:
        for m in range(1, max_m + 1):
            try:
                rs = build(fam, m)
            except RootSystemError:
                continue
            n += 1
            if len(rs.positive) != POS_COUNT[fam](m) or len(rs.orbits) != expected_orbits(fam, m):
                bad.append(f"{rs.name} counts")
            R = np.array(sorted(rs.roots), dtype=float)
            for a in R:
                img = np.rint(R - 2.0 * np.outer(R @ a / (a @ a), a)).astype(int)
                if not all(tuple(v) in rs.roots for v in img):
                    bad.append(f"{rs.name} reflection")
                    break
    return CheckResult("root-system axioms", not bad, f"{n} systems" + (f", failures {bad}" if bad else ""))


# ---------------------------------------------------------------- 2. Jack oracle


@_timed
def jack_oracle(max_weight: int = 5, max_m: int = 4, alphas=(Fraction(1, 2), Fraction(1), Fraction(2))) -> CheckResult:
    """Eigenoperator Jack coefficients equal the Gram-Schmidt oracle exactly."""
    bad = []
    count = 0
    for alpha in alphas:
        for n in range(1, max_weight + 1):
            oracle = jack_gram_schmidt(n, alpha)
            for m in range(1, max_m + 1):
                basis, C = jack_matrix(n, alpha, m)
                for tau, row in zip(basis, C):
                    ref = {mu: c for mu, c in oracle[tau.parts].items() if len(mu) <= m}
                    got = {p.parts: c for p, c in zip(basis, row) if c != 0}
                    count += 1
                    if got != ref:
                        bad.append((tau.parts, m, str(alpha)))
    return CheckResult("Jack oracle equivalence", not bad, f"{count} polynomials compared in exact arithmetic"
                       + (f", mismatches {bad[:5]}" if bad else ""))


# ---------------------------------------------------------------- 3. hypergeometric pins


@_timed
def hypergeometric_pins(n: int = 200, tol: float = 1e-12) -> CheckResult:
    z = np.geomspace(1e-3, 10, n)
    r = 2 * np.sqrt(z)
    worst = 0.0
    for b, ref in ((1.5, np.sinh(r) / r), (0.5, np.cosh(r))):
        uni = np.asarray(hyperg_uni(0, 1, [b], z))
        multi = np.array([hyperg_multi(SeriesSpec(1.0, (), (b,), max_degree=80, tol=1e-17), [v]).value
                          for v in z], dtype=float).reshape(-1)
        worst = max(worst, float(np.max(np.abs(uni / ref - 1))), float(np.max(np.abs(multi / ref - 1))))
    return CheckResult("0F1 pins", worst <= tol, f"max relative error {worst:.2e} (tol {tol:g})",
                       {"max_rel_err": worst})


# ---------------------------------------------------------------- 4. operator identity


def _grad_dot(F, y: np.ndarray, h: float) -> float:
    """y . grad F(y) by Richardson-extrapolated central differences."""
    m = y.size
    E = np.eye(m)

    def at(s):
        return (F(y + s * E) - F(y - s * E)) / (2 * s)

    return float(y @ ((4 * at(h / 2) - at(h)) / 3))


@_timed
def operator_identity(k_grid=(0.5, 0.75, 1.0), tol: float = 1e-4, seed: int = 0) -> CheckResult:
    """J_k^x F = E_1^y F for F = exp(-|y|^2/2) D_k^W(x, y) and -J_k g = (m + |R+|) g."""
    rng = np.random.default_rng(seed)
    worst_id, worst_eig = 0.0, 0.0
    for fam, m in (("A", 3), ("B", 2)):
        rs = build(fam, m)
        ones = np.ones(len(rs.positive))
        for kv in k_grid:
            k = multiplicity(rs, k1=kv) if fam == "A" else multiplicity(rs, k0=kv, k1=kv)
            op = OperatorSpec(OperatorKind.JK, k, h=1e-3)
            x = np.sort(rng.uniform(0.3, 1.2, m))[::-1] + np.arange(m)[::-1] * 0.3
            y = np.sort(rng.uniform(0.3, 1.2, m))[::-1] + np.arange(m)[::-1] * 0.3
            if fam == "A":
                x, y = x - x.mean() + 0.2, y - y.mean() - 0.1

            def Fx(X, y=y, k=k, rs=rs):
                return np.exp(-(y @ y) / 2) * generalized_bessel(rs, k, X, np.broadcast_to(y, X.shape))

            def Fy(Y, x=x, k=k, rs=rs):
                return np.exp(-(Y ** 2).sum(1) / 2) * generalized_bessel(rs, k, np.broadcast_to(x, Y.shape), Y)

            lhs = -apply_operator(op, Fx, x)
            rhs = _grad_dot(Fy, y, 1e-3)
            worst_id = max(worst_id, abs(lhs - rhs) / abs(rhs))
            rule = chamber_rule(rs, n_r=80, radius=12.0, integrate_line=fam != "A")
            g = BesselIntegral(rs, k, rule, positive_products(rs, rule.nodes, ones), max_degree=40)
            lam = apply_operator(op, g, x * 0.5) / g(x * 0.5)
            worst_eig = max(worst_eig, abs(lam / (m + len(rs.positive)) - 1))
    ok = worst_id <= tol and worst_eig <= tol
    return CheckResult("operator identity and eigenvalue m+|R+|", ok,
                       f"identity rel err {worst_id:.2e}, eigenvalue rel err {worst_eig:.2e} (tol {tol:g})",
                       {"identity": worst_id, "eigenvalue": worst_eig})


# ---------------------------------------------------------------- 5. D_m Bessel


@_timed
def d2_bessel_eigen(n_points: int = 20, tol: float = 1e-4, seed: int = 1) -> CheckResult:
    """Delta_k^x D_k^W(x, y) = |y|^2 D_k^W(x, y) for D_2."""
    rs = build("D", 2)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_points):
        k = multiplicity(rs, k1=float(rng.uniform(0.3, 1.5)))
        op = OperatorSpec(OperatorKind.DUNKL_LAPLACIAN_WINV, k, h=1e-3)
        x2 = rng.uniform(-0.7, 0.7)
        x = np.array([abs(x2) + rng.uniform(0.3, 1.2), x2])  # D_2 chamber: x1 > |x2|
        y = np.array([rng.uniform(0.8, 1.6), rng.uniform(-0.5, 0.5)])

        def f(X, y=y, k=k):
            return generalized_bessel(rs, k, X, np.broadcast_to(y, X.shape))

        lhs = apply_operator(op, f, x)
        rhs = (y @ y) * f(x[None, :])[0]
        worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return CheckResult("D_2 Bessel eigen-equation", worst <= tol, f"max rel err {worst:.2e} over {n_points} points",
                       {"max_rel_err": worst})


# ---------------------------------------------------------------- 6. hitting times

HITTING_CASES = ((0.25, 0.75), (0.75, 0.25), (0.25, 0.25))
HITTING_TIMES = (0.2, 0.4, 0.6, 0.8, 1.0)


def hitting_case(k0: float, k1: float, x=(2.0, 1.0), n_paths: int = 100_000, dt: float = 4e-3,
                 seed: int = 7, times=HITTING_TIMES, threads: int = 1, halving: bool = True) -> dict:
    rs = build("B", 2)
    k = multiplicity(rs, k0=k0, k1=k1)
    times = np.asarray(times, dtype=float)
    analytic = survival(k, x, times)
    spec = ProcessSpec.radial(k, x, float(times.max()), dt, seed)
    coarse, fine = halving_pair(spec)
    cc = hitting_time_mc(coarse, n_paths, times, threads)
    out = {"k": (k0, k1), "times": times, "analytic": analytic, "coarse": cc,
           "z": (cc.survival - analytic) / cc.se}
    if halving:
        cf = hitting_time_mc(fine, n_paths, times, threads)
        out["fine"] = cf
        out["halving"] = (cf.survival - cc.survival) / cc.se
    return out


@_timed
def hitting_cross_validation(n_paths: int = 100_000, dt: float = 4e-3, seed: int = 7, threads: int = 1,
                             cases=HITTING_CASES) -> CheckResult:
    parts, ok = [], True
    metrics = {}
    for k0, k1 in cases:
        r = hitting_case(k0, k1, n_paths=n_paths, dt=dt, seed=seed, threads=threads)
        zmax, hmax = float(np.max(np.abs(r["z"]))), float(np.max(np.abs(r["halving"])))
        ok &= zmax <= 3 and hmax < 1
        metrics[(k0, k1)] = (zmax, hmax)
        parts.append(f"({k0},{k1}) max|z|={zmax:.2f} halving={hmax:.2f}SE")
    return CheckResult("hitting-time cross-validation", ok, "; ".join(parts), metrics)


# ---------------------------------------------------------------- 7. dichotomy


@_timed
def dichotomy(n_paths: int = 10_000, dt: float = 1e-3, seed: int = 3, threads: int = 1) -> CheckResult:
    no_hit = []
    for rs, kw, x in ((build("B", 2), dict(k0=0.5, k1=0.75), (2.0, 1.0)),
                      (build("A", 3), dict(k1=0.5), (1.0, 0.0, -1.0))):
        ens = simulate_paths(ProcessSpec.radial(multiplicity(rs, **kw), x, 1.0, dt, seed), n_paths, threads=threads)
        no_hit.append(int(np.isfinite(ens.hit_time).sum()))
    frac = []
    for rs, kw, x in ((build("B", 2), dict(k0=0.25, k1=0.75), (2.0, 1.0)),
                      (build("A", 3), dict(k1=0.25), (1.0, 0.0, -1.0))):
        ens = simulate_paths(ProcessSpec.radial(multiplicity(rs, **kw), x, 1.0, dt, seed), n_paths, threads=threads)
        ht = ens.hit_time
        frac.append([float(np.mean(ht <= T + 1e-12)) for T in (0.25, 0.5, 1.0)])
    inc = all(f[0] > 0 and f[0] < f[1] < f[2] for f in frac)
    ok = sum(no_hit) == 0 and inc
    return CheckResult("hitting dichotomy", ok,
                       f"hits with k>=1/2: {no_hit}; hit fractions at T=0.25,0.5,1 with k=0.25: "
                       + ", ".join(str(np.round(f, 4).tolist()) for f in frac),
                       {"no_hit": no_hit, "fractions": frac})


# ---------------------------------------------------------------- 8. coupling


@_timed
def coupling_dominance(n_paths: int = 2000, dt: float = 1e-4, T: float = 0.5, seed: int = 1) -> CheckResult:
    rs = build("B", 2)
    cases = [
        ("B2 e1-e2", ProcessSpec.radial(multiplicity(rs, k0=0.3, k1=0.3), (2.0, 1.0), T, dt, seed), (1, -1)),
        ("B1 e1", ProcessSpec.radial(multiplicity(build("B", 1), k0=0.3), (1.0,), T, dt, seed), (1,)),
        ("Jacobi e2", ProcessSpec.jacobi_from_k(0.2, 0.4, 0.75, (1.0, 0.5), T, dt, seed), None),
    ]
    ok, parts, metrics = True, [], {}
    for name, spec, root in cases:
        r1 = coupling_check(spec, root, n_paths)
        r2 = coupling_check(halving_pair(spec)[1], root, n_paths)
        good = r1.fraction <= 1e-3 and r2.fraction <= r1.fraction
        if name.startswith("B1"):
            good &= r1.violations == 0 and r2.violations == 0
        ok &= good
        metrics[name] = (r1.fraction, r2.fraction)
        parts.append(f"{name} {r1.fraction:.2e} -> {r2.fraction:.2e}")
    return CheckResult("coupling dominance", ok, "; ".join(parts), metrics)


# ---------------------------------------------------------------- 9. Laguerre map

LAGUERRE_CASES = ((2, 1.0, 4.0), (2, 2.0, 2.5), (3, 2.0, 4.0))


@_timed
def laguerre_map(n_paths: int = 5000, dt: float = 2e-3, seed: int = 5) -> CheckResult:
    ok, parts, metrics = True, [], {}
    for m, beta, delta in LAGUERRE_CASES:
        r = laguerre_consistency(m, beta, delta, n_paths=n_paths, dt=dt, seed=seed)
        ok &= r.ok
        metrics[(m, beta, delta)] = r.pvalues
        parts.append(f"({m},{beta:g},{delta:g}) min p={min(r.pvalues):.3g}")
    return CheckResult("Laguerre <-> B_m map", ok, "; ".join(parts), metrics)


# ---------------------------------------------------------------- 10. determinantal


@_timed
def determinantal(n: int = 10, tol: float = 1e-6, seed: int = 2) -> CheckResult:
    rng = np.random.default_rng(seed)
    rs = build("B", 2)
    k = multiplicity(rs, k0=1.0, k1=1.0)
    worst_g = 0.0
    for _ in range(n):
        t = rng.uniform(0.3, 1.5)
        x = np.sort(rng.uniform(0.2, 2.5, 2))[::-1] + [0.2, 0.0]
        y = np.sort(rng.uniform(0.2, 2.5, 2))[::-1] + [0.2, 0.0]
        a, b = grabiner_density("B", 2, t, x, y), semigroup_density(k, t, x, y)
        worst_g = max(worst_g, abs(a / b - 1))
    worst_j = 0.0
    for _ in range(n):
        r, s = rng.uniform(-0.4, 1.5, 2)
        t = rng.uniform(0.1, 1.0)
        th = np.sort(rng.uniform(0.05, 0.95, 2))[::-1]
        lam = np.sort(rng.uniform(0.05, 0.95, 2))[::-1]
        a = jacobi_semigroup_density(2, 2.0, r, s, t, th, lam)
        b = jacobi_density_km(2, r, s, t, th, lam)
        worst_j = max(worst_j, abs(a / b - 1))
    ok = worst_g <= tol and worst_j <= tol
    return CheckResult("determinantal equivalences", ok,
                       f"Grabiner vs series {worst_g:.2e}, Jacobi series vs Karlin-McGregor {worst_j:.2e}",
                       {"grabiner": worst_g, "jacobi": worst_j})


# ---------------------------------------------------------------- 11. Jacobi density


def random_partition(rng, m: int, max_part: int = 8) -> Partition:
    return Partition(tuple(sorted(rng.integers(0, max_part + 1, m).tolist(), reverse=True)))


@_timed
def jacobi_density_properties(n_mc: int = 200_000, n_partitions: int = 100, seed: int = 4) -> CheckResult:
    m, beta, r, s, t = 2, 2.0, 0.5, 0.5, 0.5
    theta = np.array([0.7, 0.3])
    rng = np.random.default_rng(seed)
    L = np.sort(rng.uniform(0, 1, (n_mc, m)), axis=1)[:, ::-1]
    vals = jacobi_semigroup_density(m, beta, r, s, t, theta, L) / factorial(m)
    est, se = float(vals.mean()), float(vals.std(ddof=1) / np.sqrt(n_mc))
    z = (est - 1) / se
    pts = np.sort(rng.uniform(0.05, 0.95, (10, m)), axis=1)[:, ::-1]
    lim = jacobi_semigroup_density(m, beta, r, s, 40.0, theta, pts)
    w = weight(m, r, s, beta, pts)
    lim_err = float(np.max(np.abs(lim / w - 1)))
    bad = 0
    for _ in range(n_partitions):
        mm = int(rng.integers(1, 7))
        tau = random_partition(rng, mm)
        rr, ss = Fraction(int(rng.integers(-4, 20)), 8), Fraction(int(rng.integers(-4, 20)), 8)
        t_ = tau.padded(mm)
        ns = [t_[i] + mm - 1 - i for i in range(mm)]
        lhs = sum(n_ * (n_ + rr + ss + 1) for n_ in ns)
        e0 = sum(j * (j + rr + ss + 1) for j in range(mm))
        if lhs != eigenvalue(tau, rr, ss, 2, mm) / 2 + e0:
            bad += 1
    ok = abs(z) <= 3 and lim_err <= 1e-10 and bad == 0
    return CheckResult("Jacobi density properties", ok,
                       f"normalization {est:.4f} +- {se:.4f} (z={z:.2f}); t->inf rel err {lim_err:.1e}; "
                       f"eigenvalue identity failures {bad}/{n_partitions}",
                       {"z": z, "limit": lim_err, "identity_failures": bad})


# ---------------------------------------------------------------- 12. BM in the alcove


def _h1(Phi: np.ndarray) -> np.ndarray:
    """prod over the positive roots of BC_m of sin <alpha, phi>."""
    P = build("BC", Phi.shape[1]).positive_array()
    return np.prod(np.sin(Phi @ P.T), axis=1)


TEST_POLYS = (
    lambda P: P[:, 0],
    lambda P: P[:, 0] ** 2 + P[:, 1],
    lambda P: P[:, 0] * P[:, 1],
    lambda P: P[:, 0] ** 3 - 2 * P[:, 1] ** 2 + P[:, 0] * P[:, 1],
    lambda P: (P ** 2).sum(axis=1) ** 2,
)


@_timed
def alcove_bm(tol: float = 1e-6) -> CheckResult:
    """Generator at (k0, k1, k2) = (1, 2, 1) equals the h_1-transform of Brownian motion."""
    worst = 0.0
    for phi in (np.array([1.1, 0.4]), np.array([0.9, 0.6]), np.array([1.2, 0.7, 0.3])):
        op = OperatorSpec(OperatorKind.ALCOVE_GEN, params={"k0": 1.0, "k1": 2.0, "k2": 1.0}, h=1e-3)
        c = 0.5 * apply_laplacian(_h1, phi, 1e-3) / _h1(phi[None, :])[0]
        for f in TEST_POLYS:
            lhs = apply_operator(op, f, phi)
            hf = lambda P, f=f: _h1(P) * f(P)
            rhs = (0.5 * apply_laplacian(hf, phi, 1e-3) - c * hf(phi[None, :])[0]) / _h1(phi[None, :])[0]
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return CheckResult("Brownian motion in the alcove", worst <= tol, f"max error {worst:.2e} (tol {tol:g})",
                       {"max_err": worst})


ACCEPTANCE = {
    1: root_axioms,
    2: jack_oracle,
    3: hypergeometric_pins,
    4: operator_identity,
    5: d2_bessel_eigen,
    6: hitting_cross_validation,
    7: dichotomy,
    8: coupling_dominance,
    9: laguerre_map,
    10: determinantal,
    11: jacobi_density_properties,
    12: alcove_bm,
}

SUITES = {
    "roots": [root_axioms],
    "symmetric": [jack_oracle],
    "series": [hypergeometric_pins],
    "operators": [operator_identity, d2_bessel_eigen, alcove_bm],
    "laws": [determinantal, jacobi_density_properties],
    "hitting": [hitting_cross_validation, dichotomy],
    "coupling": [coupling_dominance, laguerre_map],
}
SUITES["all"] = [ACCEPTANCE[i] for i in sorted(ACCEPTANCE)]


def run_suite(name: str, **budget) -> list[CheckResult]:
    """Run a named suite; ``budget`` keyword arguments go to checks that accept them."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    out = []
    for fn in SUITES[name]:
        params = inspect.signature(fn).parameters
        out.append(fn(**{k: v for k, v in budget.items() if k in params}))
    return out
