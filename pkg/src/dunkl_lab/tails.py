"""Survival function P_x(T_0 > t) of the first hitting time of the chamber walls.

A radial Dunkl process with multiplicity k hits the walls iff some k(alpha) < 1/2.
On those orbits the killed process is the h-transform of the process with
k+(alpha) = 1 - k(alpha), h(x) = prod <alpha, x>^{1 - 2k(alpha)}; elsewhere
k+ = k.  Scaling z = x / sqrt(t) gives

    P_x(T_0 > t) = C_k h(z) exp(-|z|^2/2) g(z) / g(0),
    g(z) = int_C exp(-|y|^2/2) (1/|W|) D_{k+}^W(z, y) prod <alpha, y>^{e(alpha)} dy,

with e = 1 on the flipped orbits, e = 2k elsewhere, and C_k = |W| g(0) / c_{k+}.
For B_m (and C_m) the symmetric eigenfunction argument gives the confluent series
1F1^{(1/k1+)}(a; k0+ + (m-1)k1+ + 1/2; z^2/2) with a = (m + sum_{alpha>0} e(alpha)) / (2m).
The series is exact when e = 2 k1+ on the e_i +- e_j roots (k1 not flipped, or k1 = 1/2,
or m = 1); otherwise the Jack parameter of the weight does not match 1/k1+ and the
series is only close, so g is integrated by chamber quadrature instead.  A_{m-1}
always uses quadrature; a finite-b 2F1 approximation is available as a diagnostic.
"""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field

import numpy as np

from .bessel import BesselIntegral
from .normalization import norm_constants
from .quadrature import chamber_rule
from .roots import MultiplicityFunction, RootSystem, positive_products
from .series import NotConverged, SeriesSpec, hyperg_multi
from .symmetric import MAX_DEGREE


class RangeViolation(ArithmeticError):
    """A computed probability left [0, 1] beyond rounding."""


class TailCase(enum.Enum):
    BOTH_GE_HALF = "both_ge_half"  # every orbit flipped: k+ >= 1/2 on all of them
    K0_LT_HALF = "k0_lt_half"
    K1_LT_HALF = "k1_lt_half"
    A_TYPE = "a_type"


def flip(k: MultiplicityFunction) -> MultiplicityFunction:
    """Index reversal l -> -l, i.e. k -> 1 - k on every orbit."""
    vals = {o: 1.0 - v for o, v in k.values.items()}
    if any(v < 0 for v in vals.values()):
        raise ValueError("index reversal needs k <= 1 on every orbit")
    return MultiplicityFunction(k.rs, vals)


def classify(k: MultiplicityFunction) -> TailCase:
    rs = k.rs
    named = k.named()
    low = {name for name, v in named.items() if v < 0.5}
    if not low:
        raise ValueError("all multiplicities >= 1/2: the walls are never hit")
    if rs.family == "A":
        return TailCase.A_TYPE
    if rs.family not in ("B", "C"):
        raise ValueError(f"no tail formula for family {rs.family}")
    if low == set(named):
        return TailCase.BOTH_GE_HALF
    return TailCase.K0_LT_HALF if low == {"k0"} else TailCase.K1_LT_HALF


@dataclass(frozen=True)
class TailSpec:
    """k is the multiplicity of the process whose hitting time is measured."""

    k: MultiplicityFunction
    x: np.ndarray
    t: float = 1.0
    case: TailCase | None = None

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        object.__setattr__(self, "x", x)
        if np.any(x @ self.rs.positive_array().T <= 0):
            raise ValueError("x must lie strictly inside the chamber")
        actual = classify(self.k)
        if self.case is not None and self.case != actual:
            raise ValueError(f"case {self.case.name} inconsistent with k ({actual.name})")
        object.__setattr__(self, "case", actual)
        if self.t <= 0:
            raise ValueError("t must be positive")

    @property
    def rs(self) -> RootSystem:
        return self.k.rs

    @classmethod
    def index_flipped(cls, kplus: MultiplicityFunction, x, t: float = 1.0) -> "TailSpec":
        """Tail of the index -l process for a multiplicity with all k >= 1/2."""
        return cls(flip(kplus), x, t)


@dataclass(frozen=True)
class TailModel:
    """Pieces of the survival formula shared by all (x, t)."""

    k: MultiplicityFunction
    kplus: MultiplicityFunction
    h_exp: np.ndarray  # exponent of <alpha, z> in h, per positive root
    e_exp: np.ndarray  # exponent e(alpha) of the g weight, per positive root
    Ck: float
    a: float | None  # 1F1 upper parameter (None for A)
    lower: float | None
    alpha: float
    quad: BesselIntegral | None = field(default=None, repr=False)

    @property
    def method(self) -> str:
        return "series" if self.quad is None else "quadrature"


def series_is_exact(k: MultiplicityFunction) -> bool:
    """True when the 1F1 expression equals g exactly (B_m / C_m only)."""
    named = k.named()
    k1 = named.get("k1")
    return k.rs.dim == 1 or k1 is None or k1 >= 0.5


def tail_model(k: MultiplicityFunction, max_degree: int = MAX_DEGREE, method: str = "auto") -> TailModel:
    """method: 'auto' (exact route), 'series' (always 1F1) or 'quadrature'."""
    if method not in ("auto", "series", "quadrature"):
        raise ValueError(f"unknown method {method!r}")
    rs = k.rs
    case = classify(k)
    kv = k.per_positive()
    flipped = kv < 0.5
    kp_vals = {o: (1.0 - v if v < 0.5 else v) for o, v in k.values.items()}
    kplus = MultiplicityFunction(rs, kp_vals)
    kpv = kplus.per_positive()
    h_exp = np.where(flipped, 1.0 - 2 * kv, 0.0)
    e_exp = np.where(flipped, 1.0, 2 * kpv)
    e_half = MultiplicityFunction(rs, {o: (0.5 if v < 0.5 else kp_vals[o]) for o, v in k.values.items()})
    m = rs.dim
    named = kplus.named()
    k1 = named.get("k1", 0.0)
    alpha = 1.0 / k1 if (m > 1 and k1 > 0) else 1.0
    nc = norm_constants(kplus, e_half)
    if case is TailCase.A_TYPE:
        if method == "series":
            raise ValueError("no confluent series for A_{m-1}; use quadrature")
        use_quad = True
    else:
        use_quad = method == "quadrature" or (method == "auto" and not series_is_exact(k))
        if use_quad and rs.rank > 2:
            if method == "quadrature":
                raise ValueError("chamber quadrature needs rank <= 2")
            warnings.warn("rank > 2: using the confluent series, which is approximate for this k")
            use_quad = False
    quad = None
    if use_quad:
        rule = chamber_rule(rs, n_r=140, radius=16.0, integrate_line=rs.family != "A")
        quad = BesselIntegral(rs, kplus, rule, positive_products(rs, rule.nodes, e_exp),
                              max_degree=min(max_degree, 60 if rs.family == "A" else 80))
    if case is TailCase.A_TYPE:
        return TailModel(k, kplus, h_exp, e_exp, nc.Ck, None, None, alpha, quad)
    a = (m + e_exp.sum()) / (2 * m)
    lower = named["k0"] + (m - 1) * k1 + 0.5
    return TailModel(k, kplus, h_exp, e_exp, nc.Ck, a, lower, alpha, quad)


def _g_ratio(model: TailModel, Z: np.ndarray, tol: float, max_degree: int) -> np.ndarray:
    """g(z) / g(0) at the rows of Z."""
    if model.quad is not None:
        # a W-fixed line is left to the closed form, so g(0) then carries sqrt(2 pi)
        g0 = model.quad.g0 * (np.sqrt(2 * np.pi) if model.quad.line is not None else 1.0)
        return np.atleast_1d(model.quad(Z)) / g0
    spec = SeriesSpec(model.alpha, (model.a,), (model.lower,), max_degree=max_degree, tol=tol)
    return np.atleast_1d(hyperg_multi(spec, Z ** 2 / 2).value)


def survival(k: MultiplicityFunction, x, times, tol: float = 1e-12, max_degree: int = MAX_DEGREE,
             model: TailModel | None = None, method: str = "auto") -> np.ndarray:
    """P_x(T_0 > t) for each t in ``times``."""
    model = model or tail_model(k, max_degree, method)
    rs = k.rs
    x = np.asarray(x, dtype=float)
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if np.any(times <= 0):
        raise ValueError("times must be positive")
    Z = x[None, :] / np.sqrt(times)[:, None]
    prods = Z @ rs.positive_array().T
    if np.any(prods <= 0):
        raise ValueError("x must lie strictly inside the chamber")
    log_h = (model.h_exp * np.log(prods)).sum(axis=1)
    g = _g_ratio(model, Z, tol, max_degree)
    vals = model.Ck * np.exp(log_h - (Z ** 2).sum(axis=1) / 2) * g
    if not np.all(np.isfinite(vals)):
        raise NotConverged("survival series overflowed; t is too small for double precision")
    if np.any(vals < -1e-9) or np.any(vals > 1 + 1e-9):
        raise RangeViolation(f"survival values {vals} outside [0, 1]")
    return np.clip(vals, 0.0, 1.0)


def tail_distribution(spec: TailSpec, **opts) -> float:
    return float(survival(spec.k, spec.x, [spec.t], **opts)[0])


def bessel_survival_rank1(k0: float, x: float, times) -> np.ndarray:
    """B_1 reference: P_x(T_0 > t) = P(|nu|, x^2/2t) for the Bessel process of index nu = k0 - 1/2."""
    from scipy.special import gammainc
    return gammainc(0.5 - k0, x ** 2 / (2 * np.asarray(times, dtype=float)))


# ---------------------------------------------------------------- A_{m-1} diagnostic


@dataclass(frozen=True)
class ATypeDiagnostic:
    bs: tuple
    values: tuple  # ratio 2F1(z_b) / 2F1(1/2) per b, nan if the series did not converge
    extrapolant: float
    spread: float
    converged: bool


def a_type_diagnostic(spec: TailSpec, bs=(50, 100, 200), max_degree: int = MAX_DEGREE,
                      tol: float = 1e-10) -> ATypeDiagnostic:
    """Finite-b Gauss series approximating g(z)/g(0) for A_{m-1}.

    Uses upper parameters ((m+1)/2, b), lower b/2 + k1 (m-1)/2 + (m+3)/4 and
    argument (1 - z/sqrt(b))/2, so that the limiting operator has eigenvalue
    m(m+1)/2.  Extrapolated linearly in 1/b from the two largest b.
    """
    if spec.case is not TailCase.A_TYPE:
        raise ValueError("diagnostic only applies to A_{m-1}")
    m = spec.rs.dim
    k1 = tail_model(spec.k).kplus.named()["k1"]
    z = spec.x / np.sqrt(spec.t)
    vals = []
    for b in bs:
        c = b / 2 + k1 * (m - 1) / 2 + (m + 3) / 4
        s = SeriesSpec(1.0 / k1, ((m + 1) / 2, b), (c,), max_degree=max_degree, tol=tol)
        try:
            num = hyperg_multi(s, (1 - z / np.sqrt(b)) / 2).value
            den = hyperg_multi(s, np.full(m, 0.5)).value
            vals.append(num / den)
        except NotConverged:
            vals.append(float("nan"))
    v = np.array(vals)
    ok = bool(np.all(np.isfinite(v)))
    if ok and len(bs) >= 2:
        b1, b2 = bs[-2], bs[-1]
        extrap = (b2 * v[-1] - b1 * v[-2]) / (b2 - b1)
        spread = float(v.max() - v.min())
    else:
        extrap, spread = float("nan"), float("nan")
    return ATypeDiagnostic(tuple(bs), tuple(vals), float(extrap), spread, ok)
