"""Second-order operators without mixed derivatives, applied by finite differences.

Each operator is L f = sum_i a_i(x) d_i^2 f + sum_i b_i(x) d_i f.  Central
differences at steps h and h/2 are combined by Richardson extrapolation.
Test functions must accept a stack of points (n, m) and return (n,) values.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .drifts import jacobi_angle_drift, jacobi_lambda_drift, radial_dunkl_drift
from .roots import MultiplicityFunction, alcove_distance, build, chamber_distance


class OperatorKind(enum.Enum):
    JK = "jk"  # Dunkl Laplacian minus Euler operator on W-invariant functions
    DUNKL_LAPLACIAN_WINV = "dunkl_laplacian"
    GAUSS_GF = "gauss"  # operator with eigenfunction 2F1(e, b, c; z)
    BETA_JACOBI_GEN = "beta_jacobi"  # generator of the eigenvalues lambda
    ALCOVE_GEN = "alcove"  # generator of the angles phi


class MarginError(ValueError):
    """Evaluation point too close to a singular wall for the stencil."""


@dataclass(frozen=True)
class OperatorSpec:
    kind: OperatorKind
    k: MultiplicityFunction | None = None
    params: Mapping[str, float] = field(default_factory=dict)
    h: float = 1e-4
    richardson: bool = True

    def __post_init__(self):
        if self.h <= 0:
            raise ValueError("h must be positive")
        if self.kind in (OperatorKind.JK, OperatorKind.DUNKL_LAPLACIAN_WINV) and self.k is None:
            raise ValueError(f"{self.kind.name} needs a multiplicity function")


def _pairs_margin(z: np.ndarray) -> float:
    m = z.size
    gaps = [abs(z[i] - z[j]) for i in range(m) for j in range(i + 1, m)]
    return min([z.min(), (1 - z).min()] + gaps)


def margin(op: OperatorSpec, x: np.ndarray) -> float:
    x = np.asarray(x, dtype=float)
    kind = op.kind
    if kind in (OperatorKind.JK, OperatorKind.DUNKL_LAPLACIAN_WINV):
        return chamber_distance(op.k.rs, x)
    if kind in (OperatorKind.GAUSS_GF, OperatorKind.BETA_JACOBI_GEN):
        return _pairs_margin(x)
    return alcove_distance(build("BC", x.size), x)


def coefficients(op: OperatorSpec, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(a, b) at a single point."""
    x = np.asarray(x, dtype=float)
    m = x.size
    P = op.params
    kind = op.kind
    if kind is OperatorKind.DUNKL_LAPLACIAN_WINV:
        return np.ones(m), 2.0 * radial_dunkl_drift(op.k, x)[0]
    if kind is OperatorKind.JK:
        return np.ones(m), 2.0 * radial_dunkl_drift(op.k, x)[0] - x
    if kind is OperatorKind.GAUSS_GF:
        k1, e, b, c = P["k1"], P["e"], P["b"], P["c"]
        a = x * (1 - x)
        lin = c - k1 * (m - 1) - (e + b + 1 - k1 * (m - 1)) * x
        pair = np.array([sum(a[i] / (x[i] - x[j]) for j in range(m) if j != i) for i in range(m)])
        return a, lin + 2.0 * k1 * pair
    if kind is OperatorKind.BETA_JACOBI_GEN:
        return 2.0 * x * (1 - x), jacobi_lambda_drift(P["beta"], P["p"], P["q"], x)[0]
    if kind is OperatorKind.ALCOVE_GEN:
        return np.full(m, 0.5), jacobi_angle_drift(P["k0"], P["k1"], P["k2"], x)[0]
    raise ValueError(f"unknown operator kind {kind}")


def derivatives(f: Callable, x: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray, float]:
    """Central first and pure second differences at step h, plus f(x)."""
    x = np.asarray(x, dtype=float)
    m = x.size
    E = np.eye(m) * h
    pts = np.vstack([x[None, :], x + E, x - E])
    v = np.asarray(f(pts), dtype=float).reshape(-1)
    f0, fp, fm = v[0], v[1:m + 1], v[m + 1:]
    return (fp - fm) / (2 * h), (fp - 2 * f0 + fm) / h ** 2, f0


def apply_operator(op: OperatorSpec, f: Callable, x) -> float:
    """Finite-difference value of L f at x (Richardson over h and h/2 unless disabled)."""
    x = np.asarray(x, dtype=float)
    mg = margin(op, x)
    if mg < 3 * op.h:
        raise MarginError(f"point {x} has margin {mg:.3g} < 3h = {3 * op.h:.3g}")
    a, b = coefficients(op, x)

    def at(h):
        d1, d2, _ = derivatives(f, x, h)
        return float(a @ d2 + b @ d1)

    if not op.richardson:
        return at(op.h)
    return (4.0 * at(op.h / 2) - at(op.h)) / 3.0


def apply_laplacian(f: Callable, x, h: float = 1e-4) -> float:
    """Richardson-extrapolated Euclidean Laplacian, no domain check."""
    x = np.asarray(x, dtype=float)

    def at(s):
        return float(derivatives(f, x, s)[1].sum())

    return (4.0 * at(h / 2) - at(h)) / 3.0
