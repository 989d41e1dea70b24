"""Partitions, monomial symmetric functions and Jack polynomials.

Jack polynomials are computed in the J normalization from the Laplace-Beltrami
operator

    D(alpha) = (alpha/2) sum_i x_i^2 d_i^2 + sum_{i != j} x_i^2 / (x_i - x_j) d_i

which is triangular on the monomial basis.  Its integer off-diagonal part does
not depend on alpha and is cached per (degree, nvars).  Coefficients are exact
when alpha is a ``Fraction`` and floating point otherwise.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterator, Mapping, Sequence

import numpy as np
from scipy.linalg import solve_triangular

MAX_DEGREE = 80  # hard ceiling on |tau|; series default to DEFAULT_DEGREE
DEFAULT_DEGREE = 30


class PartitionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple = ()

    def __post_init__(self):
        p = tuple(int(v) for v in self.parts if v != 0)
        if any(v < 0 for v in p) or any(a < b for a, b in zip(p, p[1:])):
            raise PartitionError(f"not a partition: {self.parts}")
        object.__setattr__(self, "parts", p)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def padded(self, m: int) -> tuple:
        if self.length > m:
            raise PartitionError(f"{self.parts} has more than {m} parts")
        return self.parts + (0,) * (m - self.length)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def cells(self) -> Iterator[tuple[int, int]]:
        """Cells (i, j), 0-based row and column."""
        for i, p in enumerate(self.parts):
            for j in range(p):
                yield i, j

    def dominated_by(self, other: "Partition") -> bool:
        a = b = 0
        for i in range(max(self.length, other.length)):
            a += self.parts[i] if i < self.length else 0
            b += other.parts[i] if i < other.length else 0
            if a > b:
                return False
        return self.weight == other.weight

    def __repr__(self):
        return f"Partition{self.parts}"


def as_partition(tau) -> Partition:
    return tau if isinstance(tau, Partition) else Partition(tuple(tau))


@lru_cache(maxsize=None)
def _partitions(n: int, max_len: int, max_part: int) -> tuple:
    if n == 0:
        return ((),)
    if max_len == 0:
        return ()
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, max_len - 1, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(n: int, max_len: int) -> list[Partition]:
    """All partitions of n with at most max_len parts, reverse lexicographic."""
    if n < 0:
        raise PartitionError("n must be nonnegative")
    return [Partition(p) for p in _partitions(n, max_len, n)]


def gen_pochhammer(c, tau, k1):
    """(c)_tau = prod_i (c - k1 (i-1))_{tau_i}."""
    out = 1
    for i, p in enumerate(as_partition(tau)):
        base = c - k1 * i
        for j in range(p):
            out = out * (base + j)
    return out


def hook_product(tau, alpha):
    """prod over cells of (alpha * arm + leg + 1); maps monic P to J."""
    tau = as_partition(tau)
    conj = tau.conjugate().parts
    out = 1
    for i, j in tau.cells():
        arm = tau[i] - j - 1
        leg = conj[j] - i - 1
        out = out * (alpha * arm + leg + 1)
    return out


def upper_lower_hooks(tau, alpha):
    """prod over cells of (leg + alpha (arm + 1)) (leg + 1 + alpha arm)."""
    tau = as_partition(tau)
    conj = tau.conjugate().parts
    out = 1
    for i, j in tau.cells():
        arm = tau[i] - j - 1
        leg = conj[j] - i - 1
        out = out * (leg + alpha * (arm + 1)) * (leg + 1 + alpha * arm)
    return out


def jack_at_ones(tau, alpha, m: int):
    """J_tau(1, ..., 1) with m ones: prod over cells (m - i + alpha j), 0-based."""
    out = 1
    for i, j in as_partition(tau).cells():
        out = out * (m - i + alpha * j)
    return out


@lru_cache(maxsize=None)
def _distinct_perms(exps: tuple) -> tuple:
    return tuple(sorted(set(permutations(exps))))


@lru_cache(maxsize=None)
def _laplace_beltrami_parts(n: int, m: int):
    """Basis (ascending lex), diagonal x^2 d^2 part /2, integer pair matrix B.

    D(alpha) m_mu = alpha * diag[mu] m_mu + sum_lambda B[lambda, mu] m_lambda.
    """
    basis = sorted(partitions_of(n, m), key=lambda p: p.parts)
    pos = {p.padded(m): i for i, p in enumerate(basis)}
    N = len(basis)
    diag = [Fraction(sum(v * (v - 1) for v in p.parts), 2) for p in basis]
    B = [[0] * N for _ in range(N)]
    for col, mu in enumerate(basis):
        acc: dict = {}
        for e in _distinct_perms(mu.padded(m)):
            for i in range(m):
                for j in range(i + 1, m):
                    a, b = e[i], e[j]
                    if a < b:
                        continue  # handled through the swapped monomial
                    # numerator coefficients c_t of x_i^t x_j^(d-t), d = a + b + 1
                    c: dict = {}
                    c[a + 1] = c.get(a + 1, 0) + a
                    c[a] = c.get(a, 0) - b
                    if a != b:
                        c[b + 1] = c.get(b + 1, 0) + b
                        c[b] = c.get(b, 0) - a
                    # exact division by (x_i - x_j): q_t = -sum_{s <= t} c_s
                    run = 0
                    for t in range(a + b + 1):
                        run -= c.get(t, 0)
                        if run == 0:
                            continue
                        f = list(e)
                        f[i], f[j] = t, a + b - t
                        key = tuple(f)
                        if key in pos:
                            acc[key] = acc.get(key, 0) + run
        for key, v in acc.items():
            B[pos[key]][col] += v
    return basis, diag, B


def laplace_beltrami_matrix(n: int, m: int, alpha):
    """Matrix of D(alpha) on degree-n monomial symmetric polynomials in m variables.

    Returns (basis, D) with D a list of lists in the type of alpha.
    """
    basis, diag, B = _laplace_beltrami_parts(n, m)
    conv = Fraction if isinstance(alpha, Fraction) else float
    D = [[conv(v) for v in row] for row in B]
    for i in range(len(basis)):
        D[i][i] += alpha * conv(diag[i])
    return basis, D


def jack_eigenvalue(tau, alpha, m: int):
    """Eigenvalue of D(alpha) on J_tau in m variables."""
    tau = as_partition(tau)
    n_conj = sum(p * (p - 1) for p in tau.parts)
    n_tau = sum(i * p for i, p in enumerate(tau.parts))
    half = Fraction(1, 2) if isinstance(alpha, Fraction) else 0.5
    return alpha * half * n_conj - n_tau + (m - 1) * tau.weight


@dataclass(frozen=True)
class SymmetricPoly:
    """Linear combination of monomial symmetric polynomials in ``nvars`` variables."""

    coefficients: Mapping[Partition, object]
    nvars: int
    degree: int | None = None

    def __post_init__(self):
        degs = {p.weight for p in self.coefficients}
        if any(p.length > self.nvars for p in self.coefficients):
            raise PartitionError("partition longer than the number of variables")
        if len(degs) > 1:
            raise ValueError("SymmetricPoly must be homogeneous")
        if self.degree is None:
            object.__setattr__(self, "degree", degs.pop() if degs else 0)

    def coefficient(self, lam) -> object:
        return self.coefficients.get(as_partition(lam), 0)

    def __call__(self, x) -> np.ndarray | float:
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        X = np.atleast_2d(x)
        if X.shape[1] != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {X.shape[1]}")
        parts = list(self.coefficients)
        vals = monomial_values(parts, X) @ np.array([float(self.coefficients[p]) for p in parts])
        return float(vals[0]) if single else vals


def monomial_values(parts: Sequence[Partition], X: np.ndarray) -> np.ndarray:
    """Matrix of m_lambda(x) with rows indexed by points and columns by ``parts``."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    npts, m = X.shape
    out = np.zeros((npts, len(parts)))
    if not parts:
        return out
    top = max(max(p.parts, default=0) for p in parts)
    # P[i, e] = x_i^e, contiguous over points
    P = np.empty((m, top + 1, npts))
    P[:, 0, :] = 1.0
    for e in range(1, top + 1):
        P[:, e, :] = P[:, e - 1, :] * X.T
    for c, p in enumerate(parts):
        col = out[:, c]
        for e in _distinct_perms(p.padded(m)):
            term = P[0, e[0]].copy()
            for i in range(1, m):
                if e[i]:
                    term *= P[i, e[i]]
            col += term
    return out


_cache_lock = threading.Lock()
_jack_cache: dict = {}


def _key_alpha(alpha):
    return (type(alpha).__name__, alpha)


def _solve_monic(n: int, m: int, alpha):
    """Monic Jack P_tau for every tau of weight n (rows), columns = basis."""
    basis, D = laplace_beltrami_matrix(n, m, alpha)
    N = len(basis)
    exact = isinstance(alpha, Fraction)
    Dn = None if exact else np.asarray(D, dtype=float)
    rows = []
    for t, tau in enumerate(basis):
        idx = [i for i in range(t) if basis[i].dominated_by(tau)]
        E = D[t][t]
        u = {t: (Fraction(1) if exact else 1.0)}
        if exact:
            for i in reversed(idx):
                s = sum(D[i][j] * u[j] for j in u)
                u[i] = -s / (D[i][i] - E)
        elif idx:
            sub = Dn[np.ix_(idx, idx)] - E * np.eye(len(idx))
            rhs = -Dn[idx, t]
            sol = solve_triangular(sub, rhs, lower=False)
            u.update(zip(idx, sol))
        row = [u.get(i, 0) for i in range(N)]
        rows.append(row)
    return basis, rows


def jack_matrix(n: int, alpha, m: int):
    """(basis, C) where row i of C holds the monomial coefficients of J_{basis[i]}."""
    if n > MAX_DEGREE:
        raise ValueError(f"degree {n} exceeds MAX_DEGREE={MAX_DEGREE}")
    key = (n, m, _key_alpha(alpha))
    with _cache_lock:
        hit = _jack_cache.get(key)
    if hit is not None:
        return hit
    basis, rows = _solve_monic(n, m, alpha)
    exact = isinstance(alpha, Fraction)
    out_rows = []
    for tau, row in zip(basis, rows):
        h = hook_product(tau, alpha)
        out_rows.append([h * c for c in row])
    res = (basis, out_rows if exact else np.asarray(out_rows, dtype=float))
    with _cache_lock:
        _jack_cache.setdefault(key, res)
    return res


def jack(tau, alpha, m: int) -> SymmetricPoly:
    """J-normalized Jack polynomial J_tau^(alpha) in m variables."""
    tau = as_partition(tau)
    if tau.length > m:
        raise PartitionError(f"length of {tau.parts} exceeds m={m}")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    basis, C = jack_matrix(tau.weight, alpha, m)
    row = C[basis.index(tau)]
    coeffs = {p: c for p, c in zip(basis, row) if c != 0}
    return SymmetricPoly(coeffs, m, tau.weight)


def jack_eval(tau, alpha, x) -> np.ndarray | float:
    x = np.asarray(x, dtype=float)
    m = x.shape[-1]
    return jack(tau, alpha, m)(x)


def jack_values(n: int, alpha: float, X: np.ndarray):
    """All J_tau(x) with |tau| = n, l(tau) <= m: returns (basis, values[npts, nbasis])."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    basis, C = jack_matrix(n, float(alpha), X.shape[1])
    return basis, monomial_values(basis, X) @ C.T
