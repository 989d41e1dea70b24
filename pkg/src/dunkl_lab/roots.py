"""Classical root systems A, B, C, D and the non-reduced BC.

Roots are stored as integer coordinate tuples in the standard basis of R^m so
that membership tests and reflections of roots are exact.  ``A`` of rank m-1
lives in R^m (not the sum-zero hyperplane).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

Root = tuple[int, ...]

FAMILIES = ("A", "B", "C", "D", "BC")


class RootSystemError(ValueError):
    """Unsupported family/rank or a vector that is not a root."""


def _unit(m: int, i: int, c: int = 1) -> list[int]:
    v = [0] * m
    v[i] = c
    return v


def _pm_pairs(m: int, signs=(1, -1)) -> list[Root]:
    out = []
    for i, j in combinations(range(m), 2):
        for s in signs:
            v = [0] * m
            v[i] = 1
            v[j] = s
            out.append(tuple(v))
    return out


def _listing(family: str, m: int) -> tuple[list[Root], list[Root]]:
    """Positive roots and simple roots as listed for each family."""
    if family == "A":
        pos = _pm_pairs(m, signs=(-1,))
        simple = [tuple(_unit(m, i)[:i + 1] + [-1] + [0] * (m - i - 2)) for i in range(m - 1)]
    else:
        chain = [tuple(_unit(m, i)[:i + 1] + [-1] + [0] * (m - i - 2)) for i in range(m - 1)]
        pairs = _pm_pairs(m) if m > 1 else []
        if family == "B":
            pos = [tuple(_unit(m, i)) for i in range(m)] + pairs
            simple = chain + [tuple(_unit(m, m - 1))]
        elif family == "C":
            pos = [tuple(_unit(m, i, 2)) for i in range(m)] + pairs
            simple = chain + [tuple(_unit(m, m - 1, 2))]
        elif family == "D":
            pos = pairs
            last = [0] * m
            last[m - 2] = last[m - 1] = 1
            simple = chain + [tuple(last)]
        else:  # BC
            pos = ([tuple(_unit(m, i)) for i in range(m)]
                   + [tuple(_unit(m, i, 2)) for i in range(m)] + pairs)
            simple = chain + [tuple(_unit(m, m - 1))]
    return pos, simple


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _reflect_root(alpha: Root, beta: Root) -> Root:
    num = 2 * _dot(alpha, beta)
    den = _dot(alpha, alpha)
    if num % den:
        raise RootSystemError(f"non-integral Cartan number for {alpha}, {beta}")
    c = num // den
    return tuple(b - c * a for a, b in zip(alpha, beta))


def _root_label(r: Root) -> str:
    terms = []
    for i, c in enumerate(r):
        if c == 0:
            continue
        sign = "-" if c < 0 else ("+" if terms else "")
        mag = "" if abs(c) == 1 else str(abs(c))
        terms.append(f"{sign}{mag}e{i + 1}")
    return "".join(terms)


@dataclass(frozen=True)
class RootSystem:
    family: str
    m: int
    roots: frozenset
    positive: tuple
    simple: tuple
    orbits: tuple  # tuple of frozensets, ordered by their label
    orbit_ids: tuple  # label for each orbit, same order
    highest: Root | None
    _orbit_index: Mapping = field(repr=False, compare=False, default=None)

    @property
    def rank(self) -> int:
        return self.m - 1 if self.family == "A" else self.m

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def dim(self) -> int:
        """Dimension of the ambient space R^m."""
        return len(self.simple[0])

    def __contains__(self, alpha) -> bool:
        return tuple(int(a) for a in alpha) in self.roots

    def positive_array(self) -> np.ndarray:
        return np.array(self.positive, dtype=float)

    def simple_array(self) -> np.ndarray:
        return np.array(self.simple, dtype=float)

    def orbit_of(self, alpha) -> str:
        key = self._check_root(alpha)
        return self._orbit_index[key]

    def simple_coefficients(self, alpha) -> np.ndarray:
        """Coefficients of ``alpha`` over the simple system (exact small integers)."""
        S = self.simple_array().T
        c, *_ = np.linalg.lstsq(S, np.asarray(alpha, dtype=float), rcond=None)
        return np.rint(c).astype(int)

    def _check_root(self, alpha) -> Root:
        key = tuple(int(round(a)) for a in alpha)
        if key not in self.roots or not np.allclose(key, alpha):
            raise RootSystemError(f"{alpha} is not a root of {self.name}")
        return key


@lru_cache(maxsize=None)
def build(family: str, m: int) -> RootSystem:
    """Construct the root system ``family`` of rank ``m``.

    ``A`` with ``m`` means A_{m-1} realized in R^m, so ``build("A", 3)`` is A_2.
    """
    family = family.upper()
    if family not in FAMILIES:
        raise RootSystemError(f"unknown family {family!r}")
    if m < 1 or (family in ("A", "D") and m < 2):
        raise RootSystemError(f"unsupported rank {m} for family {family}")
    pos, simple = _listing(family, m)
    roots = frozenset(pos) | frozenset(tuple(-c for c in r) for r in pos)

    rho = np.arange(m, 0, -1, dtype=float)
    pos = sorted(pos, key=lambda r: (-_dot(r, rho), r))

    # orbits by closure under every reflection
    remaining = set(roots)
    orbit_sets = []
    while remaining:
        seed = max(remaining)
        seen = {seed}
        queue = deque([seed])
        while queue:
            b = queue.popleft()
            for a in roots:
                c = _reflect_root(a, b)
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
        orbit_sets.append(frozenset(seen))
        remaining -= seen

    pos_set = set(pos)
    labelled = []
    for orb in orbit_sets:
        rep = max(r for r in orb if r in pos_set)
        labelled.append((_root_label(rep), orb))
    labelled.sort(key=lambda t: t[0])
    index = {r: lab for lab, orb in labelled for r in orb}

    rs = RootSystem(
        family=family,
        m=m,
        roots=roots,
        positive=tuple(pos),
        simple=tuple(simple),
        orbits=tuple(o for _, o in labelled),
        orbit_ids=tuple(lab for lab, _ in labelled),
        highest=None,
        _orbit_index=index,
    )
    object.__setattr__(rs, "highest", _highest_root(rs))
    return rs


def _highest_root(rs: RootSystem) -> Root | None:
    heights = {r: int(rs.simple_coefficients(r).sum()) for r in rs.positive}
    top = max(heights.values())
    best = [r for r, h in heights.items() if h == top]
    return best[0] if len(best) == 1 else None


def parse_name(name: str) -> RootSystem:
    """``"B2"`` -> build("B", 2); ``"A2"`` -> build("A", 3) (rank, not dimension)."""
    name = name.strip().upper()
    fam = name.rstrip("0123456789")
    r = int(name[len(fam):])
    return build(fam, r + 1 if fam == "A" else r)


def reflect(rs: RootSystem, alpha, x) -> np.ndarray:
    """sigma_alpha(x) = x - 2 <alpha, x> / <alpha, alpha> alpha."""
    a = np.asarray(rs._check_root(alpha), dtype=float)
    x = np.asarray(x, dtype=float)
    return x - 2.0 * (x @ a) / (a @ a) * a


def chamber_distance(rs: RootSystem, x) -> float:
    x = np.asarray(x, dtype=float)
    S = rs.simple_array()
    return float(np.min(S @ x / np.linalg.norm(S, axis=1)))


def alcove_distance(rs: RootSystem, phi) -> float:
    """Signed distance to the walls of the principal alcove (walls at 0 and pi)."""
    if rs.family not in ("BC", "C"):
        raise RootSystemError(f"no alcove support for family {rs.family}")
    phi = np.asarray(phi, dtype=float)
    S = rs.simple_array()
    h = np.asarray(rs.highest, dtype=float)
    margins = S @ phi / np.linalg.norm(S, axis=1)
    return float(min(margins.min(), (np.pi - h @ phi) / np.linalg.norm(h)))


def orbit_of(rs: RootSystem, alpha) -> str:
    return rs.orbit_of(alpha)


# Family-specific parameter names used throughout the package:
#   A: k1 on e_i - e_j
#   B: k0 on e_i, k1 on e_i +- e_j
#   C: k0 on 2e_i, k1 on e_i +- e_j
#   D: k1 on e_i +- e_j
#   BC: k0 on e_i, k1 on 2e_i, k2 on e_i +- e_j
def _alias_of(family: str, r: Root) -> str:
    nz = [c for c in r if c]
    if len(nz) == 2:
        return "k2" if family == "BC" else "k1"
    if family == "BC":
        return "k0" if abs(nz[0]) == 1 else "k1"
    return "k0"


@dataclass(frozen=True)
class MultiplicityFunction:
    """W-invariant nonnegative weights, one value per orbit."""

    rs: RootSystem
    values: Mapping[str, float]

    def __post_init__(self):
        missing = set(self.rs.orbit_ids) - set(self.values)
        if missing:
            raise ValueError(f"missing multiplicities for orbits {sorted(missing)}")
        if any(v < 0 for v in self.values.values()):
            raise ValueError("multiplicities must be nonnegative")

    def of(self, alpha) -> float:
        return float(self.values[self.rs.orbit_of(alpha)])

    def index(self) -> dict[str, float]:
        return {o: v - 0.5 for o, v in self.values.items()}

    def per_positive(self) -> np.ndarray:
        return np.array([self.of(a) for a in self.rs.positive])

    def gamma(self) -> float:
        """Sum of k over positive roots."""
        return float(self.per_positive().sum())

    def named(self) -> dict[str, float]:
        out: dict[str, float] = {}
        for r in self.rs.positive:
            out.setdefault(_alias_of(self.rs.family, r), self.of(r))
        return out


def multiplicity(rs: RootSystem, **named: float) -> MultiplicityFunction:
    """Build k from the family's named parameters (see module comment)."""
    values: dict[str, float] = {}
    for r in rs.positive:
        alias = _alias_of(rs.family, r)
        if alias not in named:
            raise ValueError(f"{rs.name} needs parameter {alias}")
        o = rs.orbit_of(r)
        v = float(named[alias])
        if values.setdefault(o, v) != v:
            raise ValueError(f"parameters are not constant on orbit {o} of {rs.name}")
    return MultiplicityFunction(rs, values)


def regular_point(rs: RootSystem) -> np.ndarray:
    """A fixed point strictly inside the chamber."""
    return np.arange(rs.dim, 0, -1, dtype=float)


def positive_products(rs: RootSystem, x: np.ndarray, exponents: Iterable[float] | None = None) -> np.ndarray:
    """prod_{alpha > 0} <alpha, x>^{e(alpha)} evaluated row-wise."""
    x = np.atleast_2d(np.asarray(x, dtype=float))
    vals = x @ rs.positive_array().T
    if exponents is None:
        return np.prod(vals, axis=1)
    return np.prod(vals ** np.asarray(list(exponents), dtype=float), axis=1)
