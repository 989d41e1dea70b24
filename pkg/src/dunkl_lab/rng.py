"""Counter-based random numbers.

Every variate is a pure function of (seed, domain, path, step, component), so
results do not depend on how paths are split across workers or blocks.  The
hash is the splitmix64 finalizer applied after each key is folded in; normals
come from the Box-Muller transform of two such uniforms.
"""
from __future__ import annotations

import numpy as np

_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_GOLD = np.uint64(0x9E3779B97F4A7C15)
_S30, _S27, _S31 = np.uint64(30), np.uint64(27), np.uint64(31)


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z + _GOLD)
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


def hash64(*keys) -> np.ndarray:
    """Fold integer keys (scalars or broadcastable arrays) into uint64 hashes."""
    with np.errstate(over="ignore"):
        h = np.uint64(0x243F6A8885A308D3)
        for k in keys:
            h = _mix(np.asarray(h, dtype=np.uint64) ^ np.asarray(k, dtype=np.int64).astype(np.uint64))
    return h


def to_unit(h: np.ndarray) -> np.ndarray:
    """Map hashes to uniforms strictly inside (0, 1)."""
    return ((h >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0 ** -53


def uniforms(seed: int, domain: int, path, step, comp) -> np.ndarray:
    return to_unit(hash64(seed, domain, path, step, comp))


def standard_normal(seed: int, domain: int, path, step, comp) -> np.ndarray:
    """Box-Muller normal for each (path, step, comp) key."""
    u1 = to_unit(hash64(seed, domain, path, step, 2 * np.asarray(comp)))
    u2 = to_unit(hash64(seed, domain, path, step, 2 * np.asarray(comp) + 1))
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)


def normals(seed: int, n: int, m: int, domain: int = 0, step: int = 0, path_offset: int = 0) -> np.ndarray:
    """(n, m) array of normals for paths path_offset .. path_offset + n - 1."""
    paths = np.arange(path_offset, path_offset + n)[:, None]
    comps = np.arange(m)[None, :]
    return standard_normal(seed, domain, paths, step, comps)


def seed_from(value) -> int:
    """Accept ints or numeric strings (e.g. from the environment)."""
    return int(value) & 0x7FFFFFFFFFFFFFFF
