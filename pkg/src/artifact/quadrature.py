"""Gauss-Legendre rules on (0, 1) pushed onto each master element.

Simplices, the prism and the pyramid are reached from the unit square or
cube through collapsed (Duffy) maps; the Jacobian of the map is folded into
the weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConfigError

__all__ = ["N_MAX", "QuadRule", "gauss_1d", "rule_for", "integrate", "MEASURES"]

N_MAX = 30

MEASURES = {
    "segment": 1.0,
    "quad": 1.0,
    "triangle": 0.5,
    "hex": 1.0,
    "tet": 1.0 / 6.0,
    "prism": 0.5,
    "pyramid": 1.0 / 3.0,
}
_DIMS = {"segment": 1, "quad": 2, "triangle": 2, "hex": 3, "tet": 3, "prism": 3, "pyramid": 3}


@dataclass(frozen=True)
class QuadRule:
    shape: str
    nodes: np.ndarray  # (m, N) points inside the master element
    weights: np.ndarray  # (m,)

    def __len__(self):
        return self.weights.shape[0]


@lru_cache(maxsize=None)
def _gauss(n):
    k = np.arange(1, n + 1)
    x = np.cos(np.pi * (k - 0.25) / (n + 0.5))  # initial guesses on (-1, 1)
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for m in range(2, n + 1):
            p0, p1 = p1, ((2 * m - 1) * x * p1 - (m - 1) * p0) / m
        dp = n * (x * p1 - p0) / (x * x - 1.0) if n > 1 else np.ones_like(x)
        step = p1 / dp
        x = x - step
        if np.max(np.abs(step)) <= 1e-15:
            break
    p0 = np.ones_like(x)
    p1 = x.copy()
    for m in range(2, n + 1):
        p0, p1 = p1, ((2 * m - 1) * x * p1 - (m - 1) * p0) / m
    dp = n * (x * p1 - p0) / (x * x - 1.0) if n > 1 else np.ones_like(x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    return (x[order] + 1.0) / 2.0, w[order] / 2.0


def gauss_1d(n):
    """Nodes and weights on (0, 1), exact up to degree 2n - 1."""
    if int(n) != n or not 1 <= n <= N_MAX:
        raise ConfigError(f"Gauss rule size must be in 1..{N_MAX}, got {n!r}")
    x, w = _gauss(int(n))
    return x.copy(), w.copy()


def _tensor(n, dim):
    x, w = _gauss(int(n))
    grids = np.meshgrid(*([x] * dim), indexing="ij")
    wgrids = np.meshgrid(*([w] * dim), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    wts = np.prod(np.stack([g.ravel() for g in wgrids], axis=1), axis=1)
    return pts, wts


def _collapse(shape, u):
    if shape in ("segment", "quad", "hex"):
        return u, np.ones(u.shape[0])
    if shape == "triangle":
        x, y = u[:, 0], u[:, 1]
        return np.stack([x * (1 - y), y], axis=1), 1 - y
    if shape == "tet":
        x, y, z = u.T
        return np.stack([x * (1 - y) * (1 - z), y * (1 - z), z], axis=1), (1 - y) * (1 - z) ** 2
    if shape == "prism":
        x, y, z = u.T
        return np.stack([x * (1 - y), y, z], axis=1), 1 - y
    if shape == "pyramid":
        x, y, z = u.T
        return np.stack([x * (1 - z), y * (1 - z), z], axis=1), (1 - z) ** 2
    raise ConfigError(f"unknown shape {shape!r}")


@lru_cache(maxsize=None)
def _rule(shape, n):
    u, w = _tensor(n, _DIMS[shape])
    pts, det = _collapse(shape, u)
    return QuadRule(shape, pts, w * det)


def rule_for(shape, n):
    if shape not in _DIMS:
        raise ConfigError(f"unknown shape {shape!r}")
    gauss_1d(n)
    return _rule(shape, int(n))


def integrate(shape, f, n):
    """Sum of ``w_k f(x_k)``; ``f`` receives the (m, N) node array and returns (m,) values."""
    rule = rule_for(shape, n)
    vals = np.asarray(f(rule.nodes), dtype=float)
    return float(np.dot(rule.weights, vals))
