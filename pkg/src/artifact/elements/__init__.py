"""Shape-function catalogs for the seven master elements.

Every catalog is driven by the same three calls: :func:`enumerate_shape`
lists the :class:`ShapeIndex` entries in their fixed order, :func:`count`
returns the closed-form dimension, and :func:`evaluate` tabulates all
functions and their differentials at a batch of points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import CapabilityError, ConfigError, DimensionError
from .base import SPACES, Context, ShapeIndex, normalize_orders, normalize_space
from .counts import closed_form
from .hexa import HEX
from .prism import PRISM
from .pyramid import PYRAMID, ZETA_EPS
from .quad import QUAD
from .segment import SEGMENT
from .tet import TET
from .triangle import TRIANGLE

__all__ = [
    "SHAPES",
    "SPACES",
    "ZETA_EPS",
    "ShapeIndex",
    "Tabulation",
    "get_shape",
    "enumerate_shape",
    "count",
    "coords",
    "contains",
    "lattice",
    "evaluate",
    "eval_h1",
    "eval_hcurl",
    "eval_hdiv",
    "eval_l2",
    "normalize_space",
]

SHAPES = {s.name: s for s in (SEGMENT, QUAD, TRIANGLE, HEX, TET, PRISM, PYRAMID)}
_ALIASES = {
    "seg": "segment",
    "line": "segment",
    "quadrilateral": "quad",
    "tri": "triangle",
    "hexahedron": "hex",
    "hexa": "hex",
    "tetrahedron": "tet",
    "wedge": "prism",
    "pyr": "pyramid",
}


def get_shape(shape):
    if not isinstance(shape, str):
        return shape
    key = shape.strip().lower()
    key = _ALIASES.get(key, key)
    if key not in SHAPES:
        raise ConfigError(f"unknown shape {shape!r}; expected one of {', '.join(SHAPES)}")
    return SHAPES[key]


def _space_for(sd, space):
    sp = normalize_space(space)
    if sp not in sd.spaces:
        raise CapabilityError(f"{sd.name} has no {sp} space")
    return sp


def _builder(shape, space, orders, orientations=None, overrides=None):
    sd = get_shape(shape)
    sp = _space_for(sd, space)
    ctx = Context(sd, orders, orientations, overrides)
    return sd, sp, ctx


def enumerate_shape(shape, space, orders, overrides=None):
    """Ordered list of :class:`ShapeIndex` for one element."""
    sd, sp, ctx = _builder(shape, space, orders, None, overrides)
    return [idx for idx, _ in sd.build(sp, ctx)]


def count(shape, space, orders):
    sd = get_shape(shape)
    sp = _space_for(sd, space)
    return closed_form(sd.name, sp, normalize_orders(sd, orders))


def _points(sd, points):
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(1, -1) if sd.dim > 1 or pts.size == 1 else pts.reshape(-1, 1)
    if pts.ndim != 2 or pts.shape[1] != sd.dim:
        raise DimensionError(f"{sd.name} points need {sd.dim} coordinates, got shape {pts.shape}")
    return pts


def coords(shape, points):
    """Coordinate bundle (dict of :class:`~artifact.ancillary.Coord` tuples) at a batch of points."""
    sd = get_shape(shape)
    return sd.coords(_points(sd, points))


def contains(shape, points, tol=1e-12):
    """Boolean mask of points lying in the closed master element."""
    sd = get_shape(shape)
    x = _points(sd, points)
    lo = (x >= -tol).all(axis=1)
    if sd.name in ("segment", "quad", "hex"):
        return lo & (x <= 1 + tol).all(axis=1)
    if sd.name in ("triangle", "tet"):
        return lo & (x.sum(axis=1) <= 1 + tol)
    if sd.name == "prism":
        return lo & (x[:, 0] + x[:, 1] <= 1 + tol) & (x[:, 2] <= 1 + tol)
    z = x[:, 2]
    return lo & (z <= 1 + tol) & (x[:, 0] <= 1 - z + tol) & (x[:, 1] <= 1 - z + tol)


def lattice(shape, n):
    """Uniform lattice with ``n`` points per direction, clipped to the master element.

    Pyramid points within ``ZETA_EPS`` of the apex are dropped.
    """
    sd = get_shape(shape)
    if int(n) != n or n < 2:
        raise ConfigError(f"lattice resolution must be an integer >= 2, got {n!r}")
    t = np.linspace(0.0, 1.0, int(n))
    grids = np.meshgrid(*([t] * sd.dim), indexing="ij")
    pts = np.stack([g.ravel() for g in grids[::-1]], axis=1)[:, ::-1]
    pts = pts[contains(sd, pts)]
    if sd.name == "pyramid":
        pts = pts[1.0 - pts[:, 2] > ZETA_EPS]
    return pts


@dataclass
class Tabulation:
    """All shape functions of one space at a batch of points.

    ``value`` has shape (m, n) for scalar spaces and (m, n, N) for vector
    spaces, where m is the number of points and n the number of functions.
    ``diff`` holds the gradient (m, n, N), the curl ((m, n) in 2D, (m, n, 3)
    in 3D) or the divergence (m, n); it is ``None`` for L2.
    """

    shape: str
    space: str
    orders: tuple
    indices: list
    points: np.ndarray
    value: np.ndarray
    diff: np.ndarray | None

    def __len__(self):
        return len(self.indices)


def evaluate(shape, space, orders, points, orientations=None, overrides=None):
    sd, sp, ctx = _builder(shape, space, orders, orientations, overrides)
    pts = _points(sd, points)
    bundle = sd.coords(pts)
    indices, values, diffs = [], [], []
    for idx, fn in sd.build(sp, ctx):
        r = fn(bundle)
        indices.append(idx)
        if sp == "L2":
            values.append(np.asarray(r))
        else:
            values.append(np.asarray(r[0]))
            diffs.append(np.asarray(r[1]))
    m = pts.shape[0]
    if values:
        value = np.stack(values, axis=1)
        diff = np.stack(diffs, axis=1) if diffs else None
    else:
        value = np.zeros((m, 0))
        diff = None if sp == "L2" else np.zeros((m, 0))
    return Tabulation(sd.name, sp, ctx.orders, indices, pts, value, diff)


def _per_point(space, shape, orders, point, orientations=None, overrides=None):
    tab = evaluate(shape, space, orders, np.atleast_1d(np.asarray(point, dtype=float))[None, :],
                   orientations, overrides)
    if tab.diff is None:
        return [float(v) for v in tab.value[0]]
    from ..ancillary import ValueGrad, VecCurl, VecDiv

    kind = {"H1": ValueGrad, "Hcurl": VecCurl, "Hdiv": VecDiv}[tab.space]
    return [kind(tab.value[0, k], tab.diff[0, k]) for k in range(len(tab))]


def eval_h1(shape, orders, point, orientations=None, overrides=None):
    return _per_point("H1", shape, orders, point, orientations, overrides)


def eval_hcurl(shape, orders, point, orientations=None, overrides=None):
    return _per_point("Hcurl", shape, orders, point, orientations, overrides)


def eval_hdiv(shape, orders, point, orientations=None, overrides=None):
    return _per_point("Hdiv", shape, orders, point, orientations, overrides)


def eval_l2(shape, orders, point, overrides=None):
    return _per_point("L2", shape, orders, point, None, overrides)
