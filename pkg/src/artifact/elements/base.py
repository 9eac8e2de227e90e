"""Shared machinery for the per-shape catalogs.

A shape module exposes a :class:`ShapeDef`.  Its ``build`` generator yields
``(ShapeIndex, thunk)`` pairs in enumeration order; a thunk maps a
coordinate bundle (dict of :class:`~artifact.ancillary.Coord`) to the
function's value and differential.  Enumerating never evaluates anything.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .. import orient
from ..ancillary import Coord, ValueGrad, VecCurl, VecDiv, cross, dot
from ..errors import CapabilityError, ConfigError
from ..poly import P_SUPPORTED

SPACES = ("H1", "Hcurl", "Hdiv", "L2")
_SPACE_ALIASES = {
    "h1": "H1",
    "hcurl": "Hcurl",
    "h(curl)": "Hcurl",
    "curl": "Hcurl",
    "hdiv": "Hdiv",
    "h(div)": "Hdiv",
    "div": "Hdiv",
    "l2": "L2",
}

VERTEX, EDGE, FACE, INTERIOR = "vertex", "edge", "face", "interior"


def normalize_space(space):
    key = str(space).strip().lower()
    if key not in _SPACE_ALIASES:
        raise ConfigError(f"unknown space {space!r}; expected one of {', '.join(SPACES)}")
    return _SPACE_ALIASES[key]


@dataclass(frozen=True, order=True)
class ShapeIndex:
    space: str
    entity: str
    entity_id: int
    family: int
    multi_index: tuple

    def label(self):
        mi = ",".join(str(m) for m in self.multi_index)
        return f"{self.space}:{self.entity}{self.entity_id}:f{self.family}:({mi})"


@dataclass(frozen=True)
class ShapeDef:
    name: str
    dim: int
    vertices: np.ndarray
    edges: tuple  # local vertex tuples, in local orientation
    faces: tuple  # (kind, local vertex tuple) pairs, in local orientation
    n_orders: int
    spaces: tuple
    coords: Callable
    build: Callable
    measure: float
    extras: dict = field(default_factory=dict)

    def entity_kind(self, entity, entity_id):
        if entity == EDGE:
            return orient.EDGE
        if entity == FACE:
            return self.faces[entity_id][0]
        raise ConfigError(f"{entity} entities carry no orientation")

    def oriented_entities(self):
        return [(EDGE, k) for k in range(len(self.edges))] + [(FACE, k) for k in range(len(self.faces))]


class Context:
    """Orders, overrides and orientation tags seen by a builder."""

    def __init__(self, shape, orders, orientations=None, overrides=None):
        self.shape = shape
        self.orders = normalize_orders(shape, orders)
        self.orientations = _normalize_orientations(shape, orientations)
        self.overrides = _normalize_overrides(shape, overrides)

    def o(self, entity, entity_id):
        return self.orientations.get((entity, entity_id), 0)

    def entity_orders(self, entity, entity_id, governing):
        """Apply the minimum rule to the governing directional orders of an entity."""
        gov = tuple(governing)
        ov = self.overrides.get((entity, entity_id))
        if ov is None:
            return gov
        if ov > max(gov):
            raise ConfigError(
                f"override {ov} on {entity} {entity_id} exceeds the governing order {max(gov)}"
            )
        return tuple(min(ov, g) for g in gov)

    def edge_order(self, entity_id, governing):
        return self.entity_orders(EDGE, entity_id, (governing,))[0]


def normalize_orders(shape, orders):
    if isinstance(orders, (int, np.integer)):
        vals = (int(orders),) * shape.n_orders
    else:
        vals = tuple(int(v) for v in orders)
        if len(vals) == 1:
            vals = vals * shape.n_orders
    if len(vals) != shape.n_orders:
        raise ConfigError(f"{shape.name} takes {shape.n_orders} order(s), got {len(vals)}")
    for v in vals:
        if v < 1:
            raise ConfigError(f"orders must be >= 1, got {vals}")
    if max(vals) > P_SUPPORTED:
        raise CapabilityError(f"order {max(vals)} exceeds the supported cap {P_SUPPORTED}")
    return vals


def _entity_key(key):
    if isinstance(key, str):
        kind, _, num = key.partition(":")
        if not num:
            kind, num = key.rstrip("0123456789"), key[len(key.rstrip("0123456789")) :]
        try:
            return kind.strip().lower(), int(num)
        except ValueError:
            raise ConfigError(f"bad entity key {key!r}") from None
    try:
        kind, num = key
        return str(kind).lower(), int(num)
    except (TypeError, ValueError):
        raise ConfigError(f"bad entity key {key!r}") from None


def _normalize_orientations(shape, orientations):
    if orientations is None:
        return {}
    wanted = shape.oriented_entities()
    out = {}
    for key, tag in dict(orientations).items():
        ent = _entity_key(key)
        if ent not in wanted:
            raise ConfigError(f"{shape.name} has no oriented entity {key!r}")
        kind = shape.entity_kind(*ent)
        if isinstance(tag, orient.OrientationTag):
            if tag.kind != kind:
                raise ConfigError(f"tag kind {tag.kind} does not match {kind} for {key!r}")
            o = tag.o
        else:
            o = orient.OrientationTag(kind, tag).o
        out[ent] = o
    missing = [e for e in wanted if e not in out]
    if missing:
        raise ConfigError(f"orientation map is partial; missing {missing}")
    return out


def _normalize_overrides(shape, overrides):
    if not overrides:
        return {}
    wanted = set(shape.oriented_entities())
    out = {}
    for key, val in dict(overrides).items():
        ent = _entity_key(key)
        if ent not in wanted:
            raise ConfigError(f"{shape.name} has no overridable entity {key!r}")
        if int(val) != val or val < 1:
            raise ConfigError(f"override for {key!r} must be an integer >= 1")
        out[ent] = int(val)
    return out


# --- small evaluation helpers shared by the catalogs -----------------------


def as_coord(r):
    return Coord(r.value, r.grad)


def h1_scale(f, r):
    return ValueGrad(f.v * r.value, f.v[:, None] * r.grad + r.value[:, None] * f.g)


def curl_scale(f, r):
    c = f.v * r.curl if r.curl.ndim == 1 else f.v[:, None] * r.curl
    return VecCurl(f.v[:, None] * r.vec, c + cross(f.g, r.vec))


def div_scale(f, r):
    return VecDiv(f.v[:, None] * r.vec, f.v * r.div + dot(f.g, r.vec))


def half_sum_div(a, b):
    return VecDiv(0.5 * (a.vec + b.vec), 0.5 * (a.div + b.div))


def vertex_h1(c):
    return ValueGrad(c.v, c.g)


def rot(triple):
    s0, s1, s2 = triple
    return (s1, s2, s0)


def oriented_quad(o, s, t):
    q = orient.sigma_quad(o, (s[0], s[1], t[0], t[1]))
    return (q[0], q[1]), (q[2], q[3])


def quad_orders(o, orders):
    return (orders[1], orders[0]) if orient.quad_swaps_pairs(o) else tuple(orders)


def pairs_by_total(nmin, nmax, imin, jmin):
    """(i, j) with i >= imin, j >= jmin, nmin <= i + j <= nmax; n outer, i ascending."""
    for n in range(nmin, nmax + 1):
        for i in range(imin, n - jmin + 1):
            yield i, n - i


def triples_by_total(nmin, nmax, imin, jmin, kmin):
    for n in range(nmin, nmax + 1):
        for i in range(imin, n - jmin - kmin + 1):
            for j in range(jmin, n - i - kmin + 1):
                yield i, j, n - i - j


def constant_coord(c, value):
    n, dim = c.g.shape
    return Coord.constant(value, n, dim)
