"""Segment [0, 1]: vertices 0 and 1, one interior."""

from functools import partial

import numpy as np

from ..ancillary import Coord, homog_P, phi_E
from .base import INTERIOR, VERTEX, ShapeDef, ShapeIndex, vertex_h1


def coords(points):
    x = points[:, 0]
    n = x.shape[0]
    one = np.ones((n, 1))
    return {"mu": (Coord(1.0 - x, -one), Coord(x, one))}


def _vertex(a, c):
    return vertex_h1(c["mu"][a])


def _bubble(i, c):
    return phi_E(i, c["mu"])


def _l2(i, c):
    return homog_P(0, i, c["mu"]) * c["mu"][1].g[:, 0]


def build(space, ctx):
    (p,) = ctx.orders
    if space == "H1":
        for a in range(2):
            yield ShapeIndex(space, VERTEX, a, 1, ()), partial(_vertex, a)
        for i in range(2, p + 1):
            yield ShapeIndex(space, INTERIOR, 0, 1, (i,)), partial(_bubble, i)
    else:
        for i in range(p):
            yield ShapeIndex(space, INTERIOR, 0, 1, (i,)), partial(_l2, i)


SEGMENT = ShapeDef(
    name="segment",
    dim=1,
    vertices=np.array([[0.0], [1.0]]),
    edges=(),
    faces=(),
    n_orders=1,
    spaces=("H1", "L2"),
    coords=coords,
    build=build,
    measure=1.0,
)
