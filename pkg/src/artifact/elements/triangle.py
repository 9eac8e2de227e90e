"""Triangle with vertices (0,0), (1,0), (0,1)."""

from functools import partial

import numpy as np

from .. import orient
from ..ancillary import Coord, E_E, E_tri, cross, homog_P, phi_E, phi_tri, rotate_2d
from .base import EDGE, INTERIOR, VERTEX, ShapeDef, ShapeIndex, pairs_by_total, rot, vertex_h1

_EDGES = ((0, 1), (0, 2), (1, 2))


def nu(x, y):
    n = x.shape[0]
    return (
        Coord(1.0 - x - y, np.tile([-1.0, -1.0], (n, 1))),
        Coord(x, np.tile([1.0, 0.0], (n, 1))),
        Coord(y, np.tile([0.0, 1.0], (n, 1))),
    )


def coords(points):
    return {"nu": nu(points[:, 0], points[:, 1])}


def _edge_pair(c, e, o):
    a, b = _EDGES[e]
    return orient.sigma_edge(o, (c["nu"][a], c["nu"][b]))


def _vertex(a, c):
    return vertex_h1(c["nu"][a])


def _edge_h1(e, o, i, c):
    return phi_E(i, _edge_pair(c, e, o))


def _face_h1(i, j, c):
    return phi_tri(i, j, c["nu"])


def _edge_curl(e, o, i, c):
    return E_E(i, _edge_pair(c, e, o))


def _face_curl(fam, i, j, c):
    s = c["nu"] if fam == 1 else rot(c["nu"])
    return E_tri(i, j, s)


def _l2(i, j, c):
    n0, n1, n2 = c["nu"]
    return homog_P(0, i, (n0, n1)) * homog_P(2 * i + 1, j, (n0 + n1, n2)) * cross(n1.g, n2.g)


def _rotated(fn, c):
    return rotate_2d(fn(c))


def _curl_family(space, ctx):
    (p,) = ctx.orders
    for e in range(3):
        for i in range(ctx.edge_order(e, p)):
            yield ShapeIndex(space, EDGE, e, 1, (i,)), partial(_edge_curl, e, ctx.o(EDGE, e), i)
    for fam in (1, 2):
        for i, j in pairs_by_total(1, p - 1, 0, 1):
            yield ShapeIndex(space, INTERIOR, 0, fam, (i, j)), partial(_face_curl, fam, i, j)


def build(space, ctx):
    (p,) = ctx.orders
    if space == "H1":
        for a in range(3):
            yield ShapeIndex(space, VERTEX, a, 1, ()), partial(_vertex, a)
        for e in range(3):
            for i in range(2, ctx.edge_order(e, p) + 1):
                yield ShapeIndex(space, EDGE, e, 1, (i,)), partial(_edge_h1, e, ctx.o(EDGE, e), i)
        for i, j in pairs_by_total(3, p, 2, 1):
            yield ShapeIndex(space, INTERIOR, 0, 1, (i, j)), partial(_face_h1, i, j)
    elif space == "Hcurl":
        yield from _curl_family(space, ctx)
    elif space == "Hdiv":
        for idx, fn in _curl_family(space, ctx):
            yield idx, partial(_rotated, fn)
    else:
        for i, j in pairs_by_total(0, p - 1, 0, 0):
            yield ShapeIndex(space, INTERIOR, 0, 1, (i, j)), partial(_l2, i, j)


TRIANGLE = ShapeDef(
    name="triangle",
    dim=2,
    vertices=np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]),
    edges=_EDGES,
    faces=(),
    n_orders=1,
    spaces=("H1", "Hcurl", "Hdiv", "L2"),
    coords=coords,
    build=build,
    measure=0.5,
)
