"""Quadrilateral [0, 1]^2 with vertices (0,0), (1,0), (1,1), (0,1)."""

from functools import partial

import numpy as np

from .. import orient
from ..ancillary import Coord, E_E, E_quad, cross, homog_P, phi_E, phi_quad, rotate_2d
from .base import EDGE, INTERIOR, VERTEX, ShapeDef, ShapeIndex, curl_scale, h1_scale, vertex_h1

# (a, b) = (xi_1, xi_2), (xi_2, xi_1); c = 0, 1
_VERTEX_AB = ((0, 0), (1, 0), (1, 1), (0, 1))
_EDGES = ((0, 0), (0, 1), (1, 0), (1, 1))  # (direction a, c)
_EDGE_VERTS = ((0, 1), (3, 2), (0, 3), (1, 2))


def pairs(x, y):
    n = x.shape[0]
    ex = np.tile([1.0, 0.0], (n, 1))
    ey = np.tile([0.0, 1.0], (n, 1))
    return (Coord(1.0 - x, -ex), Coord(x, ex)), (Coord(1.0 - y, -ey), Coord(y, ey))


def coords(points):
    return {"mu": pairs(points[:, 0], points[:, 1])}


def _vertex(a, b, c):
    return vertex_h1(c["mu"][0][a] * c["mu"][1][b])


def _edge_h1(a, cc, o, i, c):
    mu = c["mu"]
    return h1_scale(mu[1 - a][cc], phi_E(i, orient.sigma_edge(o, mu[a])))


def _face_h1(i, j, c):
    return phi_quad(i, j, *c["mu"])


def _edge_curl(a, cc, o, i, c):
    mu = c["mu"]
    return curl_scale(mu[1 - a][cc], E_E(i, orient.sigma_edge(o, mu[a])))


def _face_curl(first, i, j, c):
    s, t = c["mu"] if first == 0 else c["mu"][::-1]
    return E_quad(i, j, s, t)


def _l2(i, j, c):
    mx, my = c["mu"]
    return homog_P(0, i, mx) * homog_P(0, j, my) * cross(mx[1].g, my[1].g)


def _rotated(fn, c):
    return rotate_2d(fn(c))


def _curl_family(space, ctx):
    p = ctx.orders
    for e, (a, cc) in enumerate(_EDGES):
        pe = ctx.edge_order(e, p[a])
        for i in range(pe):
            yield ShapeIndex(space, EDGE, e, 1, (i,)), partial(_edge_curl, a, cc, ctx.o(EDGE, e), i)
    for i in range(p[0]):
        for j in range(2, p[1] + 1):
            yield ShapeIndex(space, INTERIOR, 0, 1, (i, j)), partial(_face_curl, 0, i, j)
    for i in range(p[1]):
        for j in range(2, p[0] + 1):
            yield ShapeIndex(space, INTERIOR, 0, 2, (i, j)), partial(_face_curl, 1, i, j)


def build(space, ctx):
    p = ctx.orders
    if space == "H1":
        for v, (a, b) in enumerate(_VERTEX_AB):
            yield ShapeIndex(space, VERTEX, v, 1, ()), partial(_vertex, a, b)
        for e, (a, cc) in enumerate(_EDGES):
            pe = ctx.edge_order(e, p[a])
            for i in range(2, pe + 1):
                yield ShapeIndex(space, EDGE, e, 1, (i,)), partial(_edge_h1, a, cc, ctx.o(EDGE, e), i)
        for i in range(2, p[0] + 1):
            for j in range(2, p[1] + 1):
                yield ShapeIndex(space, INTERIOR, 0, 1, (i, j)), partial(_face_h1, i, j)
    elif space == "Hcurl":
        yield from _curl_family(space, ctx)
    elif space == "Hdiv":
        for idx, fn in _curl_family(space, ctx):
            yield idx, partial(_rotated, fn)
    else:
        for i in range(p[0]):
            for j in range(p[1]):
                yield ShapeIndex(space, INTERIOR, 0, 1, (i, j)), partial(_l2, i, j)


QUAD = ShapeDef(
    name="quad",
    dim=2,
    vertices=np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]),
    edges=_EDGE_VERTS,
    faces=(),
    n_orders=2,
    spaces=("H1", "Hcurl", "Hdiv", "L2"),
    coords=coords,
    build=build,
    measure=1.0,
)
