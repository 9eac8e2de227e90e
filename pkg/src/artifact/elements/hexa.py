"""Hexahedron [0, 1]^3; vertices 0-3 on the bottom face counter-clockwise, 4-7 above them."""

from functools import partial

import numpy as np

from .. import orient
from ..ancillary import Coord, E_E, E_quad, V_quad, cross, homog_P, phi_E, phi_quad
from .base import (
    EDGE,
    FACE,
    INTERIOR,
    VERTEX,
    ShapeDef,
    ShapeIndex,
    as_coord,
    curl_scale,
    div_scale,
    h1_scale,
    oriented_quad,
    quad_orders,
    vertex_h1,
)

_CYCLE = ((0, 1, 2), (1, 2, 0), (2, 0, 1))
_SQUARE = ((0, 0), (1, 0), (1, 1), (0, 1))
_VERTS = np.array([[x, y, z] for z in (0.0, 1.0) for x, y in _SQUARE])


def _vid(pos):
    x, y, z = pos
    return 4 * z + _SQUARE.index((x, y))


def _edge_table():
    out = []
    for a, b, c in _CYCLE:
        for d in (0, 1):
            for e in (0, 1):
                ends = []
                for m in (0, 1):
                    pos = [0, 0, 0]
                    pos[a], pos[b], pos[c] = m, d, e
                    ends.append(_vid(pos))
                out.append(((a, b, c, d, e), tuple(ends)))
    return tuple(out)


def _face_table():
    out = []
    for a, b, c in _CYCLE:
        for d in (0, 1):
            verts = []
            for u, v in _SQUARE:
                pos = [0, 0, 0]
                pos[a], pos[b], pos[c] = u, v, d
                verts.append(_vid(pos))
            out.append(((a, b, c, d), tuple(verts)))
    return tuple(out)


EDGE_TABLE = _edge_table()
FACE_TABLE = _face_table()


def mu_pairs(points):
    n = points.shape[0]
    out = []
    for k in range(3):
        e = np.zeros((n, 3))
        e[:, k] = 1.0
        x = points[:, k]
        out.append((Coord(1.0 - x, -e), Coord(x, e)))
    return tuple(out)


def coords(points):
    return {"mu": mu_pairs(points)}


def _vertex(pos, c):
    mu = c["mu"]
    return vertex_h1(mu[0][pos[0]] * mu[1][pos[1]] * mu[2][pos[2]])


def _edge_h1(key, o, i, c):
    a, b, cc, d, e = key
    mu = c["mu"]
    return h1_scale(mu[cc][e] * mu[b][d], phi_E(i, orient.sigma_edge(o, mu[a])))


def _edge_curl(key, o, i, c):
    a, b, cc, d, e = key
    mu = c["mu"]
    return curl_scale(mu[cc][e] * mu[b][d], E_E(i, orient.sigma_edge(o, mu[a])))


def _face_pairs(key, o, c):
    a, b, cc, d = key
    mu = c["mu"]
    return mu[cc][d], oriented_quad(o, mu[a], mu[b])


def _face_h1(key, o, i, j, c):
    f, (s, t) = _face_pairs(key, o, c)
    return h1_scale(f, phi_quad(i, j, s, t))


def _face_curl(key, o, fam, i, j, c):
    f, (s, t) = _face_pairs(key, o, c)
    if fam == 2:
        s, t = t, s
    return curl_scale(f, E_quad(i, j, s, t))


def _face_div(key, o, i, j, c):
    f, (s, t) = _face_pairs(key, o, c)
    return div_scale(f, V_quad(i, j, s, t))


def _bubble_h1(i, j, k, c):
    mu = c["mu"]
    return h1_scale(as_coord(phi_E(k, mu[2])), phi_quad(i, j, mu[0], mu[1]))


# family -> (directions of the E/V pair, direction of the bubble factor)
_INTERIOR_DIRS = {1: (0, 1, 2), 2: (1, 2, 0), 3: (2, 0, 1)}


def _bubble_curl(fam, i, j, k, c):
    a, b, m = _INTERIOR_DIRS[fam]
    mu = c["mu"]
    return curl_scale(as_coord(phi_E(k, mu[m])), E_quad(i, j, mu[a], mu[b]))


def _bubble_div(fam, i, j, k, c):
    a, b, m = _INTERIOR_DIRS[fam]
    mu = c["mu"]
    return div_scale(as_coord(phi_E(k, mu[m])), V_quad(i, j, mu[a], mu[b]))


def _l2(i, j, k, c):
    m0, m1, m2 = c["mu"]
    jac = np.einsum("ni,ni->n", cross(m0[1].g, m1[1].g), m2[1].g)
    return homog_P(0, i, m0) * homog_P(0, j, m1) * homog_P(0, k, m2) * jac


def _face_orders(ctx, f, key):
    a, b = key[0], key[1]
    o = ctx.o(FACE, f)
    return o, quad_orders(o, ctx.entity_orders(FACE, f, (ctx.orders[a], ctx.orders[b])))


def build(space, ctx):
    p = ctx.orders
    if space == "H1":
        for v in range(8):
            pos = (int(_VERTS[v, 0]), int(_VERTS[v, 1]), int(_VERTS[v, 2]))
            yield ShapeIndex(space, VERTEX, v, 1, ()), partial(_vertex, pos)
        for e, (key, _) in enumerate(EDGE_TABLE):
            for i in range(2, ctx.edge_order(e, p[key[0]]) + 1):
                yield ShapeIndex(space, EDGE, e, 1, (i,)), partial(_edge_h1, key, ctx.o(EDGE, e), i)
        for f, (key, _) in enumerate(FACE_TABLE):
            o, (o1, o2) = _face_orders(ctx, f, key)
            for i in range(2, o1 + 1):
                for j in range(2, o2 + 1):
                    yield ShapeIndex(space, FACE, f, 1, (i, j)), partial(_face_h1, key, o, i, j)
        for i in range(2, p[0] + 1):
            for j in range(2, p[1] + 1):
                for k in range(2, p[2] + 1):
                    yield ShapeIndex(space, INTERIOR, 0, 1, (i, j, k)), partial(_bubble_h1, i, j, k)
    elif space == "Hcurl":
        for e, (key, _) in enumerate(EDGE_TABLE):
            for i in range(ctx.edge_order(e, p[key[0]])):
                yield ShapeIndex(space, EDGE, e, 1, (i,)), partial(_edge_curl, key, ctx.o(EDGE, e), i)
        for f, (key, _) in enumerate(FACE_TABLE):
            o, (o1, o2) = _face_orders(ctx, f, key)
            for fam, (oi, oj) in ((1, (o1, o2)), (2, (o2, o1))):
                for i in range(oi):
                    for j in range(2, oj + 1):
                        yield ShapeIndex(space, FACE, f, fam, (i, j)), partial(_face_curl, key, o, fam, i, j)
        for fam, (a, b, m) in _INTERIOR_DIRS.items():
            for i in range(p[a]):
                for j in range(2, p[b] + 1):
                    for k in range(2, p[m] + 1):
                        yield ShapeIndex(space, INTERIOR, 0, fam, (i, j, k)), partial(_bubble_curl, fam, i, j, k)
    elif space == "Hdiv":
        for f, (key, _) in enumerate(FACE_TABLE):
            o, (o1, o2) = _face_orders(ctx, f, key)
            for i in range(o1):
                for j in range(o2):
                    yield ShapeIndex(space, FACE, f, 1, (i, j)), partial(_face_div, key, o, i, j)
        for fam, (a, b, m) in _INTERIOR_DIRS.items():
            for i in range(p[a]):
                for j in range(p[b]):
                    for k in range(2, p[m] + 1):
                        yield ShapeIndex(space, INTERIOR, 0, fam, (i, j, k)), partial(_bubble_div, fam, i, j, k)
    else:
        for i in range(p[0]):
            for j in range(p[1]):
                for k in range(p[2]):
                    yield ShapeIndex(space, INTERIOR, 0, 1, (i, j, k)), partial(_l2, i, j, k)


HEX = ShapeDef(
    name="hex",
    dim=3,
    vertices=_VERTS,
    edges=tuple(v for _, v in EDGE_TABLE),
    faces=tuple((orient.QUAD_FACE, v) for _, v in FACE_TABLE),
    n_orders=3,
    spaces=("H1", "Hcurl", "Hdiv", "L2"),
    coords=coords,
    build=build,
    measure=1.0,
)
