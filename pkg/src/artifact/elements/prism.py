"""Prism: triangle (0,0), (1,0), (0,1) extruded over z in [0, 1]; vertices 3-5 sit above 0-2."""

from functools import partial
from itertools import combinations

import numpy as np

from .. import orient
from ..ancillary import (
    Coord,
    E_E,
    E_quad,
    E_tri,
    V_quad,
    V_tri,
    VecDiv,
    cross,
    dot,
    homog_P,
    phi_E,
    phi_quad,
    phi_tri,
)
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
    pairs_by_total,
    quad_orders,
    rot,
    vertex_h1,
)

_PAIRS = tuple(combinations(range(3), 2))
# (kind, (a, b) or a, c)
_MIXED = tuple(((a, b), c) for c in (0, 1) for a, b in _PAIRS)
_EDGES = tuple((a + 3 * c, b + 3 * c) for (a, b), c in _MIXED) + tuple((a, a + 3) for a in range(3))
_TRI_FACES = ((0, 1, 2), (3, 4, 5))
_QUAD_FACES = tuple((a, b, b + 3, a + 3) for a, b in _PAIRS)
N_MIXED = len(_MIXED)


def coords(points):
    n = points.shape[0]
    x, y, z = points[:, 0], points[:, 1], points[:, 2]
    ez = np.tile([0.0, 0.0, 1.0], (n, 1))
    nu = (
        Coord(1.0 - x - y, np.tile([-1.0, -1.0, 0.0], (n, 1))),
        Coord(x, np.tile([1.0, 0.0, 0.0], (n, 1))),
        Coord(y, np.tile([0.0, 1.0, 0.0], (n, 1))),
    )
    return {"nu": nu, "mu": (Coord(1.0 - z, -ez), Coord(z, ez))}


def _vertex(a, cc, c):
    return vertex_h1(c["nu"][a] * c["mu"][cc])


def _mixed(c, e, o):
    (a, b), cc = _MIXED[e]
    return c["mu"][cc], orient.sigma_edge(o, (c["nu"][a], c["nu"][b]))


def _vert_edge(c, e, o):
    return c["nu"][e - N_MIXED], orient.sigma_edge(o, c["mu"])


def _edge_h1(e, o, i, c):
    f, s = _mixed(c, e, o) if e < N_MIXED else _vert_edge(c, e, o)
    return h1_scale(f, phi_E(i, s))


def _edge_curl(e, o, i, c):
    f, s = _mixed(c, e, o) if e < N_MIXED else _vert_edge(c, e, o)
    return curl_scale(f, E_E(i, s))


def _tri(c, f, o):
    return c["mu"][f], orient.sigma_tri(o, c["nu"])


def _quad(c, f, o):
    a, b = _PAIRS[f - 2]
    return oriented_quad(o, (c["nu"][a], c["nu"][b]), c["mu"])


def _tri_h1(f, o, i, j, c):
    m, s = _tri(c, f, o)
    return h1_scale(m, phi_tri(i, j, s))


def _quad_h1(f, o, i, j, c):
    return phi_quad(i, j, *_quad(c, f, o))


def _tri_curl(f, o, fam, i, j, c):
    m, s = _tri(c, f, o)
    return curl_scale(m, E_tri(i, j, s if fam == 1 else rot(s)))


def _quad_curl(f, o, fam, i, j, c):
    s, t = _quad(c, f, o)
    return E_quad(i, j, s, t) if fam == 1 else E_quad(i, j, t, s)


def _tri_div(f, o, i, j, c):
    m, s = _tri(c, f, o)
    return div_scale(m, V_tri(i, j, s))


def _quad_div(f, o, i, j, c):
    return V_quad(i, j, *_quad(c, f, o))


def _bubble_h1(i, j, k, c):
    return h1_scale(as_coord(phi_E(k, c["mu"])), phi_tri(i, j, c["nu"]))


def _bubble_curl(fam, i, j, k, c):
    if fam == 3:
        return curl_scale(as_coord(phi_tri(i, j, c["nu"])), E_E(k, c["mu"]))
    s = c["nu"] if fam == 1 else rot(c["nu"])
    return curl_scale(as_coord(phi_E(k, c["mu"])), E_tri(i, j, s))


def _bubble_div(fam, i, j, k, c):
    if fam == 3:
        return div_scale(as_coord(phi_E(k, c["mu"])), V_tri(i, j, c["nu"]))
    s = c["nu"] if fam == 1 else rot(c["nu"])
    et = E_tri(i, j, s)
    ek = E_E(k, c["mu"])
    return VecDiv(cross(et.vec, ek.vec), dot(ek.vec, et.curl) - dot(et.vec, ek.curl))


def _l2(i, j, k, c):
    n0, n1, n2 = c["nu"]
    m = c["mu"]
    jac = dot(cross(n1.g, n2.g), m[1].g)
    return homog_P(0, i, (n0, n1)) * homog_P(2 * i + 1, j, (n0 + n1, n2)) * homog_P(0, k, m) * jac


def _quad_face_orders(ctx, f):
    o = ctx.o(FACE, f)
    return o, quad_orders(o, ctx.entity_orders(FACE, f, ctx.orders))


def build(space, ctx):
    p, q = ctx.orders

    def edge_order(e):
        return ctx.edge_order(e, p if e < N_MIXED else q)

    def tri_order(f):
        return ctx.entity_orders(FACE, f, (p,))[0]

    if space == "H1":
        for cc in (0, 1):
            for a in range(3):
                yield ShapeIndex(space, VERTEX, a + 3 * cc, 1, ()), partial(_vertex, a, cc)
        for e in range(len(_EDGES)):
            for i in range(2, edge_order(e) + 1):
                yield ShapeIndex(space, EDGE, e, 1, (i,)), partial(_edge_h1, e, ctx.o(EDGE, e), i)
        for f in (0, 1):
            for i, j in pairs_by_total(3, tri_order(f), 2, 1):
                yield ShapeIndex(space, FACE, f, 1, (i, j)), partial(_tri_h1, f, ctx.o(FACE, f), i, j)
        for f in (2, 3, 4):
            o, (o1, o2) = _quad_face_orders(ctx, f)
            for i in range(2, o1 + 1):
                for j in range(2, o2 + 1):
                    yield ShapeIndex(space, FACE, f, 1, (i, j)), partial(_quad_h1, f, o, i, j)
        for i, j in pairs_by_total(3, p, 2, 1):
            for k in range(2, q + 1):
                yield ShapeIndex(space, INTERIOR, 0, 1, (i, j, k)), partial(_bubble_h1, i, j, k)
    elif space == "Hcurl":
        for e in range(len(_EDGES)):
            for i in range(edge_order(e)):
                yield ShapeIndex(space, EDGE, e, 1, (i,)), partial(_edge_curl, e, ctx.o(EDGE, e), i)
        for f in (0, 1):
            for fam in (1, 2):
                for i, j in pairs_by_total(1, tri_order(f) - 1, 0, 1):
                    yield ShapeIndex(space, FACE, f, fam, (i, j)), partial(_tri_curl, f, ctx.o(FACE, f), fam, i, j)
        for f in (2, 3, 4):
            o, (o1, o2) = _quad_face_orders(ctx, f)
            for fam, (oi, oj) in ((1, (o1, o2)), (2, (o2, o1))):
                for i in range(oi):
                    for j in range(2, oj + 1):
                        yield ShapeIndex(space, FACE, f, fam, (i, j)), partial(_quad_curl, f, o, fam, i, j)
        for fam in (1, 2):
            for i, j in pairs_by_total(1, p - 1, 0, 1):
                for k in range(2, q + 1):
                    yield ShapeIndex(space, INTERIOR, 0, fam, (i, j, k)), partial(_bubble_curl, fam, i, j, k)
        for i, j in pairs_by_total(3, p, 2, 1):
            for k in range(q):
                yield ShapeIndex(space, INTERIOR, 0, 3, (i, j, k)), partial(_bubble_curl, 3, i, j, k)
    elif space == "Hdiv":
        for f in (0, 1):
            for i, j in pairs_by_total(0, tri_order(f) - 1, 0, 0):
                yield ShapeIndex(space, FACE, f, 1, (i, j)), partial(_tri_div, f, ctx.o(FACE, f), i, j)
        for f in (2, 3, 4):
            o, (o1, o2) = _quad_face_orders(ctx, f)
            for i in range(o1):
                for j in range(o2):
                    yield ShapeIndex(space, FACE, f, 1, (i, j)), partial(_quad_div, f, o, i, j)
        for fam in (1, 2):
            for i, j in pairs_by_total(1, p - 1, 0, 1):
                for k in range(q):
                    yield ShapeIndex(space, INTERIOR, 0, fam, (i, j, k)), partial(_bubble_div, fam, i, j, k)
        for i, j in pairs_by_total(0, p - 1, 0, 0):
            for k in range(2, q + 1):
                yield ShapeIndex(space, INTERIOR, 0, 3, (i, j, k)), partial(_bubble_div, 3, i, j, k)
    else:
        for i, j in pairs_by_total(0, p - 1, 0, 0):
            for k in range(q):
                yield ShapeIndex(space, INTERIOR, 0, 1, (i, j, k)), partial(_l2, i, j, k)


PRISM = ShapeDef(
    name="prism",
    dim=3,
    vertices=np.array(
        [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 1.0], [0.0, 1.0, 1.0]]
    ),
    edges=_EDGES,
    faces=tuple((orient.TRI_FACE, f) for f in _TRI_FACES) + tuple((orient.QUAD_FACE, f) for f in _QUAD_FACES),
    n_orders=2,
    spaces=("H1", "Hcurl", "Hdiv", "L2"),
    coords=coords,
    build=build,
    measure=0.5,
)
