"""Tetrahedron with vertices at the origin and the three unit points."""

from functools import partial
from itertools import combinations

import numpy as np

from .. import orient
from ..ancillary import Coord, E_E, E_tri, V_tri, cross, homog_L, homog_P, phi_E, phi_tri
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
    pairs_by_total,
    rot,
    triples_by_total,
    vertex_h1,
)

_EDGES = tuple(combinations(range(4), 2))
_FACES = tuple(combinations(range(4), 3))
# family -> (blending coordinate, face triple)
_INTERIOR = {1: (3, (0, 1, 2)), 2: (0, (1, 2, 3)), 3: (1, (2, 3, 0))}


def lambdas(points):
    n = points.shape[0]
    g = np.vstack([-np.ones(3), np.eye(3)])
    vals = (1.0 - points.sum(axis=1), points[:, 0], points[:, 1], points[:, 2])
    return tuple(Coord(v, np.tile(gk, (n, 1))) for v, gk in zip(vals, g))


def coords(points):
    return {"lam": lambdas(points)}


def _pick(c, idx):
    return tuple(c["lam"][k] for k in idx)


def _edge(c, e, o):
    return orient.sigma_edge(o, _pick(c, _EDGES[e]))


def _face(c, f, o):
    return orient.sigma_tri(o, _pick(c, _FACES[f]))


def _blend(alpha, k, lam):
    return as_coord(homog_L(alpha, k, (1.0 - lam, lam)))


def _vertex(a, c):
    return vertex_h1(c["lam"][a])


def _edge_h1(e, o, i, c):
    return phi_E(i, _edge(c, e, o))


def _face_h1(f, o, i, j, c):
    return phi_tri(i, j, _face(c, f, o))


def _bubble_h1(i, j, k, c):
    lam = c["lam"]
    return h1_scale(_blend(2 * (i + j), k, lam[3]), phi_tri(i, j, lam[:3]))


def _edge_curl(e, o, i, c):
    return E_E(i, _edge(c, e, o))


def _face_curl(f, o, fam, i, j, c):
    s = _face(c, f, o)
    return E_tri(i, j, s if fam == 1 else rot(s))


def _bubble_curl(fam, i, j, k, c):
    m, tri = _INTERIOR[fam]
    return curl_scale(_blend(2 * (i + j), k, c["lam"][m]), E_tri(i, j, _pick(c, tri)))


def _face_div(f, o, i, j, c):
    return V_tri(i, j, _face(c, f, o))


def _bubble_div(fam, i, j, k, c):
    m, tri = _INTERIOR[fam]
    return div_scale(_blend(2 * (i + j + 1), k, c["lam"][m]), V_tri(i, j, _pick(c, tri)))


def _l2(i, j, k, c):
    l0, l1, l2, l3 = c["lam"]
    jac = np.einsum("ni,ni->n", cross(l1.g, l2.g), l3.g)
    return (
        homog_P(0, i, (l0, l1))
        * homog_P(2 * i + 1, j, (l0 + l1, l2))
        * homog_P(2 * (i + j + 1), k, (1.0 - l3, l3))
        * jac
    )


def build(space, ctx):
    (p,) = ctx.orders
    if space == "H1":
        for a in range(4):
            yield ShapeIndex(space, VERTEX, a, 1, ()), partial(_vertex, a)
        for e in range(6):
            for i in range(2, ctx.edge_order(e, p) + 1):
                yield ShapeIndex(space, EDGE, e, 1, (i,)), partial(_edge_h1, e, ctx.o(EDGE, e), i)
        for f in range(4):
            (pf,) = ctx.entity_orders(FACE, f, (p,))
            for i, j in pairs_by_total(3, pf, 2, 1):
                yield ShapeIndex(space, FACE, f, 1, (i, j)), partial(_face_h1, f, ctx.o(FACE, f), i, j)
        for i, j, k in triples_by_total(4, p, 2, 1, 1):
            yield ShapeIndex(space, INTERIOR, 0, 1, (i, j, k)), partial(_bubble_h1, i, j, k)
    elif space == "Hcurl":
        for e in range(6):
            for i in range(ctx.edge_order(e, p)):
                yield ShapeIndex(space, EDGE, e, 1, (i,)), partial(_edge_curl, e, ctx.o(EDGE, e), i)
        for f in range(4):
            (pf,) = ctx.entity_orders(FACE, f, (p,))
            for fam in (1, 2):
                for i, j in pairs_by_total(1, pf - 1, 0, 1):
                    yield ShapeIndex(space, FACE, f, fam, (i, j)), partial(_face_curl, f, ctx.o(FACE, f), fam, i, j)
        for fam in (1, 2, 3):
            for i, j, k in triples_by_total(2, p - 1, 0, 1, 1):
                yield ShapeIndex(space, INTERIOR, 0, fam, (i, j, k)), partial(_bubble_curl, fam, i, j, k)
    elif space == "Hdiv":
        for f in range(4):
            (pf,) = ctx.entity_orders(FACE, f, (p,))
            for i, j in pairs_by_total(0, pf - 1, 0, 0):
                yield ShapeIndex(space, FACE, f, 1, (i, j)), partial(_face_div, f, ctx.o(FACE, f), i, j)
        for fam in (1, 2, 3):
            for i, j, k in triples_by_total(1, p - 1, 0, 0, 1):
                yield ShapeIndex(space, INTERIOR, 0, fam, (i, j, k)), partial(_bubble_div, fam, i, j, k)
    else:
        for i, j, k in triples_by_total(0, p - 1, 0, 0, 0):
            yield ShapeIndex(space, INTERIOR, 0, 1, (i, j, k)), partial(_l2, i, j, k)


TET = ShapeDef(
    name="tet",
    dim=3,
    vertices=np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]),
    edges=_EDGES,
    faces=tuple((orient.TRI_FACE, f) for f in _FACES),
    n_orders=1,
    spaces=("H1", "Hcurl", "Hdiv", "L2"),
    coords=coords,
    build=build,
    measure=1.0 / 6.0,
)
