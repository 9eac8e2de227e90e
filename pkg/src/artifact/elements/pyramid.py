"""Pyramid over the unit square base with apex (0, 0, 1); vertices 0-3 on the base, 4 at the apex.

The coordinates are rational in zeta and blow up at the apex, so points
with ``1 - zeta <= ZETA_EPS`` are rejected.
"""

from functools import partial

import numpy as np

from .. import orient
from ..ancillary import (
    Coord,
    E_E,
    E_quad,
    E_tri,
    V_pyr_lefteq,
    V_pyr_righteq,
    V_quad,
    V_tri,
    V_tri_scaled,
    ValueGrad,
    VecCurl,
    VecDiv,
    cross,
    dot,
    homog_P,
    phi_E,
    phi_quad,
    phi_tri,
)
from ..errors import PoleError
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
    half_sum_div,
    oriented_quad,
    pairs_by_total,
    quad_orders,
    rot,
    vertex_h1,
)

ZETA_EPS = 1e-12

# mixed edges and triangle faces: (direction a of the nu-triple, c of the blending mu in the other direction)
_MIXED = ((0, 0), (0, 1), (1, 0), (1, 1))
_MIXED_VERTS = ((0, 1), (3, 2), (0, 3), (1, 2))
_TRI_EDGE_VERTS = tuple((a, 4) for a in range(4))
_QUAD_FACE = (0, 1, 2, 3)
_TRI_FACE_VERTS = ((0, 1, 4), (3, 2, 4), (0, 3, 4), (1, 2, 4))
N_MIXED = 4
_O0 = 0  # every locally ordered triangle face triple is the nu-triple itself


def coords(points):
    x, y, z = points[:, 0], points[:, 1], points[:, 2]
    s = 1.0 - z
    if np.any(s <= ZETA_EPS):
        raise PoleError(f"pyramid point within {ZETA_EPS} of the apex")
    n = points.shape[0]
    zero = np.zeros(n)
    one = np.ones(n)
    mu1x = Coord(x / s, np.stack([1.0 / s, zero, x / s**2], axis=1))
    mu1y = Coord(y / s, np.stack([zero, 1.0 / s, y / s**2], axis=1))
    mux = (1.0 - mu1x, mu1x)
    muy = (1.0 - mu1y, mu1y)
    ez = np.stack([zero, zero, one], axis=1)
    muz = (Coord(s, -ez), Coord(z, ez))
    nux = (
        Coord(1.0 - x - z, np.stack([-one, zero, -one], axis=1)),
        Coord(x, np.stack([one, zero, zero], axis=1)),
        muz[1],
    )
    nuy = (
        Coord(1.0 - y - z, np.stack([zero, -one, -one], axis=1)),
        Coord(y, np.stack([zero, one, zero], axis=1)),
        muz[1],
    )
    lam = (mux[0] * nuy[0], mux[1] * nuy[0], mux[1] * nuy[1], mux[0] * nuy[1], muz[1])
    return {"mu": (mux, muy), "nu": (nux, nuy), "muz": muz, "lam": lam}


def _vertex(a, c):
    return vertex_h1(c["lam"][a])


def _edge_args(c, e, o):
    if e < N_MIXED:
        a, cc = _MIXED[e]
        return c["mu"][1 - a][cc], orient.sigma_edge(o, c["nu"][a][:2])
    return None, orient.sigma_edge(o, (c["lam"][e - N_MIXED], c["lam"][4]))


def _edge_h1(e, o, i, c):
    f, s = _edge_args(c, e, o)
    r = phi_E(i, s)
    return r if f is None else h1_scale(f, r)


def _edge_curl(e, o, i, c):
    f, s = _edge_args(c, e, o)
    r = E_E(i, s)
    return r if f is None else curl_scale(f, r)


def _tri_args(c, f, o):
    a, cc = _MIXED[f - 1]
    return c["mu"][1 - a][cc], c["nu"][a], orient.sigma_tri(o, c["nu"][a])


def _quad_h1(o, i, j, c):
    return h1_scale(c["muz"][0], phi_quad(i, j, *oriented_quad(o, *c["mu"])))


def _quad_curl(o, fam, i, j, c):
    s, t = oriented_quad(o, *c["mu"])
    if fam == 2:
        s, t = t, s
    return curl_scale(c["muz"][0] ** 2, E_quad(i, j, s, t))


def _quad_div(o, i, j, c):
    return div_scale(c["muz"][0] ** 3, V_quad(i, j, *oriented_quad(o, *c["mu"])))


def _tri_h1(f, o, i, j, c):
    m, _, s = _tri_args(c, f, o)
    return h1_scale(m, phi_tri(i, j, s))


def _tri_curl(f, o, fam, i, j, c):
    m, _, s = _tri_args(c, f, o)
    return curl_scale(m, E_tri(i, j, s if fam == 1 else rot(s)))


def _tri_div(f, o, i, j, c):
    m, nu, s = _tri_args(c, f, o)
    return half_sum_div(div_scale(m, V_tri(i, j, s)), V_tri_scaled(i, j, nu, m, _O0, o))


def _h1_bubble(i, j, k, c):
    return h1_scale(as_coord(phi_E(k, c["muz"])), phi_quad(i, j, *c["mu"]))


def _curl_bubble_gradient(i, j, k, c):
    r = _h1_bubble(i, j, k, c)
    return VecCurl(r.grad, np.zeros_like(r.grad))


def _blended_equad(fam, i, j, c):
    mux, muy = c["mu"]
    s, t = (mux, muy) if fam == 2 else (muy, mux)
    return E_quad(i, j, s, t)


def _curl_bubble_quad(fam, i, j, k, c):
    f = c["muz"][0] * as_coord(phi_E(k, c["muz"]))
    return curl_scale(f, _blended_equad(fam, i, j, c))


def _power_gradient(n, c):
    m0 = c["muz"][0]
    return (n * m0.v ** (n - 1))[:, None] * m0.g


def _curl_bubble_vertical(i, j, c):
    phi = phi_quad(i, j, c["mu"][1], c["mu"][0])
    g = _power_gradient(max(i, j), c)
    return VecCurl(phi.value[:, None] * g, cross(phi.grad, g))


def _div_bubble_curl(fam, i, j, k, c):
    r = _curl_bubble_quad(fam + 1, i, j, k, c)
    return VecDiv(r.curl, np.zeros(r.curl.shape[0]))


def _div_bubble_vertical(i, j, c):
    r = _curl_bubble_vertical(i, j, c)
    return VecDiv(r.curl, np.zeros(r.curl.shape[0]))


def _div_bubble_quad(i, j, k, c):
    f = c["muz"][0] ** 2 * as_coord(phi_E(k, c["muz"]))
    return div_scale(f, V_quad(i, j, *c["mu"]))


def _div_bubble_lefteq(i, j, c):
    zeta = c["muz"][1]
    return div_scale(zeta ** (max(i, j) - 1), V_pyr_lefteq(i, j, *c["mu"], c["muz"][0]))


def _div_bubble_righteq(fam, i, c):
    mux, muy = c["mu"]
    s, other = (mux, muy) if fam == 6 else (muy, mux)
    zeta = c["muz"][1]
    return div_scale(zeta ** (i - 1), V_pyr_righteq(i, s, other[1], c["muz"][0]))


def _l2(i, j, k, c):
    (nux, nuy), mux, muy, muz = c["nu"], *c["mu"], c["muz"]
    jac = dot(cross(nux[1].g, nuy[1].g), muz[1].g)
    return homog_P(0, i, mux) * homog_P(0, j, muy) * homog_P(0, k, muz) * jac


def build(space, ctx):
    (p,) = ctx.orders
    o_quad = ctx.o(FACE, 0)
    q1, q2 = quad_orders(o_quad, ctx.entity_orders(FACE, 0, (p, p)))

    def tri_order(f):
        return ctx.entity_orders(FACE, f, (p,))[0]

    if space == "H1":
        for a in range(5):
            yield ShapeIndex(space, VERTEX, a, 1, ()), partial(_vertex, a)
        for e in range(8):
            for i in range(2, ctx.edge_order(e, p) + 1):
                yield ShapeIndex(space, EDGE, e, 1, (i,)), partial(_edge_h1, e, ctx.o(EDGE, e), i)
        for i in range(2, q1 + 1):
            for j in range(2, q2 + 1):
                yield ShapeIndex(space, FACE, 0, 1, (i, j)), partial(_quad_h1, o_quad, i, j)
        for f in range(1, 5):
            for i, j in pairs_by_total(3, tri_order(f), 2, 1):
                yield ShapeIndex(space, FACE, f, 1, (i, j)), partial(_tri_h1, f, ctx.o(FACE, f), i, j)
        for i in range(2, p + 1):
            for j in range(2, p + 1):
                for k in range(2, p + 1):
                    yield ShapeIndex(space, INTERIOR, 0, 1, (i, j, k)), partial(_h1_bubble, i, j, k)
    elif space == "Hcurl":
        for e in range(8):
            for i in range(ctx.edge_order(e, p)):
                yield ShapeIndex(space, EDGE, e, 1, (i,)), partial(_edge_curl, e, ctx.o(EDGE, e), i)
        for fam, (oi, oj) in ((1, (q1, q2)), (2, (q2, q1))):
            for i in range(oi):
                for j in range(2, oj + 1):
                    yield ShapeIndex(space, FACE, 0, fam, (i, j)), partial(_quad_curl, o_quad, fam, i, j)
        for f in range(1, 5):
            for fam in (1, 2):
                for i, j in pairs_by_total(1, tri_order(f) - 1, 0, 1):
                    yield ShapeIndex(space, FACE, f, fam, (i, j)), partial(_tri_curl, f, ctx.o(FACE, f), fam, i, j)
        for i in range(2, p + 1):
            for j in range(2, p + 1):
                for k in range(2, p + 1):
                    yield ShapeIndex(space, INTERIOR, 0, 1, (i, j, k)), partial(_curl_bubble_gradient, i, j, k)
        for fam in (2, 3):
            for i in range(p):
                for j in range(2, p + 1):
                    for k in range(2, p + 1):
                        yield ShapeIndex(space, INTERIOR, 0, fam, (i, j, k)), partial(_curl_bubble_quad, fam, i, j, k)
        for i in range(2, p + 1):
            for j in range(2, p + 1):
                yield ShapeIndex(space, INTERIOR, 0, 4, (i, j)), partial(_curl_bubble_vertical, i, j)
    elif space == "Hdiv":
        for i in range(q1):
            for j in range(q2):
                yield ShapeIndex(space, FACE, 0, 1, (i, j)), partial(_quad_div, o_quad, i, j)
        for f in range(1, 5):
            for i, j in pairs_by_total(0, tri_order(f) - 1, 0, 0):
                yield ShapeIndex(space, FACE, f, 1, (i, j)), partial(_tri_div, f, ctx.o(FACE, f), i, j)
        for fam in (1, 2):
            for i in range(p):
                for j in range(2, p + 1):
                    for k in range(2, p + 1):
                        yield ShapeIndex(space, INTERIOR, 0, fam, (i, j, k)), partial(_div_bubble_curl, fam, i, j, k)
        for i in range(2, p + 1):
            for j in range(2, p + 1):
                yield ShapeIndex(space, INTERIOR, 0, 3, (i, j)), partial(_div_bubble_vertical, i, j)
        for i in range(p):
            for j in range(p):
                for k in range(2, p + 1):
                    yield ShapeIndex(space, INTERIOR, 0, 4, (i, j, k)), partial(_div_bubble_quad, i, j, k)
        for i in range(2, p + 1):
            for j in range(2, p + 1):
                yield ShapeIndex(space, INTERIOR, 0, 5, (i, j)), partial(_div_bubble_lefteq, i, j)
        for fam in (6, 7):
            for i in range(2, p + 1):
                yield ShapeIndex(space, INTERIOR, 0, fam, (i,)), partial(_div_bubble_righteq, fam, i)
    else:
        for i in range(p):
            for j in range(p):
                for k in range(p):
                    yield ShapeIndex(space, INTERIOR, 0, 1, (i, j, k)), partial(_l2, i, j, k)


PYRAMID = ShapeDef(
    name="pyramid",
    dim=3,
    vertices=np.array(
        [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    ),
    edges=_MIXED_VERTS + _TRI_EDGE_VERTS,
    faces=((orient.QUAD_FACE, _QUAD_FACE),) + tuple((orient.TRI_FACE, f) for f in _TRI_FACE_VERTS),
    n_orders=1,
    spaces=("H1", "Hcurl", "Hdiv", "L2"),
    coords=coords,
    build=build,
    measure=1.0 / 3.0,
)
