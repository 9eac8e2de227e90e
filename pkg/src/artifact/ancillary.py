"""Ancillary operators from which every shape function is assembled.

Each operator receives coordinate functions as :class:`Coord` objects
(values and gradients at a batch of points) and returns the field together
with its differential, using closed-form expressions rather than numerical
differentiation.  Arrays carry the point batch on axis 0; gradients and
vectors have a trailing axis of length N.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import orient
from .errors import DimensionError, IndexRangeError
from .poly import ladders

__all__ = [
    "AFFINE_TOL",
    "Coord",
    "ValueGrad",
    "VecCurl",
    "VecDiv",
    "cross",
    "dot",
    "homog_L",
    "homog_P",
    "phi_E",
    "E_E",
    "phi_quad",
    "E_quad",
    "V_quad",
    "phi_tri",
    "E_tri",
    "V_tri",
    "V_pyr_lefteq",
    "V_pyr_righteq",
    "V_tri_scaled",
    "rotate_2d",
]

AFFINE_TOL = 1e-14


class Coord:
    """A scalar field sampled at a batch of points: values ``v`` (n,) and gradients ``g`` (n, N)."""

    __slots__ = ("v", "g")

    def __init__(self, v, g):
        self.v = np.asarray(v, dtype=float)
        self.g = np.asarray(g, dtype=float)

    @classmethod
    def constant(cls, c, n, dim):
        return cls(np.full(n, float(c)), np.zeros((n, dim)))

    @property
    def dim(self):
        return self.g.shape[-1]

    def _lift(self, other):
        if isinstance(other, Coord):
            return other
        return Coord(np.broadcast_to(np.asarray(other, dtype=float), self.v.shape), np.zeros_like(self.g))

    def __add__(self, other):
        o = self._lift(other)
        return Coord(self.v + o.v, self.g + o.g)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return Coord(self.v - o.v, self.g - o.g)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return Coord(-self.v, -self.g)

    def __mul__(self, other):
        if not isinstance(other, Coord):
            c = np.asarray(other, dtype=float)
            return Coord(self.v * c, self.g * c[..., None] if c.ndim else self.g * c)
        return Coord(self.v * other.v, self.v[:, None] * other.g + other.v[:, None] * self.g)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Coord):
            return self * (1.0 / np.asarray(other, dtype=float))
        w = 1.0 / other.v
        return Coord(self.v * w, (self.g - (self.v * w)[:, None] * other.g) * w[:, None])

    def __pow__(self, k):
        k = int(k)
        if k == 0:
            return Coord(np.ones_like(self.v), np.zeros_like(self.g))
        return Coord(self.v**k, (k * self.v ** (k - 1))[:, None] * self.g)

    def __repr__(self):
        return f"Coord(v={self.v!r}, g={self.g!r})"


class ValueGrad(NamedTuple):
    value: np.ndarray
    grad: np.ndarray


class VecCurl(NamedTuple):
    vec: np.ndarray
    curl: np.ndarray


class VecDiv(NamedTuple):
    vec: np.ndarray
    div: np.ndarray


def cross(a, b):
    """Cross product on the last axis; for N = 2 the scalar ``a0 b1 - a1 b0``."""
    if a.shape[-1] == 2:
        return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]
    return _cross3(a, b)


def _cross3(a, b):
    # np.cross pays for axis juggling on every call; the explicit form is several times faster here
    a0, a1, a2 = a[..., 0], a[..., 1], a[..., 2]
    b0, b1, b2 = b[..., 0], b[..., 1], b[..., 2]
    return np.stack([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0], axis=-1)


def dot(a, b):
    return np.sum(a * b, axis=-1)


def _col(x):
    return np.asarray(x)[..., None]


def _sums_to_one(*cs):
    v = sum(c.v for c in cs)
    g = sum(c.g for c in cs)
    return bool(np.all(np.abs(v - 1.0) <= AFFINE_TOL) and np.all(np.abs(g) <= AFFINE_TOL))


def _zero_curl(n, dim):
    return np.zeros(n) if dim == 2 else np.zeros((n, 3))


def _need(cond, msg):
    if not cond:
        raise IndexRangeError(msg)


def _homog_L(alpha, j, s0, s1, affine):
    """Value and gradient of ``[L_j^alpha](s0, s1)``."""
    P, L, R = ladders(alpha, s1.v, s0.v + s1.v, j)
    if affine:
        g = _col(P[j - 1]) * s1.g
    else:
        g = _col(P[j - 1]) * s1.g + _col(R[j - 1]) * (s0.g + s1.g)
    return L[j], g


def _homog_P(alpha, i, s0, s1):
    P, _, _ = ladders(alpha, s1.v, s0.v + s1.v, max(i, 1))
    return P[i]


def homog_L(alpha, j, s):
    """``[L_j^alpha](s0, s1)`` with its gradient."""
    _need(j >= 1, f"homog_L needs j >= 1, got {j}")
    s0, s1 = s
    value, grad = _homog_L(alpha, j, s0, s1, _sums_to_one(s0, s1))
    return ValueGrad(value, grad)


def homog_P(alpha, i, s):
    """Values of ``[P_i^alpha](s0, s1)``."""
    _need(i >= 0, f"homog_P needs i >= 0, got {i}")
    return _homog_P(alpha, i, s[0], s[1])


def phi_E(i, s):
    """Edge bubble ``[L_i](s0, s1)`` with its gradient."""
    _need(i >= 2, f"phi_E needs i >= 2, got {i}")
    s0, s1 = s
    value, grad = _homog_L(0, i, s0, s1, _sums_to_one(s0, s1))
    return ValueGrad(value, grad)


def E_E(i, s):
    """Edge field ``[P_i](s0, s1)(s0 grad s1 - s1 grad s0)`` and its curl."""
    _need(i >= 0, f"E_E needs i >= 0, got {i}")
    s0, s1 = s
    dim = s0.dim
    if dim < 2:
        raise DimensionError("E_E needs N = 2 or 3")
    P = _homog_P(0, i, s0, s1)
    if _sums_to_one(s0, s1):
        return VecCurl(_col(P) * s1.g, _zero_curl(P.shape[0], dim))
    whitney = _col(s0.v) * s1.g - _col(s1.v) * s0.g
    c = cross(s0.g, s1.g)
    curl = (i + 2) * (P * c if dim == 2 else _col(P) * c)
    return VecCurl(_col(P) * whitney, curl)


def _scale_curl(f, curl):
    return f * curl if curl.ndim == 1 else _col(f) * curl


def phi_quad(i, j, s, t):
    _need(i >= 2 and j >= 2, f"phi_quad needs i, j >= 2, got {(i, j)}")
    a = phi_E(i, s)
    b = phi_E(j, t)
    return ValueGrad(a.value * b.value, _col(a.value) * b.grad + _col(b.value) * a.grad)


def E_quad(i, j, s, t):
    _need(i >= 0 and j >= 2, f"E_quad needs i >= 0, j >= 2, got {(i, j)}")
    e = E_E(i, s)
    f = phi_E(j, t)
    return VecCurl(_col(f.value) * e.vec, _scale_curl(f.value, e.curl) + cross(f.grad, e.vec))


def V_quad(i, j, s, t):
    if s[0].dim != 3:
        raise DimensionError("V_quad needs N = 3")
    _need(i >= 0 and j >= 0, f"V_quad needs i, j >= 0, got {(i, j)}")
    ei = E_E(i, s)
    ej = E_E(j, t)
    vec = cross(ei.vec, ej.vec)
    if _sums_to_one(*s) and _sums_to_one(*t):
        return VecDiv(vec, np.zeros(vec.shape[0]))
    return VecDiv(vec, dot(ej.vec, ei.curl) - dot(ei.vec, ej.curl))


def phi_tri(i, j, s):
    _need(i >= 2 and j >= 1, f"phi_tri needs i >= 2, j >= 1, got {(i, j)}")
    s0, s1, s2 = s
    e = phi_E(i, (s0, s1))
    lv, lg = _homog_L(2 * i, j, s0 + s1, s2, _sums_to_one(s0, s1, s2))
    return ValueGrad(e.value * lv, _col(lv) * e.grad + _col(e.value) * lg)


def E_tri(i, j, s):
    _need(i >= 0 and j >= 1, f"E_tri needs i >= 0, j >= 1, got {(i, j)}")
    s0, s1, s2 = s
    e = E_E(i, (s0, s1))
    lv, lg = _homog_L(2 * i + 1, j, s0 + s1, s2, _sums_to_one(s0, s1, s2))
    return VecCurl(_col(lv) * e.vec, _scale_curl(lv, e.curl) + cross(lg, e.vec))


def _psi_tri(i, j, s0, s1, s2):
    """``[P_i](s0, s1) [P_j^{2i+1}](s0 + s1, s2)``."""
    return _homog_P(0, i, s0, s1) * _homog_P(2 * i + 1, j, s0 + s1, s2)


def V_tri(i, j, s):
    if s[0].dim != 3:
        raise DimensionError("V_tri needs N = 3")
    _need(i >= 0 and j >= 0, f"V_tri needs i, j >= 0, got {(i, j)}")
    s0, s1, s2 = s
    psi = _psi_tri(i, j, s0, s1, s2)
    c12 = cross(s1.g, s2.g)
    if _sums_to_one(s0, s1, s2):
        return VecDiv(_col(psi) * c12, np.zeros(psi.shape[0]))
    w = _col(s0.v) * c12 + _col(s1.v) * cross(s2.g, s0.g) + _col(s2.v) * cross(s0.g, s1.g)
    return VecDiv(_col(psi) * w, (i + j + 3) * psi * dot(s0.g, c12))


def V_pyr_lefteq(i, j, sx, sy, t0):
    """Divergence-free curl of ``t0**2 (phi_i grad phi_j - phi_j grad phi_i) / 2``."""
    _need(i >= 2 and j >= 2, f"V_pyr_lefteq needs i, j >= 2, got {(i, j)}")
    a = phi_E(i, sx)
    b = phi_E(j, sy)
    mix = _col(a.value) * b.grad - _col(b.value) * a.grad
    vec = _col(t0.v**2) * cross(a.grad, b.grad) + _col(t0.v) * cross(t0.g, mix)
    return VecDiv(vec, np.zeros(vec.shape[0]))


def V_pyr_righteq(i, s, mu1, t0):
    """Divergence-free ``grad(t0**2 phi_i) x grad mu1``."""
    _need(i >= 2, f"V_pyr_righteq needs i >= 2, got {i}")
    a = phi_E(i, s)
    g = _col(t0.v**2) * a.grad + _col(2.0 * t0.v * a.value) * t0.g
    vec = cross(g, mu1.g)
    return VecDiv(vec, np.zeros(vec.shape[0]))


def V_tri_scaled(i, j, s, mu, o0, o):
    """``V_tri(i, j, sigma(mu s0, mu s1, s2)) / mu`` without dividing by ``mu``.

    ``sigma`` applies the triangle permutation ``o0`` and then ``o``.  The
    triple ``s`` must sum to one.  Stays finite as ``mu`` goes to zero.
    """
    if s[0].dim != 3:
        raise DimensionError("V_tri_scaled needs N = 3")
    _need(i >= 0 and j >= 0, f"V_tri_scaled needs i, j >= 0, got {(i, j)}")
    s0, s1, s2 = s
    scaled = orient.sigma_tri(o, orient.sigma_tri(o0, (mu * s0, mu * s1, s2)))
    psi = _psi_tri(i, j, *scaled)
    plain = orient.sigma_tri(o, orient.sigma_tri(o0, (s0, s1, s2)))
    v00 = V_tri(0, 0, plain).vec
    pair = orient.sigma_edge(orient.kappa(o), orient.sigma_edge(orient.kappa(o0), (s0, s1)))
    e0 = E_E(0, pair).vec
    vec = _col(psi) * (_col(mu.v) * v00 + _col(s2.v) * cross(mu.g, e0))
    div = psi * dot(mu.g, (i + j + 3) * cross(e0, s2.g) - v00)
    return VecDiv(vec, div)


def rotate_2d(field):
    """Turn a 2D curl-conforming field into a div-conforming one: ``(E2, -E1)``, div = curl."""
    v = field.vec
    return VecDiv(np.stack([v[:, 1], -v[:, 0]], axis=1), field.curl)
