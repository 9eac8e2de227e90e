"""Shifted scaled Legendre and Jacobi polynomials on [0, t].

Every routine evaluates the whole ladder of indices at once, because the
element formulas always need all of them.  Arguments broadcast, so ``x``
and ``t`` may be arrays of sample points.

Conventions
-----------
``P_i(x; t)`` is the Legendre polynomial shifted to [0, t] and scaled so
that ``P_i(x; t) = P_i(x / t) t**i``.  The integrated polynomials satisfy
``dL_i/dx = P_{i-1}`` and ``dL_i/dt = R_{i-1}``.  Jacobi polynomials are
``P^(alpha, 0)`` shifted to [0, t]; the three-term recursion below makes
them orthogonal under the weight ``(t - x)**alpha``, which is the factor
``(s0 + s1)**alpha`` seen by the triangle constructions.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import CapabilityError, ConfigError

__all__ = [
    "P_SUPPORTED",
    "ScaledArgument",
    "legendre_batch",
    "integrated_legendre_batch",
    "jacobi_batch",
    "integrated_jacobi_batch",
    "homog_eval",
    "homog_ladder",
    "ladders",
]

P_SUPPORTED = 20


class ScaledArgument(NamedTuple):
    x: object
    t: object = 1.0


def _unpack(arg):
    if isinstance(arg, ScaledArgument):
        x, t = arg
    elif isinstance(arg, tuple) and len(arg) == 2:
        x, t = arg
    else:
        x, t = arg, 1.0
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    x, t = np.broadcast_arrays(x, t)
    return x, t


def _check(pmax, lowest=0):
    if int(pmax) != pmax or pmax < lowest:
        raise ConfigError(f"pmax must be an integer >= {lowest}, got {pmax!r}")
    if pmax > P_SUPPORTED:
        raise CapabilityError(f"pmax={pmax} exceeds the supported cap {P_SUPPORTED}")


def _check_alpha(alpha):
    if int(alpha) != alpha or alpha < 0:
        raise ConfigError(f"alpha must be a non-negative integer, got {alpha!r}")


def _legendre(x, t, pmax):
    out = np.empty((pmax + 1,) + x.shape)
    out[0] = 1.0
    if pmax >= 1:
        y = 2.0 * x - t
        out[1] = y
        tt = t * t
        for i in range(2, pmax + 1):
            out[i] = ((2 * i - 1) * y * out[i - 1] - (i - 1) * tt * out[i - 2]) / i
    return out


def _jacobi(alpha, x, t, pmax):
    if alpha == 0:
        return _legendre(x, t, pmax)
    out = np.empty((pmax + 1,) + x.shape)
    out[0] = 1.0
    if pmax >= 1:
        y = 2.0 * x - t
        out[1] = y + alpha * x
        tt = t * t
        a2 = alpha * alpha
        for i in range(2, pmax + 1):
            a = 2 * i * (i + alpha) * (2 * i + alpha - 2)
            b = 2 * i + alpha - 1
            c = (2 * i + alpha) * (2 * i + alpha - 2)
            d = 2 * (i + alpha - 1) * (i - 1) * (2 * i + alpha)
            out[i] = (b * (c * y + a2 * t) * out[i - 1] - d * tt * out[i - 2]) / a
    return out


def legendre_batch(arg, pmax):
    """Return ``[P_0, ..., P_pmax]`` at ``arg = (x, t)`` stacked on axis 0."""
    _check(pmax)
    x, t = _unpack(arg)
    return _legendre(x, t, pmax)


def jacobi_batch(alpha, arg, pmax):
    """Return ``[P_0^alpha, ..., P_pmax^alpha]`` stacked on axis 0.

    Each alpha runs its own fixed-alpha three-term recursion; alpha = 0
    takes the Legendre path verbatim.
    """
    _check(pmax)
    _check_alpha(alpha)
    x, t = _unpack(arg)
    return _jacobi(int(alpha), x, t, pmax)


def _integrated(alpha, x, t, pmax, P):
    L = np.zeros((pmax + 1,) + x.shape)
    R = np.zeros((pmax,) + x.shape)
    L[1] = x
    tt = t * t
    for i in range(2, pmax + 1):
        if alpha == 0:
            L[i] = (P[i] - tt * P[i - 2]) / (2.0 * (2 * i - 1))
        else:
            a = (i + alpha) / ((2 * i + alpha - 1) * (2 * i + alpha))
            b = alpha / ((2 * i + alpha - 2) * (2 * i + alpha))
            c = (i - 1) / ((2 * i + alpha - 2) * (2 * i + alpha - 1))
            L[i] = a * P[i] + b * t * P[i - 1] - c * tt * P[i - 2]
    for i in range(1, pmax):
        if alpha == 0:
            R[i] = -0.5 * (P[i] + t * P[i - 1])
        else:
            R[i] = -(i / (2.0 * i + alpha)) * (P[i] + t * P[i - 1])
    return L, R


def integrated_legendre_batch(arg, pmax):
    """Integrated Legendre ladder.

    Returns ``(L, R)`` where ``L[i]`` holds ``L_i`` for ``1 <= i <= pmax``
    (row 0 is zero padding so that rows line up with indices) and ``R[i]``
    holds ``R_i`` for ``0 <= i <= pmax - 1``.
    """
    _check(pmax, lowest=1)
    x, t = _unpack(arg)
    P = _legendre(x, t, pmax)
    return _integrated(0, x, t, pmax, P)


def integrated_jacobi_batch(alpha, arg, pmax):
    """Integrated Jacobi ladder, laid out like :func:`integrated_legendre_batch`."""
    _check(pmax, lowest=1)
    _check_alpha(alpha)
    x, t = _unpack(arg)
    P = _jacobi(int(alpha), x, t, pmax)
    return _integrated(int(alpha), x, t, pmax, P)


def ladders(alpha, x, t, pmax):
    """Return ``(P, L, R)`` ladders for one alpha in a single recursion pass.

    Layout as in :func:`jacobi_batch` and :func:`integrated_jacobi_batch`;
    ``pmax`` must be at least 1.
    """
    _check(pmax, lowest=1)
    x, t = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
    P = _jacobi(int(alpha), x, t, pmax)
    L, R = _integrated(int(alpha), x, t, pmax, P)
    return P, L, R


_KINDS = {"P", "L", "R", "P^a", "L^a", "R^a"}


def homog_ladder(kind, pmax, s0, s1, alpha=0):
    """Homogenized ladder ``[psi_i](s0, s1) = psi_i(s1; s0 + s1)`` for all indices.

    ``kind`` is one of ``P``, ``L``, ``R`` (Legendre family) or ``P^a``,
    ``L^a``, ``R^a`` (Jacobi with the given ``alpha``).  Indexing follows the
    batch routines.
    """
    if kind not in _KINDS:
        raise ConfigError(f"unknown polynomial kind {kind!r}")
    s0 = np.asarray(s0, dtype=float)
    s1 = np.asarray(s1, dtype=float)
    arg = ScaledArgument(s1, s0 + s1)
    a = alpha if kind.endswith("^a") else 0
    base = kind[0]
    if base == "P":
        return jacobi_batch(a, arg, pmax)
    L, R = integrated_jacobi_batch(a, arg, max(pmax, 1))
    return L if base == "L" else R


def homog_eval(kind, index, s0, s1, alpha=0):
    """Single homogenized value ``[psi_index](s0, s1)``."""
    if index < 0:
        raise ConfigError("index must be non-negative")
    base = kind[0]
    if base == "L" and index == 0:
        raise ConfigError("L_0 is not defined")
    if base == "R":
        if index == 0:
            return np.zeros(np.broadcast(np.asarray(s0), np.asarray(s1)).shape)[()]
        return homog_ladder(kind, index + 1, s0, s1, alpha)[index]
    return homog_ladder(kind, index, s0, s1, alpha)[index]
