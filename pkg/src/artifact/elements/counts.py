"""Closed-form dimensions of every (shape, space) pair."""

from fractions import Fraction

from ..errors import CapabilityError


def _seg(space, p):
    return {"H1": p + 1, "L2": p}.get(space)


def _quad(space, p, q):
    return {
        "H1": (p + 1) * (q + 1),
        "Hcurl": p * (q + 1) + q * (p + 1),
        "Hdiv": p * (q + 1) + q * (p + 1),
        "L2": p * q,
    }[space]


def _tri(space, p):
    return {
        "H1": (p + 1) * (p + 2) // 2,
        "Hcurl": p * (p + 2),
        "Hdiv": p * (p + 2),
        "L2": p * (p + 1) // 2,
    }[space]


def _hex(space, p, q, r):
    return {
        "H1": (p + 1) * (q + 1) * (r + 1),
        "Hcurl": p * (q + 1) * (r + 1) + q * (r + 1) * (p + 1) + r * (p + 1) * (q + 1),
        "Hdiv": (p + 1) * q * r + p * (q + 1) * r + p * q * (r + 1),
        "L2": p * q * r,
    }[space]


def _tet(space, p):
    return {
        "H1": (p + 1) * (p + 2) * (p + 3) // 6,
        "Hcurl": p * (p + 2) * (p + 3) // 2,
        "Hdiv": p * (p + 1) * (p + 3) // 2,
        "L2": p * (p + 1) * (p + 2) // 6,
    }[space]


def _prism(space, p, q):
    half = Fraction(1, 2)
    val = {
        "H1": half * (p + 1) * (p + 2) * (q + 1),
        "Hcurl": p * (p + 2) * (q + 1) + half * (p + 1) * (p + 2) * q,
        "Hdiv": p * (p + 2) * q + half * p * (p + 1) * (q + 1),
        "L2": half * p * (p + 1) * q,
    }[space]
    return int(val)


def _pyramid(space, p):
    return {
        "H1": p**3 + 3 * p + 1,
        "Hcurl": 3 * p**3 + 5 * p,
        "Hdiv": 3 * p**3 + 2 * p,
        "L2": p**3,
    }[space]


_FORMS = {
    "segment": _seg,
    "quad": _quad,
    "triangle": _tri,
    "hex": _hex,
    "tet": _tet,
    "prism": _prism,
    "pyramid": _pyramid,
}


def closed_form(shape, space, orders):
    """Dimension of the discrete space from its closed form (no enumeration)."""
    val = _FORMS[shape](space, *orders)
    if val is None:
        raise CapabilityError(f"{shape} has no {space} space")
    return val
