"""Local-to-global permutations of coordinate tuples on edges and faces.

The permutation tables are plain data: entry ``k`` of a row names which
input slot lands in output slot ``k``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError

__all__ = [
    "EDGE",
    "QUAD_FACE",
    "TRI_FACE",
    "SIGMA_EDGE",
    "SIGMA_QUAD",
    "SIGMA_TRI",
    "OrientationTag",
    "sigma_edge",
    "sigma_quad",
    "sigma_tri",
    "kappa",
    "quad_swaps_pairs",
    "global_order",
    "orientation_from_global",
    "count_orientations",
]

EDGE = "edge"
QUAD_FACE = "quad_face"
TRI_FACE = "tri_face"

SIGMA_EDGE = ((0, 1), (1, 0))

# (s0, s1, t0, t1) -> slot indices
SIGMA_QUAD = (
    (0, 1, 2, 3),
    (2, 3, 1, 0),
    (1, 0, 3, 2),
    (3, 2, 0, 1),
    (2, 3, 0, 1),
    (1, 0, 2, 3),
    (3, 2, 1, 0),
    (0, 1, 3, 2),
)

SIGMA_TRI = (
    (0, 1, 2),
    (1, 2, 0),
    (2, 0, 1),
    (0, 2, 1),
    (1, 0, 2),
    (2, 1, 0),
)

_TABLES = {EDGE: SIGMA_EDGE, QUAD_FACE: SIGMA_QUAD, TRI_FACE: SIGMA_TRI}


def count_orientations(kind):
    return len(_table(kind))


def _table(kind):
    try:
        return _TABLES[kind]
    except KeyError:
        raise ConfigError(f"unknown entity kind {kind!r}") from None


def _check_o(kind, o):
    n = len(_table(kind))
    if not isinstance(o, (int,)) or isinstance(o, bool) or not 0 <= o < n:
        raise ConfigError(f"orientation {o!r} invalid for {kind} (expected 0..{n - 1})")
    return o


@dataclass(frozen=True)
class OrientationTag:
    kind: str
    o: int = 0

    def __post_init__(self):
        _check_o(self.kind, self.o)


def _apply(table, o, tup):
    perm = table[o]
    if len(tup) != len(perm):
        raise ConfigError(f"expected a tuple of length {len(perm)}, got {len(tup)}")
    return tuple(tup[k] for k in perm)


def sigma_edge(o, pair):
    return _apply(SIGMA_EDGE, _check_o(EDGE, o), tuple(pair))


def sigma_quad(o, quadruple):
    return _apply(SIGMA_QUAD, _check_o(QUAD_FACE, o), tuple(quadruple))


def sigma_tri(o, triple):
    return _apply(SIGMA_TRI, _check_o(TRI_FACE, o), tuple(triple))


def kappa(o):
    """Parity of a triangle orientation: 0 for rotations, 1 for reflections."""
    _check_o(TRI_FACE, o)
    return 0 if o <= 2 else 1


def quad_swaps_pairs(o):
    """True when the first global pair of a quad face comes from the second local pair."""
    return SIGMA_QUAD[_check_o(QUAD_FACE, o)][0] >= 2


# Local quad vertex a, b, c, d is the common zero-free support of one s-slot
# and one t-slot: a ~ (s0, t0), b ~ (s1, t0), c ~ (s1, t1), d ~ (s0, t1).
_QUAD_SLOTS = (frozenset((0, 2)), frozenset((1, 2)), frozenset((1, 3)), frozenset((0, 3)))


def _induced_order(kind, o, local):
    perm = _table(kind)[o]
    if kind != QUAD_FACE:
        return tuple(local[m] for m in perm)
    by_slots = {slots: v for slots, v in zip(_QUAD_SLOTS, local)}
    want = (
        frozenset((perm[0], perm[2])),
        frozenset((perm[1], perm[2])),
        frozenset((perm[1], perm[3])),
        frozenset((perm[0], perm[3])),
    )
    return tuple(by_slots[w] for w in want)


def global_order(kind, vertex_ids):
    """Deterministic global ordering of an entity's vertices.

    Edges and triangles: ascending ids.  Quads (``vertex_ids`` listed
    cyclically): start at the smallest id, step towards its smaller
    neighbour, and continue around the cycle.
    """
    ids = tuple(vertex_ids)
    if kind in (EDGE, TRI_FACE):
        return tuple(sorted(ids))
    if kind != QUAD_FACE or len(ids) != 4:
        raise ConfigError(f"cannot order {ids!r} as {kind}")
    k = ids.index(min(ids))
    nxt, prv = ids[(k + 1) % 4], ids[(k - 1) % 4]
    step = 1 if nxt < prv else -1
    return tuple(ids[(k + step * m) % 4] for m in range(4))


def orientation_from_global(kind, local_vertex_ids, global_vertex_ids):
    """Find the tag ``o`` whose permutation carries the local ordering to the global one."""
    local = tuple(local_vertex_ids)
    glob = tuple(global_vertex_ids)
    if sorted(local) != sorted(glob) or len(set(local)) != len(local):
        raise ConfigError(f"vertex sets differ: {local!r} vs {glob!r}")
    for o in range(len(_table(kind))):
        if _induced_order(kind, o, local) == glob:
            return OrientationTag(kind, o)
    raise ConfigError(f"{glob!r} is not an admissible {kind} ordering of {local!r}")


def induced_order(kind, o, local_vertex_ids):
    """Global vertex ordering implied by tag ``o`` on a locally ordered entity."""
    _check_o(kind, o)
    return _induced_order(kind, o, tuple(local_vertex_ids))
