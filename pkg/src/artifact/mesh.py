"""Affine hybrid meshes: element maps, orientation tags, pullbacks and shared traces."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from importlib import resources
from types import MappingProxyType

import numpy as np

from . import orient
from .elements import evaluate, get_shape
from .elements.base import EDGE, FACE, INTERIOR, VERTEX, normalize_space
from .errors import ConfigError, DimensionError, GeometryError

__all__ = [
    "AffineMap",
    "Element",
    "Mesh",
    "build",
    "load_mesh",
    "bundled_mesh",
    "pullback",
    "physical_tabulation",
    "entity_vertices",
    "shared_trace_samples",
    "proper_symmetries",
    "relabel",
]

_AFFINE_TOL = 1e-12


@dataclass(frozen=True)
class AffineMap:
    """``x = matrix @ xi + offset``."""

    matrix: np.ndarray
    offset: np.ndarray

    @property
    def det(self):
        return float(np.linalg.det(self.matrix))

    @property
    def dim(self):
        return self.matrix.shape[0]

    def __call__(self, xi):
        return np.asarray(xi, dtype=float) @ self.matrix.T + self.offset

    def inverse(self, x):
        return np.linalg.solve(self.matrix, (np.asarray(x, dtype=float) - self.offset).T).T

    def compose(self, inner):
        """``self ∘ inner``."""
        return AffineMap(self.matrix @ inner.matrix, self.matrix @ inner.offset + self.offset)


def _fit(master, phys, what):
    n, dim = master.shape
    design = np.hstack([master, np.ones((n, 1))])
    sol, *_ = np.linalg.lstsq(design, phys, rcond=None)
    scale = max(1.0, float(np.max(np.abs(phys))))
    if np.max(np.abs(design @ sol - phys)) > _AFFINE_TOL * scale:
        raise GeometryError(f"{what} is not an affine image of its master element (base must be a parallelogram)")
    amap = AffineMap(sol[:dim].T.copy(), sol[dim].copy())
    if not amap.det > 0:
        raise GeometryError(f"{what} has a non-positive Jacobian determinant ({amap.det:.3g})")
    return amap


def entity_vertices(sd, entity, entity_id):
    """Local vertex tuple of a catalog entity."""
    if entity == VERTEX:
        return (entity_id,)
    if entity == EDGE:
        return sd.edges[entity_id]
    if entity == FACE:
        return sd.faces[entity_id][1]
    return tuple(range(len(sd.vertices)))


@dataclass(frozen=True)
class Element:
    shape: str
    vertices: tuple  # global ids in master order
    map: AffineMap
    orientations: MappingProxyType  # (entity, local id) -> o

    def global_entity(self, entity, entity_id):
        """(kind, sorted global ids) of a local vertex, edge or face."""
        sd = get_shape(self.shape)
        ids = tuple(sorted(self.vertices[k] for k in entity_vertices(sd, entity, entity_id)))
        return entity, ids


@dataclass(frozen=True)
class Mesh:
    vertices: np.ndarray
    elements: tuple
    entities: MappingProxyType  # (kind, sorted ids) -> ((element, local id), ...)

    @property
    def dim(self):
        return self.vertices.shape[1]

    def shared_entities(self):
        return [key for key, inc in self.entities.items() if len(inc) >= 2]

    def to_json(self):
        return {
            "vertices": self.vertices.tolist(),
            "elements": [{"shape": e.shape, "vertices": list(e.vertices)} for e in self.elements],
        }


def build(vertices, elements):
    """Build a :class:`Mesh` from coordinates and ``(shape, global ids)`` pairs.

    ``elements`` entries may be mappings with ``shape`` and ``vertices`` keys
    or plain pairs.
    """
    pts = np.array(vertices, dtype=float)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ConfigError("vertices must be a non-empty list of coordinate lists")
    pts.setflags(write=False)
    built = []
    registry = {}
    for k, entry in enumerate(elements):
        if isinstance(entry, dict):
            try:
                shape, ids = entry["shape"], entry["vertices"]
            except KeyError as exc:
                raise ConfigError(f"element {k} lacks {exc.args[0]!r}") from None
        else:
            shape, ids = entry
        sd = get_shape(shape)
        ids = tuple(int(i) for i in ids)
        if len(ids) != len(sd.vertices):
            raise ConfigError(f"element {k}: {sd.name} needs {len(sd.vertices)} vertices, got {len(ids)}")
        if len(set(ids)) != len(ids) or min(ids) < 0 or max(ids) >= len(pts):
            raise ConfigError(f"element {k}: bad vertex ids {ids}")
        if sd.dim != pts.shape[1]:
            raise DimensionError(f"element {k}: {sd.name} needs {sd.dim}D vertices, mesh is {pts.shape[1]}D")
        amap = _fit(sd.vertices, pts[list(ids)], f"element {k} ({sd.name})")
        tags = {}
        for ent, eid in sd.oriented_entities():
            kind = sd.entity_kind(ent, eid)
            local = tuple(ids[v] for v in entity_vertices(sd, ent, eid))
            tags[(ent, eid)] = orient.orientation_from_global(kind, local, orient.global_order(kind, local)).o
        elem = Element(sd.name, ids, amap, MappingProxyType(tags))
        built.append(elem)
        locals_ = [(VERTEX, v) for v in range(len(ids))] + sd.oriented_entities()
        for ent, eid in locals_:
            registry.setdefault(elem.global_entity(ent, eid), []).append((k, eid))
    for key, inc in registry.items():
        if key[0] == FACE:
            kinds = {get_shape(built[k].shape).faces[eid][0] for k, eid in inc}
            if len(kinds) > 1:
                raise ConfigError(f"face {key[1]} is a triangle on one side and a quad on another")
    frozen = MappingProxyType({k: tuple(v) for k, v in registry.items()})
    return Mesh(pts, tuple(built), frozen)


def load_mesh(source):
    """Read a mesh from a JSON path, a JSON string or an already parsed mapping."""
    if isinstance(source, dict):
        data = source
    else:
        text = str(source)
        if text.lstrip().startswith("{"):
            data = json.loads(text)
        else:
            try:
                with open(text, encoding="utf-8") as fh:
                    data = json.load(fh)
            except OSError as exc:
                raise ConfigError(f"cannot read mesh file {text!r}: {exc.strerror}") from None
            except json.JSONDecodeError as exc:
                raise ConfigError(f"mesh file {text!r} is not valid JSON: {exc}") from None
    if not isinstance(data, dict) or "vertices" not in data or "elements" not in data:
        raise ConfigError("mesh JSON needs 'vertices' and 'elements'")
    return build(data["vertices"], data["elements"])


def bundled_mesh():
    """The four-element hybrid mesh shipped with the package (hex, prism, pyramid, tet)."""
    text = resources.files("artifact").joinpath("assets/hybrid_mesh.json").read_text(encoding="utf-8")
    return load_mesh(json.loads(text))


# --- pullbacks --------------------------------------------------------------


def pullback(space, amap, value, diff=None):
    """Carry master-element fields to physical coordinates.

    ``value``/``diff`` are laid out as in :class:`~artifact.elements.Tabulation`
    (leading axes arbitrary, vector components last).
    """
    sp = normalize_space(space)
    J = np.asarray(amap.matrix, dtype=float)
    det = float(np.linalg.det(J))
    if not abs(det) > 0:
        raise GeometryError("singular element map")
    Jinv = np.linalg.inv(J)
    value = np.asarray(value, dtype=float)
    if sp == "L2":
        return value / det, None
    diff = np.asarray(diff, dtype=float)
    cov = lambda a: np.einsum("...j,ji->...i", a, Jinv)  # J^{-T} a
    if sp == "H1":
        return value, cov(diff)
    if sp == "Hcurl":
        if J.shape[0] == 2:
            return cov(value), diff / det
        return cov(value), np.einsum("ij,...j->...i", J, diff) / det
    return np.einsum("ij,...j->...i", J, value) / det, diff / det


def physical_tabulation(mesh, k, space, orders, xi):
    """Evaluate element ``k``'s basis at master points ``xi``; returns (indices, value, diff) in physical form."""
    elem = mesh.elements[k]
    tab = evaluate(elem.shape, space, orders, xi, orientations=dict(elem.orientations))
    value, diff = pullback(tab.space, elem.map, tab.value, tab.diff)
    return tab.indices, value, diff


def dof_key(mesh, k, idx):
    """Global identity of an element-local basis function.

    Entity functions are keyed by the sorted global vertex ids of their
    entity; interior functions stay private to their element.
    """
    if idx.entity == INTERIOR or idx.space == "L2":
        owner = (INTERIOR, k)
    else:
        owner = mesh.elements[k].global_entity(idx.entity, idx.entity_id)
    return (idx.space,) + owner + (idx.family, idx.multi_index)


# --- shared-entity traces ---------------------------------------------------


def _entity_frame(mesh, kind, ids):
    """Ordered physical corners, a tangent and a normal (where defined) for a global entity."""
    pts = mesh.vertices
    if kind == VERTEX:
        return pts[list(ids)], None, None
    if kind == EDGE:
        corners = pts[list(ids)]
        t = corners[1] - corners[0]
        n = np.array([t[1], -t[0]]) if mesh.dim == 2 else None
        return corners, t, n
    if len(ids) == 4:
        ids = orient.global_order(orient.QUAD_FACE, _cyclic(mesh, ids))
    corners = pts[list(ids)]
    n = np.cross(corners[1] - corners[0], corners[-1] - corners[0])
    return corners, None, n


def _cyclic(mesh, ids):
    """Reorder four coplanar parallelogram corners cyclically."""
    c = mesh.vertices[list(ids)]
    centre = c.mean(axis=0)
    a = c[0] - centre
    normal = np.cross(c[1] - c[0], c[2] - c[0])
    if np.linalg.norm(normal) < 1e-14:
        normal = np.cross(c[1] - c[0], c[3] - c[0])
    b = np.cross(normal, a)
    ang = [np.arctan2(np.dot(v - centre, b), np.dot(v - centre, a)) for v in c]
    return tuple(ids[j] for j in np.argsort(ang))


def _entity_samples(corners, n_samples, rng):
    nc = len(corners)
    if nc == 1:
        return corners.copy()
    if nc == 2:
        t = rng.uniform(0.02, 0.98, size=(n_samples, 1))
        return (1 - t) * corners[0] + t * corners[1]
    if nc == 3:
        w = rng.dirichlet(np.ones(3), size=n_samples)
        w = 0.02 + 0.94 * w  # keep off the corners
        return w @ corners
    st = rng.uniform(0.02, 0.98, size=(n_samples, 2))
    return corners[0] + st[:, :1] * (corners[1] - corners[0]) + st[:, 1:] * (corners[3] - corners[0])


def _trace(space, value, t, n, dim):
    if space == "H1":
        return value[..., None]
    if space == "Hcurl":
        if t is not None:
            return np.einsum("...i,i->...", value, t)[..., None]
        return np.cross(n, value)
    return np.einsum("...i,i->...", value, n)[..., None]


def trace_kinds(space, dim):
    """Entity kinds that carry a trace for ``space`` in ``dim`` dimensions."""
    sp = normalize_space(space)
    if sp == "L2":
        return ()
    if dim == 1:
        return (VERTEX,) if sp == "H1" else ()
    if sp == "H1":
        return (EDGE, FACE)
    if sp == "Hcurl":
        return (EDGE, FACE)
    return (EDGE,) if dim == 2 else (FACE,)


def shared_trace_samples(mesh, entity, space, orders, n_samples=20, seed=0):
    """Physical traces of every basis function of every incident element on a shared entity.

    Returns ``(points, per_element)`` where ``per_element`` lists, for each
    incident element, a dict mapping the global DOF key to its trace
    samples of shape (n_samples, components).
    """
    kind, ids = entity
    sp = normalize_space(space)
    corners, t, n = _entity_frame(mesh, kind, ids)
    rng = np.random.default_rng(seed)
    x = _entity_samples(corners, n_samples, rng)
    out = []
    for k, _ in mesh.entities[entity]:
        elem = mesh.elements[k]
        xi = elem.map.inverse(x)
        indices, value, _ = physical_tabulation(mesh, k, sp, orders, xi)
        tr = _trace(sp, value, t, n, mesh.dim)  # (m, nfun, comps)
        out.append((k, {dof_key(mesh, k, idx): tr[:, j] for j, idx in enumerate(indices)}))
    return x, out


# --- relabelings ------------------------------------------------------------

_ANCHORS = {"segment": (0, 1), "quad": (0, 1, 3), "triangle": (0, 1, 2), "hex": (0, 1, 3, 4),
            "tet": (0, 1, 2, 3), "prism": (0, 1, 2, 3), "pyramid": (0, 1, 3, 4)}


def proper_symmetries(shape):
    """Vertex permutations induced by orientation-preserving affine self-maps of a master element."""
    sd = get_shape(shape)
    V = sd.vertices
    anchors = _ANCHORS[sd.name]
    nv = len(V)
    found = []
    for images in itertools.permutations(range(nv), len(anchors)):
        try:
            amap = _fit(V[list(anchors)], V[list(images)], "candidate")
        except GeometryError:
            continue
        mapped = amap(V)
        perm = []
        for y in mapped:
            hit = np.flatnonzero(np.max(np.abs(V - y), axis=1) < 1e-12)
            if len(hit) != 1:
                break
            perm.append(int(hit[0]))
        if len(perm) == nv and len(set(perm)) == nv:
            found.append(tuple(perm))
    return sorted(set(found))


def relabel(mesh, vertex_perm=None, listings=None):
    """Rebuild a mesh with renumbered global vertices and/or rotated element listings.

    ``vertex_perm`` maps old global id to new id (a dict or sequence);
    ``listings`` maps element index to a proper symmetry ``perm`` so that
    the new listing is ``old[perm[j]]`` for local vertex ``j``.
    """
    nv = len(mesh.vertices)
    if vertex_perm is None:
        new_id = list(range(nv))
    elif isinstance(vertex_perm, dict):
        new_id = [vertex_perm.get(i, i) for i in range(nv)]
    else:
        new_id = list(vertex_perm)
    if sorted(new_id) != list(range(nv)):
        raise ConfigError("vertex relabeling must be a permutation")
    pts = np.empty_like(mesh.vertices)
    pts[new_id] = mesh.vertices
    elems = []
    for k, e in enumerate(mesh.elements):
        ids = e.vertices
        if listings and k in listings:
            ids = tuple(ids[j] for j in listings[k])
        elems.append((e.shape, [new_id[i] for i in ids]))
    return build(pts, elems)
