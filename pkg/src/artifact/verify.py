"""Projection-based verification: Gram systems, polynomial reproduction,
exact-sequence membership and cross-element trace compatibility.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import mesh as meshmod
from . import orient
from .elements import count as _count
from .elements import evaluate, get_shape
from .elements.base import EDGE, FACE, INTERIOR, SPACES, VERTEX, normalize_orders, normalize_space
from .errors import ConditioningError, ConfigError
from .quadrature import rule_for

__all__ = [
    "TOL_REPRO",
    "TOL_SEQ",
    "TOL_TRACE",
    "TOL_LOCALITY",
    "PIVOT_EPS",
    "GramSystem",
    "ProjectionReport",
    "CompatibilityReport",
    "gram",
    "cholesky",
    "solve_spd",
    "monomial_targets",
    "reproduce_polynomials",
    "exact_sequence",
    "compatibility",
    "composition_residual",
    "quadrature_size",
]

TOL_REPRO = 1e-9
TOL_SEQ = 1e-9
TOL_TRACE = 1e-10
TOL_LOCALITY = 1e-9
PIVOT_EPS = 1e-13  # relative to the largest diagonal entry


@dataclass
class GramSystem:
    matrix: np.ndarray
    rhs: np.ndarray | None
    space: str
    n_quad: int | None = None


@dataclass
class ProjectionReport:
    target: str
    space: str
    domain: str
    p: object
    relative_error: float
    coefficients: np.ndarray = field(repr=False)
    tol: float = TOL_REPRO
    locality_error: float = 0.0
    kind: str = "reproduce"

    @property
    def passed(self):
        ok = self.relative_error <= self.tol
        if self.kind == "sequence":
            ok = ok and self.locality_error <= TOL_LOCALITY
        return bool(ok)

    def to_dict(self):
        out = {
            "target": self.target,
            "space": self.space,
            "shape_or_mesh": self.domain,
            "p": self.p,
            "relative_error": float(self.relative_error),
            "pass": self.passed,
        }
        if self.kind == "sequence":
            out["locality_error"] = float(self.locality_error)
        return out


@dataclass
class CompatibilityReport:
    space: str
    domain: str
    p: object
    max_mismatch: float
    max_unmatched: float
    n_configurations: int
    n_entities: int
    coverage: dict = field(default_factory=dict, repr=False)
    tol: float = TOL_TRACE

    @property
    def passed(self):
        return bool(self.max_mismatch <= self.tol and self.max_unmatched <= self.tol and self.coverage_complete)

    @property
    def coverage_complete(self):
        return all(seen == want for seen, want in self.coverage.values())

    def to_dict(self):
        return {
            "target": "trace compatibility",
            "space": self.space,
            "shape_or_mesh": self.domain,
            "p": self.p,
            "relative_error": float(max(self.max_mismatch, self.max_unmatched)),
            "pass": self.passed,
            "configurations": self.n_configurations,
            "shared_entities": self.n_entities,
        }


# --- Gram systems and the SPD solver ------------------------------------------


def _components(a, m):
    """View pointwise data as (m, n, components) or (m, components)."""
    a = np.asarray(a, dtype=float)
    if a.ndim == 1 or (a.ndim == 2 and m is not None and a.shape[1] == m):
        return a[..., None]
    return a


def _as_field(a, extra_axis):
    a = np.asarray(a, dtype=float)
    return a[..., None] if a.ndim == extra_axis else a


def gram(space, value, diff, weights, target=None, n_quad=None):
    """Gram matrix (and optional right-hand side) in the space's energy inner product.

    ``value``/``diff`` hold basis samples shaped (m, n) or (m, n, c); the
    target, if given, is a pair of arrays shaped (m,)/(m, c) or with a
    trailing batch of targets (m, t, c).
    """
    sp = normalize_space(space)
    w = np.asarray(weights, dtype=float)
    parts = [_as_field(value, 2)]
    if sp != "L2":
        parts.append(_as_field(diff, 2))
    A = sum(_wdot(w, b, b) for b in parts)
    A = 0.5 * (A + A.T)
    rhs = None
    if target is not None:
        tparts = [_target_field(target[0])]
        if sp != "L2":
            tparts.append(_target_field(target[1]))
        rhs = sum(_wdot(w, b, t) for b, t in zip(parts, tparts))
    return GramSystem(A, rhs, sp, n_quad)


def _wdot(w, a, b):
    """``sum_m sum_c w_m a[m, i, c] b[m, j, c]`` through BLAS."""
    return np.tensordot(a * w[:, None, None], b, axes=([0, 2], [0, 2]))


def _combine(basis, coef):
    """``sum_n basis[m, n, c] coef[n, t]`` shaped (m, t, c)."""
    return np.matmul(basis.transpose(0, 2, 1), coef).transpose(0, 2, 1)


def _target_field(t):
    t = np.asarray(t, dtype=float)
    if t.ndim == 1:
        return t[:, None, None]
    if t.ndim == 2:
        return t[:, None, :]
    return t


def cholesky(A):
    """Lower Cholesky factor; a pivot at or below ``PIVOT_EPS * max(diag)`` raises :class:`ConditioningError`."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ConfigError("Cholesky needs a square matrix")
    L = np.zeros_like(A)
    tol = PIVOT_EPS * (np.max(np.diag(A)) if n else 0.0)
    for j in range(n):
        row = L[j, :j]
        d = A[j, j] - row @ row
        if not d > tol:
            raise ConditioningError(f"pivot {j} is {d:.3e}, below the threshold {tol:.3e}", j)
        L[j, j] = np.sqrt(d)
        L[j + 1 :, j] = (A[j + 1 :, j] - L[j + 1 :, :j] @ row) / L[j, j]
    return L


def _forward(L, b):
    y = np.array(b, dtype=float)
    for i in range(L.shape[0]):
        y[i] = (y[i] - L[i, :i] @ y[:i]) / L[i, i]
    return y


def _backward(L, y):
    x = np.array(y, dtype=float)
    n = L.shape[0]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - L[i + 1 :, i] @ x[i + 1 :]) / L[i, i]
    return x


def solve_spd(system, rhs=None):
    """Solve ``A x = b`` for SPD ``A`` by Cholesky; accepts a :class:`GramSystem` or a matrix plus rhs."""
    if isinstance(system, GramSystem):
        A, b = system.matrix, system.rhs if rhs is None else rhs
    else:
        A, b = system, rhs
    if b is None:
        raise ConfigError("solve_spd needs a right-hand side")
    L = cholesky(A)
    return _backward(L, _forward(L, b))


# --- monomial targets -----------------------------------------------------------


_TOTAL = ("triangle", "tet", "pyramid")
_TENSOR = ("segment", "quad", "hex")


def _exps_total(dim, deg):
    if deg < 0:
        return []
    return [e for e in itertools.product(range(deg + 1), repeat=dim) if sum(e) <= deg]


def _exps_box(bounds):
    if min(bounds) < 0:
        return []
    return list(itertools.product(*(range(b + 1) for b in bounds)))


def _exps_prism(deg_xy, deg_z):
    if deg_xy < 0 or deg_z < 0:
        return []
    return [(a, b, c) for a, b in _exps_total(2, deg_xy) for c in range(deg_z + 1)]


def _component_exps(family, dim, space, orders, k):
    """Exponents of the monomials spanning component ``k`` of the target space."""
    if family == "total":
        p = orders[0]
        return _exps_total(dim, p if space == "H1" else p - 1)
    if family == "tensor":
        o = list(orders)
        if space == "H1":
            return _exps_box(o)
        if space == "L2":
            return _exps_box([v - 1 for v in o])
        shift = -1 if space == "Hcurl" else 0
        other = 0 if space == "Hcurl" else -1
        return _exps_box([o[d] + (shift if d == k else other) for d in range(dim)])
    p, q = orders
    if space == "H1":
        return _exps_prism(p, q)
    if space == "L2":
        return _exps_prism(p - 1, q - 1)
    if space == "Hcurl":
        return _exps_prism(p - 1, q) if k < 2 else _exps_prism(p, q - 1)
    return _exps_prism(p - 1, q - 1) if k < 2 else _exps_prism(p - 1, q)


def monomial_targets(family, dim, space, orders):
    """``(label, exponents, component)`` triples; component is None for scalar spaces.

    ``family`` is ``total`` (simplices, pyramid, meshes), ``tensor``
    (segment, quad, hex) or ``prism``.
    """
    sp = normalize_space(space)
    if sp in ("H1", "L2"):
        return [(_mono_label(e, None, dim), e, None) for e in _component_exps(family, dim, sp, orders, 0)]
    out = []
    for k in range(dim):
        out.extend((_mono_label(e, k, dim), e, k) for e in _component_exps(family, dim, sp, orders, k))
    return out


def _mono_label(exps, comp, dim):
    names = "xyz"
    body = "*".join(f"{names[d]}^{a}" if a > 1 else names[d] for d, a in enumerate(exps) if a) or "1"
    return body if comp is None else f"e{names[comp]}*{body}"


def _shape_family(name):
    return "total" if name in _TOTAL else "tensor" if name in _TENSOR else "prism"


def _monomial(x, exps):
    """Value (m,) and gradient (m, N) of a monomial at points ``x``."""
    m, dim = x.shape
    val = np.ones(m)
    for d, a in enumerate(exps):
        val = val * x[:, d] ** a
    grad = np.zeros((m, dim))
    for d, a in enumerate(exps):
        if a:
            g = np.full(m, float(a))
            for e, b in enumerate(exps):
                g = g * x[:, e] ** (b - 1 if e == d else b)
            grad[:, d] = g
    return val, grad


def _target_data(space, x, exps, comp):
    """Target value and differential at points, shaped for :func:`gram`."""
    m, dim = x.shape
    val, grad = _monomial(x, exps)
    if space == "H1":
        return val[:, None], grad
    if space == "L2":
        return val[:, None], None
    vec = np.zeros((m, dim))
    vec[:, comp] = val
    if space == "Hdiv":
        return vec, grad[:, comp][:, None]
    if dim == 2:
        curl = grad[:, 0] if comp == 1 else -grad[:, 1]
        return vec, curl[:, None]
    e = np.zeros(3)
    e[comp] = 1.0
    return vec, np.cross(grad, e)


# --- projections ---------------------------------------------------------------


def quadrature_size(shape, orders):
    """Gauss points per direction used for verification integrals."""
    p = max(orders)
    return p + 3 if get_shape(shape).name == "pyramid" else p + 2


def _energy(space, w, value, diff):
    """Squared energy norm of pointwise fields; value/diff shaped (m, t, c)."""
    out = np.einsum("m,mtc,mtc->t", w, value, value)
    if space != "L2":
        out = out + np.einsum("m,mtc,mtc->t", w, diff, diff)
    return out


def _project(space, w, bval, bdiff, tval, tdiff):
    """Coefficients and relative errors for a batch of targets."""
    sys = gram(space, bval, bdiff, w, (tval, tdiff))
    coef = solve_spd(sys)
    bval = _as_field(bval, 2)
    hval = _combine(bval, coef)
    res_v = tval - hval
    if space != "L2":
        hdiff = _combine(_as_field(bdiff, 2), coef)
        res_d = tdiff - hdiff
    else:
        res_d = None
    num = _energy(space, w, res_v, res_d)
    den = _energy(space, w, tval, tdiff)
    rel = np.sqrt(np.maximum(num, 0.0) / np.where(den > 0, den, 1.0))
    return coef, rel


def _stack_targets(space, x, targets):
    vals, diffs = [], []
    for _, exps, comp in targets:
        v, d = _target_data(space, x, exps, comp)
        vals.append(v)
        diffs.append(d)
    tval = np.stack(vals, axis=1)
    tdiff = None if space == "L2" else np.stack(diffs, axis=1)
    return tval, tdiff


def _orders_label(orders):
    orders = tuple(orders)
    return orders[0] if len(set(orders)) == 1 else list(orders)


def reproduce_polynomials(domain, space, orders, n_quad=None, tol=TOL_REPRO):
    """Project every monomial target onto the discrete space; one report per target.

    ``domain`` is a shape name (single master element) or a :class:`~artifact.mesh.Mesh`.
    """
    sp = normalize_space(space)
    if isinstance(domain, meshmod.Mesh):
        return _reproduce_mesh(domain, sp, orders, n_quad, tol)
    sd = get_shape(domain)
    if sp not in sd.spaces:
        raise ConfigError(f"{sd.name} has no {sp} space")
    o = normalize_orders(sd, orders)
    n = n_quad or quadrature_size(sd.name, o)
    rule = rule_for(sd.name, n)
    tab = evaluate(sd.name, sp, o, rule.nodes)
    targets = monomial_targets(_shape_family(sd.name), sd.dim, sp, o)
    tval, tdiff = _stack_targets(sp, rule.nodes, targets)
    coef, rel = _project(sp, rule.weights, tab.value, tab.diff, tval, tdiff)
    return [
        ProjectionReport(label, sp, sd.name, _orders_label(o), float(r), coef[:, j], tol)
        for j, ((label, _, _), r) in enumerate(zip(targets, rel))
    ]


def _mesh_basis(mesh, space, p, n_quad):
    """Globally assembled basis samples at the physical quadrature points of every element."""
    chunks = []
    keys = {}
    for k, elem in enumerate(mesh.elements):
        sd = get_shape(elem.shape)
        o = normalize_orders(sd, p)
        rule = rule_for(sd.name, n_quad or quadrature_size(sd.name, o))
        indices, value, diff = meshmod.physical_tabulation(mesh, k, space, o, rule.nodes)
        cols = []
        for idx in indices:
            cols.append(keys.setdefault(meshmod.dof_key(mesh, k, idx), len(keys)))
        chunks.append((elem.map(rule.nodes), rule.weights * elem.map.det, cols, value, diff))
    nglob = len(keys)
    xs, ws, vals, diffs = [], [], [], []
    for x, w, cols, value, diff in chunks:
        m = x.shape[0]
        v = _as_field(value, 2)
        gv = np.zeros((m, nglob, v.shape[2]))
        np.add.at(gv, (slice(None), cols), v)
        vals.append(gv)
        if diff is not None:
            d = _as_field(diff, 2)
            gd = np.zeros((m, nglob, d.shape[2]))
            np.add.at(gd, (slice(None), cols), d)
            diffs.append(gd)
        xs.append(x)
        ws.append(w)
    diff = np.concatenate(diffs) if diffs else None
    return np.concatenate(xs), np.concatenate(ws), np.concatenate(vals), diff, keys


def _reproduce_mesh(mesh, sp, orders, n_quad, tol):
    p = int(orders) if np.ndim(orders) == 0 else int(max(orders))
    x, w, bval, bdiff, _ = _mesh_basis(mesh, sp, p, n_quad)
    targets = monomial_targets("total", mesh.dim, sp, (p,))
    tval, tdiff = _stack_targets(sp, x, targets)
    coef, rel = _project(sp, w, bval, bdiff, tval, tdiff)
    return [
        ProjectionReport(label, sp, "mesh", p, float(r), coef[:, j], tol)
        for j, ((label, _, _), r) in enumerate(zip(targets, rel))
    ]


# --- exact sequence --------------------------------------------------------------


def _entity_vertex_sets(sd, indices):
    return [frozenset(meshmod.entity_vertices(sd, i.entity, i.entity_id)) for i in indices]


def _sequence_steps(dim):
    if dim == 1:
        return [("H1", "L2", "d/dx")]
    if dim == 2:
        return [("H1", "Hcurl", "grad"), ("Hcurl", "L2", "curl"), ("Hdiv", "L2", "div")]
    return [("H1", "Hcurl", "grad"), ("Hcurl", "Hdiv", "curl"), ("Hdiv", "L2", "div")]


def _differential(src, dst, tab, dim):
    """Pointwise differential of every source function as a target batch for ``dst``."""
    m, n = tab.value.shape[:2]
    d = tab.diff
    if dst == "L2":
        return (d if d.ndim == 3 else d[..., None]), None
    if src == "H1":  # grad into H(curl); its curl vanishes
        zeros = np.zeros((m, n, 1 if dim == 2 else 3))
        return d, zeros
    return d, np.zeros((m, n, 1))  # curl into H(div); its divergence vanishes


def exact_sequence(shape, orders, n_quad=None, tol=TOL_SEQ):
    """Project each differential of each basis function onto the next space of the sequence.

    Besides the relative distance, each report records the largest
    coefficient placed on a function whose entity does not contain the
    source function's entity (scaled by the coefficient vector's size).
    """
    sd = get_shape(shape)
    o = normalize_orders(sd, orders)
    n = n_quad or quadrature_size(sd.name, o)
    rule = rule_for(sd.name, n)
    reports = []
    for src, dst, op in _sequence_steps(sd.dim):
        stab = evaluate(sd.name, src, o, rule.nodes)
        dtab = evaluate(sd.name, dst, o, rule.nodes)
        tval, tdiff = _differential(src, dst, stab, sd.dim)
        coef, rel = _project(dst, rule.weights, dtab.value, dtab.diff, tval, tdiff)
        src_sets = _entity_vertex_sets(sd, stab.indices)
        dst_sets = _entity_vertex_sets(sd, dtab.indices)
        for j, idx in enumerate(stab.indices):
            c = coef[:, j]
            scale = max(1.0, float(np.max(np.abs(c))) if c.size else 1.0)
            off = [abs(c[i]) for i, s in enumerate(dst_sets) if not s >= src_sets[j]]
            loc = max(off) / scale if off else 0.0
            reports.append(
                ProjectionReport(f"{op} {idx.label()}", dst, sd.name, _orders_label(o), float(rel[j]), c, tol,
                                 float(loc), "sequence")
            )
    return reports


def composition_residual(shape, orders, n_quad=None):
    """Largest energy norm of curl(grad) and div(curl) applied to discrete representatives.

    The H(curl) coefficients of each gradient are pushed through the curl
    (and the H(div) coefficients of each curl through the divergence);
    the result should vanish identically.
    """
    sd = get_shape(shape)
    if sd.dim < 2:
        return 0.0
    o = normalize_orders(sd, orders)
    rule = rule_for(sd.name, n_quad or quadrature_size(sd.name, o))
    w = rule.weights
    worst = 0.0
    chain = [("H1", "Hcurl", "Hdiv" if sd.dim == 3 else "L2")]
    if sd.dim == 3:
        chain.append(("Hcurl", "Hdiv", "L2"))
    for src, mid, _ in chain:
        stab = evaluate(sd.name, src, o, rule.nodes)
        mtab = evaluate(sd.name, mid, o, rule.nodes)
        tval, tdiff = _differential(src, mid, stab, sd.dim)
        coef, _ = _project(mid, w, mtab.value, mtab.diff, tval, tdiff)
        d = _as_field(mtab.diff, 2)
        img = _combine(d, coef)
        norms = np.sqrt(np.einsum("m,mtc,mtc->t", w, img, img))
        scale = np.maximum(1.0, np.max(np.abs(coef), axis=0))
        worst = max(worst, float(np.max(norms / scale)))
    return worst


# --- trace compatibility --------------------------------------------------------


def _entity_mismatch(mesh, entity, space, p, n_samples):
    _, per = meshmod.shared_trace_samples(mesh, entity, space, p, n_samples)
    keys = [set(d) for _, d in per]
    common = set.intersection(*keys)
    mismatch = 0.0
    for key in common:
        ref = per[0][1][key]
        for _, d in per[1:]:
            mismatch = max(mismatch, float(np.max(np.abs(d[key] - ref))))
    unmatched = 0.0
    for _, d in per:
        for key in set(d) - common:
            unmatched = max(unmatched, float(np.max(np.abs(d[key]))))
    return mismatch, unmatched


def _checked_entities(mesh, space, only=None):
    kinds = meshmod.trace_kinds(space, mesh.dim)
    out = []
    for ent in mesh.shared_entities():
        if ent[0] not in kinds:
            continue
        if only is not None and not only(ent):
            continue
        out.append(ent)
    return out


def _relabelings(mesh):
    """Vertex renumberings and listing rotations that sweep every shared-entity orientation.

    For each shared entity, renumber its vertices among themselves until
    every incident element has seen every admissible tag on it; then rotate
    each element's listing through its proper symmetries.
    """
    configs = []
    for ent in mesh.shared_entities():
        if ent[0] == VERTEX:
            continue
        ids = ent[1]
        seen = {}
        for perm in itertools.permutations(ids):
            vp = dict(zip(ids, perm))
            trial = meshmod.relabel(mesh, vp)
            new_ent = (ent[0], tuple(sorted(ids)))
            tags = tuple(trial.elements[k].orientations[(ent[0], eid)] for k, eid in trial.entities[new_ent])
            fresh = any(t not in seen.get(i, set()) for i, t in enumerate(tags))
            if fresh:
                for i, t in enumerate(tags):
                    seen.setdefault(i, set()).add(t)
                configs.append((vp, None, set(ids)))
    for k, elem in enumerate(mesh.elements):
        for sym in meshmod.proper_symmetries(elem.shape)[1:]:
            configs.append((None, {k: sym}, k))
    return configs


def _coverage_target(mesh, ent):
    k, eid = mesh.entities[ent][0]
    return orient.count_orientations(get_shape(mesh.elements[k].shape).entity_kind(ent[0], eid))


def compatibility(mesh, space, p, all_orientations=False, n_samples=20, tol=TOL_TRACE, label="mesh"):
    """Largest trace discrepancy between incident elements over all shared entities.

    Functions present on only one side must have a vanishing trace. With
    ``all_orientations`` the check is repeated on relabeled copies of the
    mesh (see :func:`_relabelings`), and the report records which
    orientation tags each shared entity has seen on each incident element.
    """
    sp = normalize_space(space)
    if sp == "L2":
        return CompatibilityReport(sp, label, p, 0.0, 0.0, 1, 0, {}, tol)
    base = _checked_entities(mesh, sp)
    mismatch = unmatched = 0.0
    for ent in base:
        a, b = _entity_mismatch(mesh, ent, sp, p, n_samples)
        mismatch, unmatched = max(mismatch, a), max(unmatched, b)
    coverage = {}
    n_configs = 1

    def record(m, back=None):
        # coverage is keyed by the original ids, so renumbered copies land on the same entity
        for ent in m.shared_entities():
            if ent[0] == VERTEX:
                continue
            orig = (ent[0], tuple(sorted(back.get(i, i) for i in ent[1]))) if back else ent
            for slot, (k, eid) in enumerate(m.entities[ent]):
                key = (orig, slot)
                seen = coverage.setdefault(key, [set(), _coverage_target(m, ent)])
                seen[0].add(m.elements[k].orientations[(ent[0], eid)])

    record(mesh)
    if all_orientations:
        for vp, listing, scope in _relabelings(mesh):
            m = meshmod.relabel(mesh, vp, listing)
            if listing is None:
                new_ids = {vp.get(i, i) for i in scope}
                only = lambda ent, s=new_ids: bool(s & set(ent[1]))
            else:
                only = lambda ent, k=scope, m=m: any(e == k for e, _ in m.entities[ent])
            for ent in _checked_entities(m, sp, only):
                a, b = _entity_mismatch(m, ent, sp, p, n_samples)
                mismatch, unmatched = max(mismatch, a), max(unmatched, b)
            record(m, {v: k for k, v in vp.items()} if vp else None)
            n_configs += 1
    cov = {k: (len(v[0]), v[1]) for k, v in coverage.items()} if all_orientations else {}
    return CompatibilityReport(sp, label, p, mismatch, unmatched, n_configs, len(base), cov, tol)


def all_spaces(shape_or_mesh):
    if isinstance(shape_or_mesh, meshmod.Mesh):
        return SPACES
    return get_shape(shape_or_mesh).spaces
