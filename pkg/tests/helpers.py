"""Independent oracles shared by the test modules."""

import numpy as np

from artifact import elements as el

FD_STEP = 1e-5


def interior_points(shape, m, seed=0, margin=0.9):
    """Random points well inside a master element."""
    rng = np.random.default_rng(seed)
    sd = el.get_shape(shape)
    out = []
    while len(out) < m:
        x = rng.uniform(0.05, 0.95, sd.dim)
        if shape in ("triangle", "tet") and x.sum() > margin:
            continue
        if shape == "prism" and x[0] + x[1] > margin:
            continue
        if shape == "pyramid" and max(x[0], x[1]) + x[2] > margin:
            continue
        out.append(x)
    return np.array(out)


def fd_differential(shape, space, orders, pts, h=FD_STEP, **kw):
    """Central-difference gradient / curl / divergence of every basis function."""
    n = pts.shape[1]

    def values(x):
        v = el.evaluate(shape, space, orders, x, **kw).value
        return v if v.ndim == 3 else v[..., None]

    base = values(pts)
    D = np.zeros(base.shape + (n,))
    for d in range(n):
        e = np.zeros(n)
        e[d] = h
        D[..., d] = (values(pts + e) - values(pts - e)) / (2 * h)
    if space == "H1":
        return D[..., 0, :]
    if space == "Hdiv":
        return np.trace(D, axis1=2, axis2=3)
    if n == 2:
        return D[..., 1, 0] - D[..., 0, 1]
    return np.stack([D[..., 2, 1] - D[..., 1, 2], D[..., 0, 2] - D[..., 2, 0], D[..., 1, 0] - D[..., 0, 1]], -1)


def relative_gap(approx, exact):
    return float(np.max(np.abs(approx - exact) / np.maximum(np.abs(exact), 1.0)))


def entity_points(shape, verts, m, seed=0):
    """Random points on the closed hull of some master vertices, kept off the corners."""
    sd = el.get_shape(shape)
    V = sd.vertices[list(verts)]
    rng = np.random.default_rng(seed)
    if len(verts) == 4:  # parallelogram face listed cyclically
        st = rng.uniform(0.05, 0.95, size=(m, 2))
        return V[0] + st[:, :1] * (V[1] - V[0]) + st[:, 1:] * (V[3] - V[0])
    w = rng.dirichlet(np.ones(len(verts)), size=m)
    return (0.05 + 0.9 * w) @ V / (0.05 * len(verts) + 0.9)
