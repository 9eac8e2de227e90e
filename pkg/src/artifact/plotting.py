"""PNG renderings of lattice tabulations (matplotlib, headless)."""

from __future__ import annotations

import numpy as np

__all__ = ["render"]


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _magnitude(value):
    return value if value.ndim == 1 else np.linalg.norm(value, axis=-1)


def render(path, tab, columns, title=None):
    """Draw the selected functions of a :class:`~artifact.elements.Tabulation`.

    1D shapes get line plots; 2D shapes get filled triangulated contours
    of the value (magnitude for vector fields) with arrows on top; 3D
    shapes get a scatter of the lattice coloured by the value magnitude.
    """
    plt = _pyplot()
    pts = tab.points
    dim = pts.shape[1]
    n = len(columns)
    ncols = min(n, 3)
    nrows = (n + ncols - 1) // ncols
    kw = {"subplot_kw": {"projection": "3d"}} if dim == 3 else {}
    fig, axes = plt.subplots(nrows, ncols, figsize=(4.2 * ncols, 3.6 * nrows), squeeze=False, **kw)
    for ax in axes.ravel()[n:]:
        ax.set_visible(False)
    for ax, j in zip(axes.ravel(), columns):
        value = tab.value[:, j]
        mag = _magnitude(value)
        label = tab.indices[j].label()
        if dim == 1:
            order = np.argsort(pts[:, 0])
            ax.plot(pts[order, 0], value[order], marker=".")
            ax.set_xlabel("x")
        elif dim == 2:
            if len(pts) >= 3:
                cs = ax.tricontourf(pts[:, 0], pts[:, 1], mag, levels=20)
                fig.colorbar(cs, ax=ax)
            if value.ndim == 2:
                ax.quiver(pts[:, 0], pts[:, 1], value[:, 0], value[:, 1], color="white")
            ax.set_aspect("equal")
            ax.set_xlabel("x")
            ax.set_ylabel("y")
        else:
            sc = ax.scatter(pts[:, 0], pts[:, 1], pts[:, 2], c=mag, s=12)
            fig.colorbar(sc, ax=ax, shrink=0.7)
            ax.set_xlabel("x")
            ax.set_ylabel("y")
            ax.set_zlabel("z")
        ax.set_title(label, fontsize=8)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path
