"""``shapefn`` command-line front end.

Exit codes: 0 success (verification: every check passed), 1 a
verification check failed, 2 configuration error, 3 domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from collections import Counter
from pathlib import Path

import numpy as np

from . import mesh as meshmod
from . import verify
from .elements import SHAPES, contains, enumerate_shape, evaluate, get_shape, lattice, normalize_space
from .elements.base import EDGE, FACE, INTERIOR, VERTEX, normalize_orders
from .elements.counts import closed_form
from .errors import ConditioningError, ConfigError, DomainError

# --- formatting -----------------------------------------------------------------


def fmt_float(x):
    """Shortest round-trip decimal; scientific outside [1e-4, 1e6)."""
    x = float(x)
    if x == 0.0:
        return "0.0"
    if not np.isfinite(x):
        return repr(x)
    if 1e-4 <= abs(x) < 1e6:
        return repr(x)
    for digits in range(17):
        s = f"{x:.{digits}e}"
        if float(s) == x:
            mant, exp = s.split("e")
            return f"{mant}e{int(exp)}"
    return repr(x)


def _json(obj):
    """Deterministic JSON text with floats in :func:`fmt_float` form."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return fmt_float(x) if np.isfinite(x) else "null"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k), ensure_ascii=False)}: {_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _cell(v):
    if isinstance(v, (float, np.floating)):
        return fmt_float(v)
    if isinstance(v, (list, tuple)):
        return " ".join(str(e) for e in v)
    return str(v)


def _emit(rows, header, fmt, out):
    if fmt == "json":
        out.write("[\n" + ",\n".join("  " + _json(dict(zip(header, r))) for r in rows) + ("\n" if rows else "") + "]\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(v) for v in r])


# --- argument helpers --------------------------------------------------------------


def _orders(args, sd):
    vals = [args.p]
    if sd.n_orders >= 2:
        vals.append(args.q if args.q is not None else args.p)
    if sd.n_orders == 3:
        vals.append(args.r if args.r is not None else args.p)
    if sd.n_orders == 1 and (args.q is not None or args.r is not None):
        raise ConfigError(f"{sd.name} takes a single order; drop --q/--r")
    if sd.n_orders == 2 and args.r is not None:
        raise ConfigError(f"{sd.name} takes two orders; drop --r")
    return normalize_orders(sd, vals)


def _pairs(items, what):
    out = {}
    for item in items or ():
        for part in item.split(","):
            part = part.strip()
            if not part:
                continue
            key, sep, val = part.partition("=")
            if not sep:
                raise ConfigError(f"{what} entries look like edge0=1, got {part!r}")
            try:
                out[key.strip()] = int(val)
            except ValueError:
                raise ConfigError(f"{what} value must be an integer, got {val!r}") from None
    return out


def _orientations(args, sd):
    given = _pairs(args.orient, "orientation")
    if not given:
        return None
    full = {f"{e}{k}": 0 for e, k in sd.oriented_entities()}
    for key in given:
        if key.replace(":", "") not in full:
            raise ConfigError(f"{sd.name} has no oriented entity {key!r}")
    full.update({k.replace(":", ""): v for k, v in given.items()})
    return full


def _point(text, sd):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise ConfigError(f"point must be comma-separated numbers, got {text!r}") from None
    if len(vals) != sd.dim:
        raise ConfigError(f"{sd.name} points have {sd.dim} coordinate(s), got {len(vals)}")
    pt = np.array([vals])
    if not contains(sd, pt)[0]:
        raise DomainError(f"point {text} lies outside the master {sd.name}")
    return pt


_AXES = "xyz"


def _diff_name(space, dim):
    return {"H1": "grad", "Hcurl": "curl", "Hdiv": "div"}.get(space)


def _columns(space, dim):
    if space in ("H1", "L2"):
        vcols = ["value"]
    else:
        vcols = [f"value_{_AXES[d]}" for d in range(dim)]
    name = _diff_name(space, dim)
    if name is None:
        dcols = []
    elif space == "H1" or (space == "Hcurl" and dim == 3):
        dcols = [f"{name}_{_AXES[d]}" for d in range(dim)]
    else:
        dcols = [name]
    return vcols, dcols


def _flat(a):
    return [float(v) for v in np.atleast_1d(a)]


def _index_fields(k, idx):
    return [k, idx.label(), idx.entity, idx.entity_id, idx.family, list(idx.multi_index)]


_INDEX_HEADER = ["index", "label", "entity", "entity_id", "family", "multi_index"]


def _tab_rows(tab, select, with_points):
    dim = tab.points.shape[1]
    vcols, dcols = _columns(tab.space, dim)
    header = ([_AXES[d] for d in range(dim)] if with_points else []) + _INDEX_HEADER + vcols + dcols
    rows = []
    for m in range(tab.points.shape[0]):
        for k in select:
            idx = tab.indices[k]
            row = (_flat(tab.points[m]) if with_points else []) + _index_fields(k, idx)
            row += _flat(tab.value[m, k])
            if tab.diff is not None:
                row += _flat(tab.diff[m, k])
            rows.append(row)
    return header, rows


def _select(tab, wanted):
    if not wanted:
        return list(range(len(tab)))
    labels = {idx.label(): k for k, idx in enumerate(tab.indices)}
    out = []
    for w in wanted:
        for part in w.split(";"):
            part = part.strip()
            if part.isdigit():
                k = int(part)
                if not 0 <= k < len(tab):
                    raise ConfigError(f"function index {k} out of range 0..{len(tab) - 1}")
                out.append(k)
            elif part in labels:
                out.append(labels[part])
            else:
                raise ConfigError(f"unknown function {part!r}")
    return out


# --- commands --------------------------------------------------------------------


def cmd_eval(args, out):
    sd = get_shape(args.shape)
    space = normalize_space(args.space)
    orders = _orders(args, sd)
    pt = _point(args.point, sd)
    tab = evaluate(sd, space, orders, pt, _orientations(args, sd), _pairs(args.override, "override") or None)
    header, rows = _tab_rows(tab, range(len(tab)), with_points=False)
    _emit(rows, header, args.format, out)
    return 0


def cmd_count(args, out):
    sd = get_shape(args.shape)
    space = normalize_space(args.space)
    orders = _orders(args, sd)
    indices = enumerate_shape(sd, space, orders)
    per = Counter(i.entity for i in indices)
    total = len(indices)
    expected = closed_form(sd.name, space, orders)
    if total != expected:
        raise AssertionError(f"enumeration gives {total}, closed form {expected}")
    rows = [[e, per[e]] for e in (VERTEX, EDGE, FACE, INTERIOR) if per[e]] + [["total", total]]
    _emit(rows, ["entity", "count"], args.format, out)
    return 0


def _tabulation(args):
    sd = get_shape(args.shape)
    space = normalize_space(args.space)
    orders = _orders(args, sd)
    pts = lattice(sd, args.n)
    tab = evaluate(sd, space, orders, pts, _orientations(args, sd), _pairs(args.override, "override") or None)
    return sd, tab


def _open_out(args):
    if args.output:
        return open(args.output, "w", encoding="utf-8", newline="")
    return None


def cmd_tabulate(args, out, plot=False):
    sd, tab = _tabulation(args)
    select = _select(tab, args.function)
    if plot and not args.function:
        select = select[: min(len(select), 6)]
    header, rows = _tab_rows(tab, select, with_points=True)
    fh = _open_out(args)
    try:
        _emit(rows, header, args.format, fh or out)
    finally:
        if fh:
            fh.close()
    png = args.png
    if png is None and plot:
        png = str(Path(args.output).with_suffix(".png")) if args.output else f"{sd.name}_{tab.space}.png"
    if png:
        from .plotting import render

        render(png, tab, select, title=f"{sd.name} {tab.space} orders {list(tab.orders)}")
        print(f"wrote {png}", file=sys.stderr)
    return 0


def _report_rows(reports):
    header = ["target", "space", "shape_or_mesh", "p", "relative_error", "pass"]
    rows = []
    for r in reports:
        d = r.to_dict()
        rows.append([d[h] if h != "p" else (d["p"] if not isinstance(d["p"], list) else "x".join(map(str, d["p"])))
                     for h in header])
    return header, rows


def _finish(reports, args, out):
    header, rows = _report_rows(reports)
    if args.format == "json":
        out.write("[\n" + ",\n".join("  " + _json(r.to_dict()) for r in reports) + ("\n" if reports else "") + "]\n")
    else:
        _emit(rows, header, "csv", out)
    failed = sum(not r.passed for r in reports)
    print(f"{len(reports) - failed}/{len(reports)} checks passed", file=sys.stderr)
    return 0 if failed == 0 else 1


def _spaces(arg, sd=None):
    if arg.lower() == "all":
        return list(sd.spaces) if sd is not None else ["H1", "Hcurl", "Hdiv", "L2"]
    sp = normalize_space(arg)
    if sd is not None and sp not in sd.spaces:
        raise ConfigError(f"{sd.name} has no {sp} space")
    return [sp]


def _shapes(arg):
    return list(SHAPES) if arg.lower() == "all" else [get_shape(arg).name]


def _load(path):
    if path in (None, "bundled"):
        return meshmod.bundled_mesh(), "bundled"
    return meshmod.load_mesh(path), Path(path).name


def _tol(args, default):
    return default if args.tol is None else args.tol


def cmd_verify_reproduce(args, out):
    reports = []
    if args.mesh:
        m, label = _load(args.mesh)
        for sp in _spaces(args.space):
            for r in verify.reproduce_polynomials(m, sp, args.p, args.n_quad, _tol(args, verify.TOL_REPRO)):
                r.domain = label
                reports.append(r)
        return _finish(reports, args, out)
    for name in _shapes(args.shape):
        sd = get_shape(name)
        orders = _orders(args, sd)
        for sp in _spaces(args.space, sd):
            reports += verify.reproduce_polynomials(name, sp, orders, args.n_quad, _tol(args, verify.TOL_REPRO))
    return _finish(reports, args, out)


def cmd_verify_sequence(args, out):
    reports = []
    for name in _shapes(args.shape):
        sd = get_shape(name)
        reports += verify.exact_sequence(name, _orders(args, sd), args.n_quad, _tol(args, verify.TOL_SEQ))
    return _finish(reports, args, out)


def cmd_verify_mesh(args, out):
    m, label = _load(args.mesh)
    reports = []
    for sp in _spaces(args.space):
        reports.append(verify.compatibility(m, sp, args.p, args.all_orientations, args.samples,
                                            _tol(args, verify.TOL_TRACE), label))
        if not args.skip_reproduce:
            for r in verify.reproduce_polynomials(m, sp, args.p, args.n_quad):
                r.domain = label
                reports.append(r)
    return _finish(reports, args, out)


# --- parser ------------------------------------------------------------------------


def _add_orders(p, required=True):
    p.add_argument("--p", type=int, required=required, help="order (first direction for tensor shapes)")
    p.add_argument("--q", type=int, help="second directional order (quad, hex, prism vertical)")
    p.add_argument("--r", type=int, help="third directional order (hex)")


def _add_element(p):
    p.add_argument("--shape", required=True, help="segment, quad, triangle, hex, tet, prism or pyramid")
    p.add_argument("--space", required=True, help="h1, hcurl, hdiv or l2")
    _add_orders(p)
    p.add_argument("--orient", action="append", metavar="ENTITY=O",
                   help="orientation tags such as edge0=1,face2=5; unspecified entities use 0")
    p.add_argument("--override", action="append", metavar="ENTITY=ORDER",
                   help="lower the order on an edge or face, e.g. edge3=2")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser():
    parser = argparse.ArgumentParser(prog="shapefn", description="Hierarchical exact-sequence shape functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate every shape function at one point")
    _add_element(p)
    p.add_argument("--point", required=True, help="comma-separated master coordinates")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("count", help="dimension of a space, by entity")
    p.add_argument("--shape", required=True)
    p.add_argument("--space", required=True)
    _add_orders(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_count)

    for name, plot in (("tabulate", False), ("plot-data", True)):
        p = sub.add_parser(name, help="sample shape functions on a lattice" + (" and draw them" if plot else ""))
        _add_element(p)
        p.add_argument("--n", type=int, default=11, help="lattice points per direction (>= 2)")
        p.add_argument("--function", action="append", help="function index or label (repeatable)")
        p.add_argument("--output", help="write the table here instead of stdout")
        p.add_argument("--png", help="also render a PNG figure to this path")
        p.set_defaults(func=lambda a, o, plot=plot: cmd_tabulate(a, o, plot))

    p = sub.add_parser("verify", help="run verification checks")
    vsub = p.add_subparsers(dest="check", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="json")
    common.add_argument("--n-quad", type=int, help="Gauss points per direction")
    common.add_argument("--tol", type=float, help="override the pass threshold")

    v = vsub.add_parser("reproduce", parents=[common], help="project monomials onto the discrete spaces")
    v.add_argument("--shape", default="all")
    v.add_argument("--space", default="all")
    v.add_argument("--mesh", help="mesh JSON path, or 'bundled'; overrides --shape")
    _add_orders(v)
    v.set_defaults(func=cmd_verify_reproduce)

    v = vsub.add_parser("sequence", parents=[common], help="exact-sequence membership and locality")
    v.add_argument("--shape", default="all")
    _add_orders(v)
    v.set_defaults(func=cmd_verify_sequence)

    v = vsub.add_parser("mesh", parents=[common], help="trace compatibility and reproduction on a mesh")
    v.add_argument("--mesh", default="bundled", help="mesh JSON path, or 'bundled'")
    v.add_argument("--space", default="all")
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--all-orientations", action="store_true", help="sweep vertex relabelings")
    v.add_argument("--samples", type=int, default=20)
    v.add_argument("--skip-reproduce", action="store_true")
    v.set_defaults(func=cmd_verify_mesh)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except DomainError as exc:
        print(f"shapefn: domain error: {exc}", file=sys.stderr)
        return 3
    except ConfigError as exc:
        print(f"shapefn: configuration error: {exc}", file=sys.stderr)
        return 2
    except ConditioningError as exc:
        print(f"shapefn: conditioning error at pivot {exc.index}: {exc}", file=sys.stderr)
        return 1


def run(argv):
    """Call :func:`main` and capture stdout; returns (exit code, text)."""
    buf = io.StringIO()
    try:
        code = main(argv, buf)
    except SystemExit as exc:
        code = exc.code
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
