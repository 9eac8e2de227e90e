"""Acceptance criteria 1-7; each test prints one PASS/FAIL line."""

import itertools
import time

import numpy as np
import pytest

from artifact import elements as el
from artifact import mesh as ms
from artifact import poly
from artifact import verify as vf
from artifact.quadrature import gauss_1d
from helpers import fd_differential, interior_points, relative_gap
from test_elements import reference_dimension


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {n}: {'PASS' if ok else 'FAIL'} {detail}")

    return emit


def test_criterion_1_dimension_counts(report):
    t0 = time.perf_counter()
    bad, checked = [], 0
    for shape, sd in el.SHAPES.items():
        for orders in itertools.product(range(1, 6), repeat=sd.n_orders):
            for sp in sd.spaces:
                n = len(el.enumerate_shape(shape, sp, orders))
                checked += 1
                if n != reference_dimension(shape, sp, orders) or n != el.count(shape, sp, orders):
                    bad.append((shape, sp, orders, n))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 1.0
    report(1, ok, f"{checked} (shape, space, orders) cases, {len(bad)} mismatches, {dt:.2f} s")
    assert not bad
    assert dt < 1.0


def test_criterion_2_polynomial_reproduction(report):
    t0 = time.perf_counter()
    worst, failed, n = 0.0, [], 0
    for shape, sd in el.SHAPES.items():
        pmax = 4 if shape == "pyramid" else 6
        for p in range(1, pmax + 1):
            for sp in sd.spaces:
                for r in vf.reproduce_polynomials(shape, sp, p):
                    n += 1
                    worst = max(worst, r.relative_error)
                    if not r.passed:
                        failed.append((shape, sp, p, r.target))
    mesh = ms.bundled_mesh()
    for sp in vf.all_spaces(mesh):
        for r in vf.reproduce_polynomials(mesh, sp, 3):
            n += 1
            worst = max(worst, r.relative_error)
            if not r.passed:
                failed.append(("mesh", sp, 3, r.target))
    dt = time.perf_counter() - t0
    ok = not failed and dt < 60.0
    report(2, ok, f"{n} projections, worst relative error {worst:.1e}, {dt:.1f} s")
    assert not failed
    assert dt < 60.0


def test_criterion_3_exact_sequence(report):
    worst_d, worst_l, failed, n = 0.0, 0.0, [], 0
    for shape in el.SHAPES:
        for r in vf.exact_sequence(shape, 3):
            n += 1
            worst_d, worst_l = max(worst_d, r.relative_error), max(worst_l, r.locality_error)
            if not r.passed:
                failed.append((shape, r.target))
    ok = not failed
    report(3, ok, f"{n} differentials, worst distance {worst_d:.1e}, worst off-entity coefficient {worst_l:.1e}")
    assert not failed


def test_criterion_4_orientation_compatibility(report):
    mesh = ms.bundled_mesh()
    reps = [vf.compatibility(mesh, sp, 3, all_orientations=True, n_samples=20) for sp in vf.all_spaces(mesh)]
    worst = max(max(r.max_mismatch, r.max_unmatched) for r in reps)
    covered = all(r.coverage_complete for r in reps if r.space != "L2")
    ok = all(r.passed for r in reps) and covered
    report(4, ok, f"{reps[0].n_configurations} mesh labelings, worst trace mismatch {worst:.1e}, "
                  f"all orientations covered: {covered}")
    assert ok


def test_criterion_5_differential_oracles(report):
    worst, failed = 0.0, []
    for shape, sd in el.SHAPES.items():
        pts = interior_points(shape, 5, seed=20)
        for sp in sd.spaces:
            if sp == "L2":
                continue
            tab = el.evaluate(shape, sp, 3, pts)
            gap = relative_gap(fd_differential(shape, sp, 3, pts, h=1e-5), tab.diff)
            worst = max(worst, gap)
            if gap > 1e-6:
                failed.append((shape, sp, gap))
    report(5, not failed, f"worst finite-difference gap {worst:.1e}")
    assert not failed


def test_criterion_6_polynomial_kernels(report):
    x, w = gauss_1d(20)
    P = poly.legendre_batch(x, 10)
    G = (P * w) @ P.T
    leg = float(np.max(np.abs(G - np.diag(1.0 / (2 * np.arange(11) + 1)))))
    avg = float(np.max(np.abs(P[1:] @ w)))
    jac = 0.0
    for a in (1, 3, 5):
        J = poly.jacobi_batch(a, x, 10)
        Ga = (J * (w * (1 - x) ** a)) @ J.T
        jac = max(jac, float(np.max(np.abs(Ga - np.diag(np.diag(Ga))))))
    ends = 0.0
    for a in (0, 1, 3, 5):
        for t in (1.0, 0.7):
            L, _ = poly.integrated_jacobi_batch(a, (np.array([0.0, t]), t), 10)
            ends = max(ends, float(np.max(np.abs(L[2:, 0]))))
            if a == 0:
                ends = max(ends, float(np.max(np.abs(L[2:, 1]))))
    rng = np.random.default_rng(6)
    s0, s1 = rng.uniform(0.1, 1, 8), rng.uniform(0.1, 1, 8)
    hom = 0.0
    for kind in ("P", "L", "R", "P^a", "L^a", "R^a"):
        for lam in (0.3, 1.7):
            a = poly.homog_ladder(kind, 8, s0, s1, alpha=3)
            b = poly.homog_ladder(kind, 8, lam * s0, lam * s1, alpha=3)
            deg = np.arange(a.shape[0])  # row i is homogeneous of degree i
            scaled = a * lam ** deg[:, None]
            hom = max(hom, float(np.max(np.abs(b - scaled) / np.maximum(np.abs(scaled), 1.0))))
    ok = leg <= 1e-13 and avg <= 1e-13 and jac <= 1e-12 and ends <= 1e-14 and hom <= 1e-13
    report(6, ok, f"Legendre {max(leg, avg):.1e}, Jacobi {jac:.1e}, endpoints {ends:.1e}, homogeneity {hom:.1e}")
    assert ok


def test_criterion_7_pyramid_closed_form(report):
    rng = np.random.default_rng(1)
    X = np.column_stack([rng.uniform(0.05, 0.95, 5), rng.uniform(0.05, 0.95, 5), rng.uniform(0.05, 3.0, 5)])
    x, y, z = X.T
    xi = X / (1 + z)[:, None]  # infinite pyramid -> master pyramid
    tab = el.evaluate("pyramid", "Hdiv", 1, xi)
    (j,) = [k for k, i in enumerate(tab.indices) if i.entity == "face" and i.entity_id == 1]
    gap = 0.0
    for n in range(5):
        s = 1 + z[n]
        J = np.array([[1 / s, 0, -x[n] / s**2], [0, 1 / s, -y[n] / s**2], [0, 0, 1 / s**2]])
        got = np.linalg.det(J) * np.linalg.solve(J, tab.value[n, j])
        ref = np.array([0.0, -(1 - y[n]), z[n] / 2]) / s**3
        gap = max(gap, float(np.max(np.abs(got - ref))))
    finite = True
    for d in (1e-8, 1e-10, 0.0):
        t = el.evaluate("pyramid", "Hdiv", 3, np.array([[0.3, d, 0.4]]))
        finite &= bool(np.isfinite(t.value).all() and np.isfinite(t.diff).all())
    ok = gap <= 1e-12 and finite
    report(7, ok, f"closed-form gap {gap:.1e} at 5 points, finite near the face: {finite}")
    assert ok
