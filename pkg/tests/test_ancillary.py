import numpy as np
import pytest

from artifact import ancillary as anc
from artifact.errors import DimensionError, IndexRangeError

H = 1e-5


def linear(a, b, pts):
    """Affine scalar a + b.x sampled at points, with its constant gradient."""
    b = np.asarray(b, dtype=float)
    return anc.Coord(a + pts @ b, np.tile(b, (len(pts), 1)))


def coords_from(pairs, pts):
    return tuple(linear(a, b, pts) for a, b in pairs)


def fd(field_of, pts, op):
    """Central-difference grad/curl/div of a field given as a function of points."""
    n = pts.shape[1]
    base = np.asarray(field_of(pts))
    D = []
    for d in range(n):
        e = np.zeros(n)
        e[d] = H
        D.append((np.asarray(field_of(pts + e)) - np.asarray(field_of(pts - e))) / (2 * H))
    D = np.stack(D, axis=-1)  # (..., comp, dir) or (..., dir)
    if op == "grad":
        return D
    if op == "div":
        return np.trace(D, axis1=-2, axis2=-1)
    if n == 2:
        return D[..., 1, 0] - D[..., 0, 1]
    return np.stack([D[..., 2, 1] - D[..., 1, 2], D[..., 0, 2] - D[..., 2, 0], D[..., 1, 0] - D[..., 0, 1]], -1)


def rel(a, b):
    return np.max(np.abs(a - b) / np.maximum(np.abs(b), 1.0))


RNG = np.random.default_rng(3)
PTS3 = RNG.uniform(0.1, 0.4, size=(10, 3))
PTS2 = RNG.uniform(0.1, 0.4, size=(10, 2))
# generic (not summing to one) affine arguments
GEN3 = [(0.3, (0.2, -0.5, 0.1)), (0.6, (0.4, 0.3, -0.2)), (0.2, (-0.1, 0.2, 0.7))]
GEN2 = [(0.3, (0.2, -0.5)), (0.6, (0.4, 0.3)), (0.2, (-0.1, 0.7))]


def test_coord_arithmetic_gradients():
    a, b = coords_from(GEN3[:2], PTS3)
    for make in (lambda a, b: a * b, lambda a, b: a / b, lambda a, b: 1 - a, lambda a, b: a**3 + b):
        r = make(a, b)
        num = fd(lambda x: make(*coords_from(GEN3[:2], x)).v, PTS3, "grad")
        assert rel(r.g, num) <= 1e-8


def test_phi_E_examples():
    mu = (linear(1.0, (-1.0,), np.array([[0.5]])), linear(0.0, (1.0,), np.array([[0.5]])))
    r = anc.phi_E(2, mu)
    assert r.value[0] == pytest.approx(-0.25)
    assert abs(r.grad[0, 0]) <= 1e-15
    s = coords_from(GEN3[:2], PTS3)
    zero = anc.Coord(np.zeros(len(PTS3)), np.zeros((len(PTS3), 3)))
    for i in range(2, 8):
        assert np.max(np.abs(anc.phi_E(i, (zero, s[1])).value)) <= 1e-14
        assert np.max(np.abs(anc.phi_E(i, (s[0], zero)).value)) <= 1e-14
    with pytest.raises(IndexRangeError):
        anc.phi_E(1, s[:2])


@pytest.mark.parametrize("i", range(2, 6))
def test_phi_E_gradient_generic(i):
    r = anc.phi_E(i, coords_from(GEN3[:2], PTS3))
    num = fd(lambda x: anc.phi_E(i, coords_from(GEN3[:2], x)).value, PTS3, "grad")
    assert rel(r.grad, num) <= 1e-6


@pytest.mark.parametrize("i", range(0, 6))
def test_curl_formula_for_edge_fields(i):
    r = anc.E_E(i, coords_from(GEN3[:2], PTS3))
    num = fd(lambda x: anc.E_E(i, coords_from(GEN3[:2], x)).vec, PTS3, "curl")
    assert rel(r.curl, num) <= 1e-6
    r2 = anc.E_E(i, coords_from(GEN2[:2], PTS2))
    num2 = fd(lambda x: anc.E_E(i, coords_from(GEN2[:2], x)).vec, PTS2, "curl")
    assert rel(r2.curl, num2) <= 1e-6


def test_E_E_shortcut_example():
    pts = np.array([[0.25, 0.0]])
    mu = (linear(1.0, (-1.0, 0.0), pts), linear(0.0, (1.0, 0.0), pts))
    r = anc.E_E(1, mu)
    assert np.allclose(r.vec, [[-0.5, 0.0]], atol=1e-15)
    assert r.curl[0] == 0.0


def test_shortcuts_agree_with_general_forms():
    pts = PTS3
    s = (linear(1.0, (-1.0, 0, 0), pts), linear(0.0, (1.0, 0, 0), pts))
    # nudge the pair off the affine threshold so the general branch runs
    eps = 1e-13
    s_gen = (linear(1.0 + eps, (-1.0, 0, 0), pts), s[1])
    for i in range(2, 7):
        a, b = anc.phi_E(i, s), anc.phi_E(i, s_gen)
        assert rel(a.grad, b.grad) <= 1e-11
    for i in range(0, 6):
        a, b = anc.E_E(i, s), anc.E_E(i, s_gen)
        assert rel(a.vec, b.vec) <= 1e-11
        assert np.max(np.abs(b.curl)) <= 1e-10


def test_phi_tri_barycentre_value():
    pts = np.array([[1 / 3, 1 / 3]])
    nu = (linear(1.0, (-1.0, -1.0), pts), linear(0.0, (1.0, 0.0), pts), linear(0.0, (0.0, 1.0), pts))
    assert anc.phi_tri(2, 1, nu).value[0] == pytest.approx(-1 / 27, abs=1e-15)


def test_phi_tri_vanishing():
    s = coords_from(GEN3, PTS3)
    zero = anc.Coord(np.zeros(len(PTS3)), np.zeros((len(PTS3), 3)))
    for i, j in [(2, 1), (3, 2), (4, 1)]:
        for k in range(3):
            args = list(s)
            args[k] = zero
            assert np.max(np.abs(anc.phi_tri(i, j, tuple(args)).value)) <= 1e-14


@pytest.mark.parametrize("i,j", [(2, 1), (3, 2), (2, 3)])
def test_phi_tri_gradient(i, j):
    r = anc.phi_tri(i, j, coords_from(GEN3, PTS3))
    num = fd(lambda x: anc.phi_tri(i, j, coords_from(GEN3, x)).value, PTS3, "grad")
    assert rel(r.grad, num) <= 1e-6


@pytest.mark.parametrize("i,j", [(0, 1), (1, 2), (2, 1)])
def test_E_tri_curl(i, j):
    r = anc.E_tri(i, j, coords_from(GEN3, PTS3))
    num = fd(lambda x: anc.E_tri(i, j, coords_from(GEN3, x)).vec, PTS3, "curl")
    assert rel(r.curl, num) <= 1e-6


@pytest.mark.parametrize("i,j", [(0, 0), (1, 2), (3, 1)])
def test_divergence_formula_for_triangle_fields(i, j):
    r = anc.V_tri(i, j, coords_from(GEN3, PTS3))
    num = fd(lambda x: anc.V_tri(i, j, coords_from(GEN3, x)).vec, PTS3, "div")
    assert rel(r.div, num) <= 1e-6


def test_V_tri_tet_lowest_divergence():
    pts = PTS3
    lam = (linear(1.0, (-1, -1, -1), pts), linear(0.0, (1, 0, 0), pts), linear(0.0, (0, 1, 0), pts))
    r = anc.V_tri(0, 0, lam)
    # 3 grad(l0) . (grad(l1) x grad(l2)) with grad(l0) = (-1, -1, -1)
    assert np.allclose(r.div, -3.0, atol=1e-14)


def test_V_tri_affine_triple_divergence_free():
    pts = PTS3
    nu = (linear(1.0, (-1, -1, 0), pts), linear(0.0, (1, 0, 0), pts), linear(0.0, (0, 1, 0), pts))
    for i, j in [(0, 0), (2, 1)]:
        assert np.all(anc.V_tri(i, j, nu).div == 0.0)


@pytest.mark.parametrize("i,j", [(0, 0), (1, 2), (2, 0)])
def test_V_quad_divergence(i, j):
    def make(x):
        c = coords_from(GEN3 + [(0.5, (0.3, 0.1, 0.2))], x)
        return anc.V_quad(i, j, (c[0], c[1]), (c[2], c[3]))

    r = make(PTS3)
    assert rel(r.div, fd(lambda x: make(x).vec, PTS3, "div")) <= 1e-6


def test_V_quad_hex_lowest():
    pts = PTS3
    mx = (linear(1.0, (-1, 0, 0), pts), linear(0.0, (1, 0, 0), pts))
    my = (linear(1.0, (0, -1, 0), pts), linear(0.0, (0, 1, 0), pts))
    r = anc.V_quad(0, 0, mx, my)
    assert np.allclose(r.vec, [0, 0, 1], atol=1e-15)
    assert np.all(r.div == 0.0)


def test_E_quad_and_phi_quad():
    pts = np.array([[0.5, 0.5]])
    mx = (linear(1.0, (-1, 0), pts), linear(0.0, (1, 0), pts))
    my = (linear(1.0, (0, -1), pts), linear(0.0, (0, 1), pts))
    assert anc.phi_quad(2, 2, mx, my).value[0] == pytest.approx(0.0625)

    def make(x):
        c = coords_from(GEN2 + [(0.5, (0.3, 0.1))], x)
        return anc.E_quad(1, 3, (c[0], c[1]), (c[2], c[3]))

    assert rel(make(PTS2).curl, fd(lambda x: make(x).vec, PTS2, "curl")) <= 1e-6


@pytest.mark.parametrize("i,j", [(2, 2), (3, 2), (2, 4)])
def test_pyramid_left_field_is_curl_of_potential(i, j):
    def parts(x):
        c = coords_from(GEN3 + [(0.5, (0.3, 0.1, 0.2)), (0.7, (0.1, -0.3, 0.4))], x)
        return (c[0], c[1]), (c[2], c[3]), c[4]

    def potential(x):
        sx, sy, t0 = parts(x)
        a, b = anc.phi_E(i, sx), anc.phi_E(j, sy)
        return 0.5 * (t0.v**2)[:, None] * (a.value[:, None] * b.grad - b.value[:, None] * a.grad)

    r = anc.V_pyr_lefteq(i, j, *parts(PTS3))
    assert rel(r.vec, fd(potential, PTS3, "curl")) <= 1e-6
    assert np.all(r.div == 0.0)


@pytest.mark.parametrize("i", [2, 3, 4])
def test_pyramid_right_field_is_curl_of_potential(i):
    def parts(x):
        c = coords_from(GEN3 + [(0.5, (0.3, 0.1, 0.2))], x)
        return (c[0], c[1]), c[2], c[3]

    def potential(x):
        s, mu1, t0 = parts(x)
        a = anc.phi_E(i, s)
        return (t0.v**2 * a.value)[:, None] * mu1.g

    r = anc.V_pyr_righteq(i, *parts(PTS3))
    assert rel(r.vec, fd(potential, PTS3, "curl")) <= 1e-6


def test_scaled_triangle_field_matches_division_away_from_zero():
    pts = PTS3
    s = coords_from([(1.0, (-1, -1, 0)), (0.0, (1, 0, 0)), (0.0, (0, 1, 0))], pts)
    mu = linear(0.7, (0.1, 0.2, -0.3), pts)
    for o in range(6):
        r = anc.V_tri_scaled(1, 2, s, mu, 0, o)
        from artifact import orient

        ref = anc.V_tri(1, 2, orient.sigma_tri(o, (mu * s[0], mu * s[1], s[2])))
        assert rel(r.vec, ref.vec / mu.v[:, None]) <= 1e-12
        num = fd(lambda x: anc.V_tri_scaled(1, 2, coords_from([(1.0, (-1, -1, 0)), (0.0, (1, 0, 0)), (0.0, (0, 1, 0))], x),
                                            linear(0.7, (0.1, 0.2, -0.3), x), 0, o).vec, pts, "div")
        assert rel(r.div, num) <= 1e-6


def test_rotate_2d():
    r = anc.rotate_2d(anc.VecCurl(np.array([[1.0, 2.0]]), np.array([3.0])))
    assert np.array_equal(r.vec, [[2.0, -1.0]]) and r.div[0] == 3.0


def test_dimension_errors():
    s2 = coords_from(GEN2, PTS2)
    with pytest.raises(DimensionError):
        anc.V_tri(0, 0, s2)
    with pytest.raises(DimensionError):
        anc.V_quad(0, 0, s2[:2], s2[1:])
    s1 = (linear(1.0, (-1.0,), np.array([[0.2]])), linear(0.0, (1.0,), np.array([[0.2]])))
    with pytest.raises(DimensionError):
        anc.E_E(0, s1)
