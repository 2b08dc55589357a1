import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from hyperradon import geometry as geo
from hyperradon import liegroup as lg
from hyperradon.verify import random_params

small = st.floats(-1.5, 1.5)
angle = st.floats(-math.pi, math.pi)


def test_sl2r_commutators():
    B = lg.SL2R_BASIS
    for n in (-1, 0, 1):
        for m in (-1, 0, 1):
            lhs = lg.commutator(B[n], B[m])
            rhs = (n - m) * B[n + m] if abs(n + m) <= 1 else np.zeros((2, 2))
            assert np.array_equal(lhs, rhs)


def test_su11_commutators():
    L0, L1, L2 = lg.SU11_BASIS
    assert np.array_equal(lg.commutator(L1, L2), -L0)
    assert np.array_equal(lg.commutator(L0, L1), L2)
    assert np.array_equal(lg.commutator(L0, L2), -L1)


def test_matrix_casimir():
    for flavor in lg.Flavor:
        assert np.allclose(lg.casimir_matrix(flavor), -0.75 * np.eye(2), atol=1e-15)


def test_subgroup_examples():
    u = 0.7
    A = lg.subgroup_element("A", u).m
    assert np.allclose(A, [[math.cosh(u / 2), math.sinh(u / 2)], [math.sinh(u / 2), math.cosh(u / 2)]])
    assert np.allclose(lg.subgroup_element("K", 0.0).m, np.eye(2))
    xi = 1.3
    Z = lg.mobius(lg.subgroup_element("expΛ1", xi), geo.Disc(0.0, 0.0))
    assert (Z.X, Z.Y) == pytest.approx((math.tanh(xi / 2), 0.0), abs=1e-15)
    with pytest.raises(KeyError):
        lg.subgroup_element("Q", 1.0)


@given(st.sampled_from([n for n in lg.SUBGROUP_NAMES if n != "T"]), small, small)
def test_subgroup_law(name, s, t):
    a = lg.subgroup_element(name, s) @ lg.subgroup_element(name, t)
    assert a.allclose(lg.subgroup_element(name, s + t), 1e-12)


@given(st.floats(0.2, 5), st.floats(0.2, 5))
def test_multiplicative_T(a, b):
    g = lg.subgroup_element("T", a) @ lg.subgroup_element("T", b)
    assert g.allclose(lg.subgroup_element("T", a * b), 1e-12)


@given(st.sampled_from([n for n in lg.SUBGROUP_NAMES if n != "T"]), small)
def test_generators_match_subgroups(name, p):
    # the registered generator is the derivative at the identity
    _, X, flavor = lg._SUBGROUPS[name]
    g = lg.exp_algebra(p * X, flavor)
    assert g.allclose(lg.subgroup_element(name, p), 1e-12)


def test_identity_decomposes_to_zero():
    for name, sc in lg.SCHEMES.items():
        p = lg.decompose(lg.GroupElement(np.eye(2), sc.flavor), name)
        expected = (0.0, 1.0, 0.0) if name == "Iwasawa" else (0.0, 0.0, 0.0)
        if name == "EulerSU11":
            # xi = 0 leaves only phi - theta determined
            assert p[1] == pytest.approx(0.0, abs=1e-12)
            assert lg.compose(name, p).allclose(lg.GroupElement(np.eye(2), sc.flavor))
            continue
        assert p == pytest.approx(expected, abs=1e-12)


def test_nha_example_by_explicit_product():
    nt = np.array([[1.0, 1.0], [0.0, 1.0]])
    h = np.diag([math.exp(0.25), math.exp(-0.25)])
    a = np.array([[math.cosh(0.15), math.sinh(0.15)], [math.sinh(0.15), math.cosh(0.15)]])
    g = lg.GroupElement(nt @ h @ a)
    assert lg.decompose(g, "NHA") == pytest.approx((1.0, 0.5, 0.3), abs=1e-13)


@given(small, st.floats(0.1, 5.0), st.floats(-6, 6))
def test_iwasawa_orbit_of_i(x, y, theta):
    p = lg.mobius(lg.compose("Iwasawa", (x, y, theta)), geo.HalfPlane(0.0, 1.0))
    assert (p.x, p.y) == pytest.approx((x, y), rel=1e-12, abs=1e-12)


@given(st.sampled_from(list(lg.SCHEMES)), st.integers(0, 10**6))
def test_decomposition_round_trip(name, seed):
    g = lg.compose(name, random_params(name, np.random.default_rng(seed)))
    back = lg.compose(name, lg.decompose(g, name))
    assert back.allclose(g, 1e-10)


def test_out_of_range():
    g = lg.GroupElement(np.array([[0.0, 1.0], [-1.0, 0.0]]))
    with pytest.raises(lg.OutOfRangeError):
        lg.decompose(g, "HAH")
    with pytest.raises(lg.OutOfRangeError):
        lg.decompose(g, "NHA")


def test_classify_examples():
    assert lg.classify(lg.subgroup_element("K", 0.9)) == "elliptic"
    assert lg.classify(lg.subgroup_element("Ntilde", 2.0)) == "parabolic"
    assert lg.classify(lg.subgroup_element("H", 0.4)) == "hyperbolic"


def test_minus_identity_acts_trivially():
    p = geo.HalfPlane(0.3, 1.7)
    q = lg.mobius(lg.GroupElement(-np.eye(2)), p)
    assert geo.same_point(p, q)


@given(angle, st.floats(0.0, 3.0), angle)
def test_euler_orbit_of_origin(phi, xi, theta):
    Z = lg.mobius(lg.compose("EulerSU11", (phi, xi, theta)), geo.Disc(0.0, 0.0))
    expected = cmath.exp(1j * phi) * math.tanh(xi / 2)
    assert complex(Z.X, Z.Y) == pytest.approx(expected, abs=1e-13)


@given(st.sampled_from(list(lg.SCHEMES)), st.integers(0, 10**6), small, st.floats(0.2, 3), small, st.floats(0.2, 3))
def test_mobius_preserves_distance(name, seed, x1, y1, x2, y2):
    g = lg.compose(name, random_params(name, np.random.default_rng(seed)))
    p, q = geo.HalfPlane(x1, y1), geo.HalfPlane(x2, y2)
    d0 = geo.distance(p, q)
    d1 = geo.distance(lg.mobius(g, p), lg.mobius(g, q))
    assert d1 == pytest.approx(d0, rel=1e-9, abs=1e-9)


@given(st.integers(0, 10**6), small, st.floats(0.2, 3))
def test_mobius_is_an_action(seed, x, y):
    rng = np.random.default_rng(seed)
    g1 = lg.compose("NHA", random_params("NHA", rng))
    g2 = lg.compose("Iwasawa", random_params("Iwasawa", rng))
    p = geo.HalfPlane(x, y)
    assert geo.same_point(lg.mobius(g1 @ g2, p), lg.mobius(g1, lg.mobius(g2, p)), tol=1e-10)


@given(st.integers(0, 10**6), small, st.floats(0.2, 3), angle)
def test_mobius_pulls_back_the_metric(seed, x, y, direction):
    g = lg.compose("NHA", random_params("NHA", np.random.default_rng(seed)))
    h = 1e-6
    v = np.array([math.cos(direction), math.sin(direction)])
    p = geo.HalfPlane(x, y)
    a = lg.mobius(g, geo.HalfPlane(x + h * v[0], y + h * v[1]))
    b = lg.mobius(g, geo.HalfPlane(x - h * v[0], y - h * v[1]))
    w = np.array([a.x - b.x, a.y - b.y]) / (2 * h)
    gp = lg.mobius(g, p)
    assert w @ geo.metric_components(gp) @ w == pytest.approx(v @ geo.metric_components(p) @ v, rel=1e-7)


def test_group_metric_printed_forms():
    p, d = (0.3, 0.8, -0.4), (0.2, -0.5, 0.9)
    e = lg.group_metric("EulerSU11", p, d)
    assert e == pytest.approx(-d[2] ** 2 + d[1] ** 2 - d[0] ** 2 + 2 * math.cosh(p[1]) * d[2] * d[0], rel=1e-12)
    n = lg.group_metric("NHA", p, d)
    assert n == pytest.approx(d[1] ** 2 + d[2] ** 2 + 2 * d[2] * d[0] * math.exp(-p[1]), rel=1e-12)


@given(st.sampled_from(list(lg.SCHEMES)), st.integers(0, 10**6))
def test_group_metric_finite_difference(name, seed):
    rng = np.random.default_rng(seed)
    p = np.array(random_params(name, rng))
    d = rng.normal(size=3)
    h = 1e-5
    g0 = lg.compose(name, p).m
    dg = (lg.compose(name, p + h * d).m - lg.compose(name, p - h * d).m) / (2 * h)
    J = np.linalg.solve(g0, dg)
    fd = 2 * np.trace(J @ J).real
    assert fd == pytest.approx(lg.group_metric(name, p, d), abs=1e-8 * max(1.0, abs(fd)))
    assert lg.group_metric_closed_form(name, p, d) == pytest.approx(lg.group_metric(name, p, d), abs=1e-9)


@given(st.sampled_from(list(lg.SCHEMES)), st.integers(0, 10**6))
def test_coset_metric_stationary_value(name, seed):
    # the quadratic in the forgotten differential is exact, so three samples fix its vertex
    rng = np.random.default_rng(seed)
    p = random_params(name, rng)
    d = rng.normal(size=3)
    f = lg.get_scheme(name).forgotten

    def q(s):
        dd = d.copy()
        dd[f] = s
        return lg.group_metric(name, p, dd)

    a = 0.5 * (q(1) + q(-1)) - q(0)
    b = 0.5 * (q(1) - q(-1))
    vertex = q(0) - b * b / (4 * a)
    assert lg.coset_metric(name, p, d) == pytest.approx(vertex, abs=1e-9 * max(1.0, abs(vertex)))
    assert lg.coset_metric_closed_form(name, p, d) == pytest.approx(vertex, abs=1e-9 * max(1.0, abs(vertex)))


def test_euler_coset_is_polar_metric():
    p, d = (0.4, 1.1, 0.0), (0.3, 0.7, 0.0)
    assert lg.coset_metric("EulerSU11", p, d) == pytest.approx(d[1] ** 2 + math.sinh(p[1]) ** 2 * d[0] ** 2)


@pytest.mark.parametrize("s", [0.5 + 1.5j, 2.0, -0.3 + 0.7j])
def test_casimir_on_power_of_y(s):
    f = lg.ChartedFunction("Iwasawa", lambda x, y, th: y**s, (0, None, 0))
    for pt in ((0.2, 0.7, 0.1), (-1.0, 2.5, 1.0)):
        assert lg.casimir_apply(f, pt) == pytest.approx(-s * (s - 1) * pt[1] ** s, rel=1e-6)


SEPARABLE = {
    # scheme: (function of the chart, point); lam, mu are Fourier indices of p1, p3
    "Iwasawa": lambda x, y, th: np.exp(0.7j * x) * math.sqrt(y) * math.exp(-y) * np.exp(0.5j * th),
    "NHA": lambda t, xi, phi: np.exp(0.4j * t) * math.exp(-xi * xi) * np.exp(-0.3j * phi),
    "NHK": lambda t, xi, phi: np.exp(0.4j * t) * math.cos(xi) * np.exp(1.0j * phi),
    "EulerSU11": lambda phi, xi, th: np.exp(1j * phi) * math.tanh(xi) * np.exp(-1j * th),
    "AdS-SU11": lambda t, xi, tau: np.exp(0.6j * t) / math.cosh(xi) * np.exp(0.2j * tau),
    "HAH": lambda t, rho, phi: np.exp(0.3j * t) * math.sinh(rho) * np.exp(-0.2j * phi),
}


@pytest.mark.parametrize("scheme", list(SEPARABLE))
def test_left_right_fields_agree_with_chart_operator(scheme):
    f = lg.ChartedFunction(scheme, SEPARABLE[scheme])
    pt = (0.3, 1.1, 0.4) if scheme != "Iwasawa" else (0.3, 1.1, 0.4)
    c = lg.casimir_apply(f, pt)
    left = lg.casimir_invariant_fields(f, pt, "left")
    right = lg.casimir_invariant_fields(f, pt, "right")
    scale = max(1.0, abs(c))
    assert abs(left - c) <= 1e-6 * scale
    assert abs(right - c) <= 1e-6 * scale


@pytest.mark.parametrize("scheme,lam,mu", [("AdS-SU11", 0.6, 0.2), ("EulerSU11", 1.0, -1.0), ("NHA", 0.4, -0.3), ("NHK", 0.4, 1.0), ("HAH", 0.3, -0.2)])
def test_reduced_operator_matches_two_dimensional(scheme, lam, mu):
    psi = {"AdS-SU11": lambda u: 1 / math.cosh(u), "EulerSU11": math.tanh, "NHA": lambda u: math.exp(-u * u),
           "NHK": math.cos, "HAH": math.sinh}[scheme]
    f = lg.ChartedFunction(scheme, lambda a, u, b: np.exp(1j * lam * a) * psi(u) * np.exp(1j * mu * b), (lam, None, mu))
    pt = (0.3, 1.1, 0.4)
    full = lg.casimir_apply(f, pt) / (np.exp(1j * lam * pt[0]) * np.exp(1j * mu * pt[2]))
    red = lg.reduced_casimir(scheme, lam, mu, psi, pt[1])
    assert abs(full - red) <= 1e-6 * max(1.0, abs(red))


@given(st.integers(0, 10**6))
def test_casimir_eigenvalue_survives_transport(seed):
    g = lg.compose("NHA", random_params("NHA", np.random.default_rng(seed)))
    ginv = g.inverse()
    s = 0.5 + 1.2j

    def moved(x, y, th):
        p = lg.mobius(ginv, geo.HalfPlane(x, y))
        return p.y**s

    f = lg.ChartedFunction("Iwasawa", moved)
    pt = (0.1, 1.3, 0.0)
    eig = lg.casimir_apply(f, pt) / moved(*pt)
    assert abs(eig - (-s * (s - 1))) <= 1e-6


def test_group_element_validation():
    with pytest.raises(ValueError):
        lg.GroupElement(np.array([[1.0, 1.0], [1.0, 1.0]]))
    with pytest.raises(ValueError):
        lg.GroupElement(np.array([[1.0, 0.0], [0.0, 1.0]]) * 1j, lg.Flavor.SU11)
    g = lg.compose("NHA", (0.3, 0.2, 0.1))
    assert (g @ g.inverse()).allclose(lg.GroupElement(np.eye(2)))
    assert g.as_flavor("SU11").as_flavor("SL2R").allclose(g)


def test_small_step_warns():
    f = lg.ChartedFunction("Iwasawa", lambda x, y, th: y**2)
    with pytest.warns(RuntimeWarning):
        lg.casimir_apply(f, (0.0, 1.0, 0.0), h=1e-9)
