"""Invariant suites run by ``hyperradon verify``.

Each suite returns a list of :class:`Check` records holding the measured
residual and the tolerance it is compared against.  Random samples come from
fixed seeds so reports are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import geometry as geo
from . import liegroup as lg
from . import radon as rd
from . import specfun as sf
from . import spectral as sp
from .quadrature import line_inner_product

SEED = 20240611


@dataclass(frozen=True)
class Check:
    name: str
    measured: float
    tolerance: float
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def _le(name: str, measured: float, tol: float, detail: str = "") -> Check:
    return Check(name, float(measured), float(tol), bool(measured <= tol), detail)


# --- geometry ----------------------------------------------------------------------------------

def _coords(p: geo.ModelPoint) -> np.ndarray:
    if isinstance(p, geo.HalfPlane):
        return np.array([p.x, p.y])
    if isinstance(p, geo.Disc):
        return np.array([p.X, p.Y])
    if isinstance(p, geo.Polar):
        return np.array([p.rho, math.cos(p.phi), math.sin(p.phi)])
    return np.array([p.T, p.X, p.Y])


def random_points(rng: np.random.Generator, n: int) -> list[geo.ModelPoint]:
    """Random points spread over all four charts, within hyperbolic radius ~4."""
    pts: list[geo.ModelPoint] = []
    for i in range(n):
        rho = rng.uniform(0.05, 4.0)
        phi = rng.uniform(-math.pi, math.pi)
        p = geo.Polar(rho, phi)
        pts.append(geo.convert(p, list(geo.Chart)[i % 4]))
    return pts


def geometry_suite(n_points: int = 1000, n_geodesics: int = 200) -> list[Check]:
    rng = np.random.default_rng(SEED)
    out = []
    worst = 0.0
    for p in random_points(rng, n_points):
        for target in geo.Chart:
            back = geo.convert(geo.convert(p, target), p.chart)
            a, b = _coords(p), _coords(back)
            worst = max(worst, float(np.max(np.abs(a - b)) / max(1.0, np.max(np.abs(a)))))
    out.append(_le("chart round trips", worst, 1e-12))

    h = 1e-4
    worst_speed = worst_hp = worst_disc = worst_r2 = 0.0
    for _ in range(n_geodesics):
        sig = rng.uniform(-3, 3, 8)
        hg = geo.HalfPlaneGeodesic(rng.uniform(-2, 2), rng.uniform(-1.5, 1.5), int(rng.choice([-1, 1])))
        dg = geo.DiscGeodesic(rng.uniform(-math.pi, math.pi), rng.uniform(-2, 2), int(rng.choice([-1, 1])))
        x, y = geo.halfplane_geodesic_xy(hg, sig)
        worst_hp = max(worst_hp, float(np.max(np.abs((x - hg.t) ** 2 + y**2 - math.exp(2 * hg.xi)))) / math.exp(2 * hg.xi))
        xp, yp = geo.halfplane_geodesic_xy(hg, sig + h)
        xm, ym = geo.halfplane_geodesic_xy(hg, sig - h)
        speed = np.hypot(xp - xm, yp - ym) / (2 * h) / y
        worst_speed = max(worst_speed, float(np.max(np.abs(speed - 1))))
        X, Y = geo.disc_geodesic_XY(dg, sig)
        r2 = X * X + Y * Y
        worst_r2 = max(worst_r2, float(np.max(np.abs(r2 - (1 - 2 / (1 + math.cosh(dg.xi) * np.cosh(sig)))))))
        if abs(dg.xi) >= 0.1:
            c, s = math.cos(dg.theta), math.sin(dg.theta)
            X0, Y0 = c * X + s * Y, -s * X + c * Y
            res = (X0 - 1 / math.tanh(dg.xi)) ** 2 + Y0**2 - 1 / math.sinh(dg.xi) ** 2
            worst_disc = max(worst_disc, float(np.max(np.abs(res))))
        Xp, Yp = geo.disc_geodesic_XY(dg, sig + h)
        Xm, Ym = geo.disc_geodesic_XY(dg, sig - h)
        speed = 2 * np.hypot(Xp - Xm, Yp - Ym) / (2 * h) / (1 - r2)
        worst_speed = max(worst_speed, float(np.max(np.abs(speed - 1))))
    out.append(_le("geodesic unit speed", worst_speed, 1e-6))
    out.append(_le("half-plane geodesic circle", worst_hp, 1e-12))
    out.append(_le("disc geodesic circle", worst_disc, 1e-10))
    out.append(_le("disc radius along geodesic", worst_r2, 1e-12))

    g1 = geo.kinematic_metric(geo.Global(0.3, math.pi / 2))
    g2 = geo.kinematic_metric(geo.GlobalXi(0.3, 0.0))
    out.append(_le("kinematic chart consistency at alpha = pi/2", float(np.max(np.abs(g1 - g2))), 1e-14))
    return out


# --- group -------------------------------------------------------------------------------------

def random_params(scheme: str, rng: np.random.Generator) -> tuple[float, float, float]:
    """Parameters inside the fundamental domain of each chart."""
    a, b, c = rng.uniform(-1.5, 1.5, 3)
    if scheme == "Iwasawa":
        return a, math.exp(b), rng.uniform(-math.pi, math.pi)
    if scheme in ("NHK",):
        return a, b, rng.uniform(-math.pi, math.pi)
    if scheme == "EulerSU11":
        return rng.uniform(-math.pi, math.pi), abs(b) + 0.05, rng.uniform(-math.pi, math.pi)
    if scheme == "AdS-SU11":
        return rng.uniform(-math.pi, math.pi), b, c
    return a, b, c


def group_suite(n: int = 1000, n_metric: int = 100) -> list[Check]:
    rng = np.random.default_rng(SEED + 1)
    out = []
    for name in lg.SCHEMES:
        worst = 0.0
        for _ in range(n):
            g = lg.compose(name, random_params(name, rng))
            back = lg.compose(name, lg.decompose(g, name))
            worst = max(worst, float(np.max(np.abs(back.m - g.m))))
        out.append(_le(f"{name} decomposition round trip", worst, 1e-10))
    for name in lg.SCHEMES:
        wg = wc = 0.0
        for _ in range(n_metric):
            p = random_params(name, rng)
            d = rng.normal(size=3)
            wg = max(wg, abs(lg.group_metric(name, p, d) - lg.group_metric_closed_form(name, p, d)))
            wc = max(wc, abs(lg.coset_metric(name, p, d) - lg.coset_metric_closed_form(name, p, d)))
        out.append(_le(f"{name} group metric closed form", wg, 1e-9))
        out.append(_le(f"{name} coset metric closed form", wc, 1e-9))
    for flavor in lg.Flavor:
        C = lg.casimir_matrix(flavor)
        out.append(_le(f"{flavor.value} matrix Casimir = -3/4", float(np.max(np.abs(C + 0.75 * np.eye(2)))), 1e-12))
    worst = 0.0
    for s in (0.5 + 1.5j, 2.0, -0.3 + 0.7j):
        f = lg.ChartedFunction("Iwasawa", lambda x, y, th, s=s: y**s)
        for pt in ((0.2, 0.7, 0.1), (-1.0, 2.5, 1.0)):
            val = lg.casimir_apply(f, pt)
            ref = -s * (s - 1) * pt[1] ** s
            worst = max(worst, abs(val - ref) / abs(ref))
    out.append(_le("Casimir on y^s gives -s(s-1)", worst, 1e-6))
    return out


# --- special functions ---------------------------------------------------------------------------

def specfun_suite() -> list[Check]:
    out = []
    worst = 0.0
    for kap in (0.5, 1.0, 2.0, 5.0):
        a = sf.gamma_complex(1 + 1j * kap).value * sf.gamma_complex(1 - 1j * kap).value
        b = sf.gamma_complex(0.5 + 1j * kap).value * sf.gamma_complex(0.5 - 1j * kap).value
        worst = max(worst, abs(a / (math.pi * kap / math.sinh(math.pi * kap)) - 1))
        worst = max(worst, abs(b / (math.pi / math.cosh(math.pi * kap)) - 1))
    out.append(_le("Gamma reflection products", worst, 1e-12))

    k1 = sf.bessel_K_imag(1.0, 1.0, "contour").value
    k2 = sf.bessel_K_imag(1.0, 1.0, "basset").value
    out.append(_le("K_i(1): cosh integral vs Basset", abs(k1 - k2), 1e-10))
    y, kap = 50.0, 2.0
    ratio = sf.bessel_K_imag(kap, y).value / sf.bessel_K_large_y(y)
    corr = 1 - (4 * kap * kap + 1) / (8 * y) + (4 * kap * kap + 1) * (4 * kap * kap + 9) / (128 * y * y)
    out.append(_le("K at y=50 vs two-term large-y series", abs(ratio - corr), 1e-4))

    j = sf.bessel_J_array(1j, np.array([1.0, 7.0]), "series")[0]
    jq = sf.bessel_J_array(1j, np.array([1.0, 7.0]), "integral")[0]
    out.append(_le("J_i: series vs Schlafli integral", float(np.max(np.abs(j - jq))), 1e-12))
    x = np.array([18.0, 25.0])
    a = sf.bessel_J_array(2.5 + 0.5j, x, "integral")[0]
    b = sf.bessel_J_array(2.5 + 0.5j, x, "asymptotic")[0]
    out.append(_le("J: Hankel expansion vs Schlafli integral", float(np.max(np.abs(a - b))), 1e-10))

    c1 = sf.conical_P(10.0, 0, math.cosh(1.0), "integral").value
    c2 = sf.conical_P(10.0, 0, math.cosh(1.0), "ode").value
    out.append(_le("conical P: integral vs ODE shooting", abs(c1 - c2), 1e-9))
    c1 = sf.conical_P(3.0, 2, 200.0, "series").value
    c2 = sf.conical_P(3.0, 2, 200.0, "integral").value
    out.append(_le("conical P: 1/x^2 series vs integral", abs(c1 - c2) / abs(c1), 1e-10))

    worst = 0.0
    for kap in (0.5, 2.0):
        xs = np.array([0.5, 3.0, 30.0])
        d = sf.fgz_arrays(1j * kap, xs)
        lhs = (d["G"] - d["F"]) / math.sqrt(2)
        rhs = sf.z_prefactor_imag(kap, "corrected") * d["Z"]
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    out.append(_le("Z combination equals extension-angle 3pi/4 state", worst, 1e-12))

    worst = 0.0
    for k in (1, 2):
        for nu in (1.0, 2.0):
            d = sf.modified_conical_EO_array(k, nu, np.array([8.0]))
            E, O = sf.eo_asymptotic(k, nu, np.array([8.0]), "corrected")
            env = sf.eo_envelope(k, nu, np.array([8.0]))
            worst = max(worst, float(abs(d["E"][0] - E[0]) / env[0]), float(abs(d["O"][0] - O[0]) / env[0]))
    out.append(_le("E/O at xi=8 vs large-xi asymptotics", worst, 1e-4))
    worst = 0.0
    for k in (1, 2, 3):
        xi = np.array([0.3, 1.7, 6.0])
        p = sf.modified_conical_EO_array(k, 1.5, xi)
        m = sf.modified_conical_EO_array(k, 1.5, -xi)
        worst = max(worst, float(np.max(np.abs(p["E"] - m["E"]))), float(np.max(np.abs(p["O"] + m["O"]))))
    out.append(_le("E even, O odd", worst, 0.0))
    return out


# --- spectral ----------------------------------------------------------------------------------

def spectral_suite(theta: float = 0.75 * math.pi) -> list[Check]:
    out = []
    ext = sp.LiouvilleExtension(theta)
    first = 0 if ext.bound_order(0) > 0 else 1
    orders = ext.bound_orders(3)
    expected = [2 * (n + ext.theta_reduced / math.pi) for n in range(first, first + 3)]
    out.append(_le(f"bound orders at theta={theta:.10g}", float(np.max(np.abs(np.array(orders) - expected))), 1e-14,
                   detail=", ".join(f"{v:.6g}" for v in orders)))

    def bound(n):
        return lambda xi: sp.liouville_bound_array(ext, n + first, xi)

    worst = 0.0
    for i in range(3):
        for j in range(i, 3):
            v, _ = line_inner_product(bound(i), bound(j))
            worst = max(worst, abs(v - (1.0 if i == j else 0.0)))
    out.append(_le("bound states orthonormal", worst, 1e-6))
    worst = 0.0
    for kap in (0.5, 2.0):
        for n in range(3):
            v, _ = line_inner_product(bound(n), lambda xi, kap=kap: sp.liouville_scattering_array(ext, kap, xi))
            worst = max(worst, abs(v))
    out.append(_le("bound states orthogonal to scattering states", worst, 1e-5))

    worst = 0.0
    for k in range(1, 6):
        spec = sp.poschl_teller_spectrum(k)
        worst = max(worst, max(abs(a - (j + 0.5)) for j, a in enumerate(spec)))
        worst = max(worst, max(abs(sp.poschl_teller_function(k, a)) for a in spec))
    out.append(_le("Poschl-Teller spectrum is {1/2, ..., k-1/2}", worst, 1e-12))
    filt = sp.poschl_teller_parity_filter(5)
    out.append(_le("parity-filtered spectrum matches half-plane extension", float(np.max(np.abs(np.array(filt) - [1.5, 3.5]))), 0.0))
    return out


# --- radon -------------------------------------------------------------------------------------

def radon_suite() -> list[Check]:
    out = []
    worst_even = worst_odd = 0.0
    for k in range(4):
        for nu in (0.8, 1.5, 2.5):
            mode = sp.PolarMode(k, nu)
            for xi in (0.0, 0.4, 0.8, 1.5):
                q = rd.radon_disc_mode(mode, 0.3, xi).value
                cf = rd.radon_disc_closed_form(k, nu, xi, 0.3)
                err = abs(q - cf) / max(abs(cf), 1e-300) if abs(cf) > 1e-12 else abs(q)
                if k % 2:
                    worst_odd = max(worst_odd, err)
                else:
                    worst_even = max(worst_even, err)
    out.append(_le("disc closed form, even k", worst_even, 1e-6))
    out.append(_le("disc closed form, odd k (conjectured form)", worst_odd, 1e-6))

    worst = 0.0
    for k, nu in ((1, 1.5), (2.0, 0.7)):
        for eta in (0.1, 1.0, 5.0):
            q = rd.radon_halfplane_mode(sp.HalfPlaneMode(k, nu), 0.2, eta).value
            worst = max(worst, abs(q - rd.radon_halfplane_closed_form(k, nu, eta, 0.2)) / abs(q))
    out.append(_le("half-plane closed form", worst, 1e-6))

    rng = np.random.default_rng(SEED + 2)
    for k in (1, 2):
        samples = list(zip(rng.uniform(-math.pi, math.pi, 20), rng.uniform(-2.0, 2.0, 20)))
        rep = rd.antipodal_check(k, 1.3, samples)
        out.append(_le(f"antipodal invariance k={k}", rep.max_deviation / rep.scale, 1e-8))
        out.append(_le(f"parity selection k={k}", rep.parity_deviation / rep.scale, 1e-8))

    r1 = rd.intertwine_residual(sp.HalfPlaneMode(1, 1.5), [(0.0, e) for e in (0.5, 1.0, 2.0, 3.0)])
    r2 = rd.intertwine_residual(sp.PolarMode(2, 1.0), [(0.2, x) for x in (-1.5, -0.5, 0.5, 1.5)])
    out.append(_le("intertwining, half-plane", r1, 1e-3))
    out.append(_le("intertwining, disc", r2, 1e-3))

    for nu in (0.7, 1.5):
        th = rd.extract_theta(1.0, nu, (30.0, 60.0))
        out.append(_le(f"extension angle from asymptotics, nu={nu}", abs(th - 0.75 * math.pi), 1e-2, detail=f"{th:.8f}"))
    sv = rd.singular_value(50.0).lam * math.sqrt(50 / (2 * math.pi))
    out.append(_le("singular value at nu=50", abs(sv - 1), 1e-2))
    zeros = rd.singular_value_zeros()
    out.append(_le("continued singular value zeros at 3/2, 7/2", max(abs(zeros[0] - 1.5), abs(zeros[1] - 3.5)), 1e-8))
    ov = rd.bound_state_overlap(1.0, 1.5, 0.2)
    out.append(_le("range misses the first bound state", ov.relative, 1e-3))
    return out


SUITES: dict[str, Callable[..., list[Check]]] = {
    "geometry": geometry_suite,
    "group": group_suite,
    "specfun": specfun_suite,
    "spectral": spectral_suite,
    "radon": radon_suite,
}


def run_suite(name: str, theta: float | None = None) -> list[Check]:
    if name == "all":
        out = []
        for n in SUITES:
            out.extend(run_suite(n, theta))
        return out
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    if name == "spectral" and theta is not None:
        return [Check(f"spectral: {c.name}", c.measured, c.tolerance, c.passed, c.detail) for c in spectral_suite(theta)]
    return [Check(f"{name}: {c.name}", c.measured, c.tolerance, c.passed, c.detail) for c in SUITES[name]()]
