"""Acceptance criteria 1-11.

Each criterion is measured once, reported as a single PASS/FAIL line (in the
pytest terminal summary, or on stdout when this file is run directly) and
asserted by its own test.  A criterion passes only if every residual is within
its pinned tolerance and the wall time is within its budget.

Criteria 6 and 10 are stated against printed closed forms that carry sign
errors.  Their line reports the printed form, which fails, and adds the
residual of the sign-corrected form for reference.
"""

from __future__ import annotations

import math
import sys
import time
from dataclasses import dataclass, field
from functools import cache

import numpy as np
import pytest

from hyperradon import liegroup as lg
from hyperradon import radon as rd
from hyperradon import specfun as sf
from hyperradon import spectral as sp
from hyperradon.quadrature import gauss_panels, line_inner_product
from hyperradon.verify import random_params

THREE_QUARTER = 0.75 * math.pi


@dataclass
class Result:
    number: int
    title: str
    budget: float
    checks: list[tuple[str, float, float]] = field(default_factory=list)
    note: str = ""
    corrected: float = math.nan
    elapsed: float = 0.0

    def add(self, name: str, measured: float, tol: float):
        self.checks.append((name, float(measured), float(tol)))

    @property
    def passed(self) -> bool:
        return all(m <= t for _, m, t in self.checks) and self.elapsed < self.budget

    def line(self) -> str:
        worst = [f"{n} {m:.2e}/{t:.0e}" for n, m, t in self.checks if m > t]
        body = "; ".join(worst) if worst else f"{len(self.checks)} checks within tolerance"
        s = f"{self.title}: {body}; {self.elapsed:.1f}s (budget {self.budget:g}s)"
        return s + (f"; {self.note}" if self.note else "")


def _timed(number: int, title: str, budget: float):
    def wrap(fn):
        @cache
        def run() -> Result:
            r = Result(number, title, budget)
            t0 = time.perf_counter()
            fn(r)
            r.elapsed = time.perf_counter() - t0
            return r

        run.number = number
        return run

    return wrap


# --- 1 ----------------------------------------------------------------------------------------


@_timed(1, "Gamma identities", 1.0)
def crit1(r: Result):
    worst = 0.0
    for kap in (0.5, 1.0, 2.0, 5.0):
        a = sf.gamma_complex(1 + 1j * kap).value * sf.gamma_complex(1 - 1j * kap).value
        b = sf.gamma_complex(0.5 + 1j * kap).value * sf.gamma_complex(0.5 - 1j * kap).value
        worst = max(worst, abs(a / (math.pi * kap / math.sinh(math.pi * kap)) - 1))
        worst = max(worst, abs(b * math.cosh(math.pi * kap) / math.pi - 1))
    r.add("relative error", worst, 1e-12)


# --- 2 ----------------------------------------------------------------------------------------


def _bessel_line(nu):
    return lambda xi: sf.bessel_J_array(nu, np.exp(xi))[0].real


@_timed(2, "Bessel cross-norm", 10.0)
def crit2(r: Result):
    worst = 0.0
    for a, b in ((1.5, 2.5), (1.0, 2.0), (0.5, 3.0)):
        v, _ = line_inner_product(_bessel_line(a), _bessel_line(b))
        worst = max(worst, abs(v - (2 / math.pi) * math.sin(math.pi * (b - a) / 2) / (b * b - a * a)))
    r.add("three pairs", worst, 1e-6)
    v, _ = line_inner_product(_bessel_line(1.5), _bessel_line(3.5))
    r.add("(3/2, 7/2) vanishes", abs(v), 1e-8)


# --- 3 ----------------------------------------------------------------------------------------


@_timed(3, "Liouville extension at 3pi/4", 30.0)
def crit3(r: Result):
    ext = sp.LiouvilleExtension(THREE_QUARTER)
    r.add("bound orders", float(np.max(np.abs(np.array(ext.bound_orders(3)) - [1.5, 3.5, 5.5]))), 1e-14)

    def bound(n):
        return lambda xi: sp.liouville_bound_array(ext, n, xi)

    worst = 0.0
    for n in range(3):
        for m in range(n, 3):
            v, _ = line_inner_product(bound(n), bound(m))
            worst = max(worst, abs(v - (n == m)))
    r.add("orthonormality", worst, 1e-6)
    worst = 0.0
    for kap in (0.5, 2.0):
        for n in range(3):
            v, _ = line_inner_product(bound(n), lambda xi, kap=kap: sp.liouville_scattering_array(ext, kap, xi))
            worst = max(worst, abs(v))
    r.add("bound vs scattering", worst, 1e-5)


# --- 4 ----------------------------------------------------------------------------------------


@_timed(4, "Kontorovich-Lebedev and Mehler-Fock round trips", 120.0)
def crit4(r: Result):
    x = np.linspace(0.05, 20, 120)
    for name, f in (("KL x e^-x", lambda x: x * np.exp(-x)), ("KL x^2 e^-2x", lambda x: x * x * np.exp(-2 * x))):
        t0 = time.perf_counter()
        g = sp.kontorovich_lebedev(sp.kontorovich_lebedev(f, "forward"), "inverse")
        r.add(name, float(np.max(np.abs(g(x) - f(x)))), 1e-4)
        r.add(name + " seconds", time.perf_counter() - t0, 60.0)
    x = np.linspace(1.0, 20.0, 60)
    for name, f in (("MF e^-(x-1)", lambda x: np.exp(-(x - 1))), ("MF x^-2", lambda x: x**-2.0)):
        t0 = time.perf_counter()
        g = sp.mehler_fock(sp.mehler_fock(f, "forward"), "inverse")
        r.add(name, float(np.max(np.abs(g(x) - f(x)))), 1e-4)
        r.add(name + " seconds", time.perf_counter() - t0, 60.0)


# --- 5 ----------------------------------------------------------------------------------------


@_timed(5, "Intertwining", 120.0)
def crit5(r: Result):
    eta = [(0.0, e) for e in (0.5, 1.0, 2.0, 3.0)]
    xi = [(0.2, x) for x in (-1.5, -0.5, 0.5, 1.5)]
    r.add("half-plane k=1 nu=1.5", rd.intertwine_residual(sp.HalfPlaneMode(1, 1.5), eta), 1e-3)
    r.add("half-plane k=2 nu=0.7", rd.intertwine_residual(sp.HalfPlaneMode(2, 0.7), eta), 1e-3)
    r.add("disc k=2 nu=1", rd.intertwine_residual(sp.PolarMode(2, 1.0), xi), 1e-3)
    r.add("disc k=1 nu=1.5", rd.intertwine_residual(sp.PolarMode(1, 1.5), xi), 1e-3)


# --- 6 ----------------------------------------------------------------------------------------


@_timed(6, "Disc closed forms vs quadrature (printed form)", 120.0)
def crit6(r: Result):
    worst = {("printed", 0): 0.0, ("printed", 1): 0.0, ("corrected", 0): 0.0, ("corrected", 1): 0.0}
    for k in range(4):
        for nu in (0.8, 1.5, 2.5):
            for xi in (0.0, 0.4, 0.8, 1.5):
                q = rd.radon_disc_mode(sp.PolarMode(k, nu), 0.3, xi).value
                for conv in ("printed", "corrected"):
                    cf = rd.radon_disc_closed_form(k, nu, xi, 0.3, conv)
                    err = abs(q - cf) / abs(cf) if abs(cf) > 1e-12 else abs(q)
                    worst[conv, k % 2] = max(worst[conv, k % 2], err)
    r.add("even k", worst["printed", 0], 1e-6)
    r.add("odd k", worst["printed", 1], 1e-6)
    r.note = "with (-1)^floor(k/2): even %.1e, odd %.1e" % (worst["corrected", 0], worst["corrected", 1])
    r.corrected = max(worst["corrected", 0], worst["corrected", 1])


# --- 7 ----------------------------------------------------------------------------------------


@_timed(7, "Extension angle from half-plane asymptotics", 60.0)
def crit7(r: Result):
    for nu in (0.7, 1.5):
        th = rd.extract_theta(1.0, nu, (30.0, 60.0))
        r.add(f"nu={nu}", abs(th - THREE_QUARTER), 1e-2)


# --- 8 ----------------------------------------------------------------------------------------


@_timed(8, "Singular values", 5.0)
def crit8(r: Result):
    r.add("lambda(50) sqrt(50/2pi) - 1", abs(rd.singular_value(50.0).lam * math.sqrt(50 / (2 * math.pi)) - 1), 1e-2)
    z = rd.singular_value_zeros()
    r.add("zeros at 3/2, 7/2", max(abs(z[0] - 1.5), abs(z[1] - 3.5)), 1e-8)


# --- 9 ----------------------------------------------------------------------------------------


@_timed(9, "Poschl-Teller", 1.0)
def crit9(r: Result):
    worst = 0.0
    for k in range(1, 6):
        spec = sp.poschl_teller_spectrum(k)
        if len(spec) != k:
            worst = math.inf
            continue
        worst = max(worst, max(abs(a - (2 * j + 1) / 2) for j, a in enumerate(spec)))
    r.add("spectrum {1/2, ..., (2k-1)/2}", worst, 0.0)
    filt = np.array(sp.poschl_teller_parity_filter(5))
    ext = np.array(sp.LiouvilleExtension(THREE_QUARTER).bound_orders(len(filt)))
    r.add("parity filter vs half-plane bound orders", float(np.max(np.abs(filt - ext))), 0.0)
    r.add("parity filter starts at 3/2", abs(filt[0] - 1.5), 0.0)


# --- 10 ---------------------------------------------------------------------------------------


@_timed(10, "E/O large-xi asymptotics (printed signs), parity, orthogonality", 30.0)
def crit10(r: Result):
    xi = np.array([8.0])
    worst = {"printed": 0.0, "corrected": 0.0}
    for k in (1, 2):
        for nu in (1.0, 2.0):
            d = sf.modified_conical_EO_array(k, nu, xi)
            env = sf.eo_envelope(k, nu, xi)[0]
            for conv in worst:
                E, O = sf.eo_asymptotic(k, nu, xi, conv)
                worst[conv] = max(worst[conv], abs(d["E"][0] - E[0]) / env, abs(d["O"][0] - O[0]) / env)
    r.add("asymptotics at xi=8", worst["printed"], 1e-4)
    r.note = "corrected signs %.1e" % worst["corrected"]
    r.corrected = worst["corrected"]

    par = 0.0
    s = np.linspace(0.05, 9.0, 40)
    for k in (1, 2):
        for nu in (1.0, 2.0):
            p = sf.modified_conical_EO_array(k, nu, s)
            m = sf.modified_conical_EO_array(k, nu, -s)
            par = max(par, float(np.max(np.abs(p["E"] - m["E"]))), float(np.max(np.abs(p["O"] + m["O"]))))
    r.add("parity", par, 0.0)

    # int E O cosh(xi) d xi over a symmetric window, values taken at each node independently
    x, w = gauss_panels(np.arange(-12.0, 12.01, 0.25), 16)
    orth = 0.0
    for k in (1, 2):
        for nu in (1.0, 2.0):
            d = sf.modified_conical_EO_array(k, nu, x)
            integrand = d["E"] * d["O"] * np.cosh(x)
            orth = max(orth, abs(np.sum(w * integrand)) / np.sum(w * np.abs(integrand)))
    r.add("E-O orthogonality", orth, 1e-8)


# --- 11 ---------------------------------------------------------------------------------------


@_timed(11, "Group decompositions, coset metrics, Casimir", 30.0)
def crit11(r: Result):
    rng = np.random.default_rng(11)
    worst = 0.0
    for name in lg.SCHEMES:
        for _ in range(1000):
            g = lg.compose(name, random_params(name, rng))
            worst = max(worst, float(np.max(np.abs(lg.compose(name, lg.decompose(g, name)).m - g.m))))
    r.add("round trips", worst, 1e-10)
    worst = 0.0
    for name in lg.SCHEMES:
        for _ in range(100):
            p, d = random_params(name, rng), rng.normal(size=3)
            worst = max(worst, abs(lg.coset_metric(name, p, d) - lg.coset_metric_closed_form(name, p, d)))
    r.add("coset metrics", worst, 1e-9)
    worst = 0.0
    for s in (0.5 + 1.5j, 2.0, -0.3 + 0.7j):
        f = lg.ChartedFunction("Iwasawa", lambda x, y, th, s=s: y**s)
        for pt in ((0.2, 0.7, 0.1), (-1.0, 2.5, 1.0)):
            worst = max(worst, abs(lg.casimir_apply(f, pt) / pt[1] ** s + s * (s - 1)))
    r.add("Casimir on y^s", worst, 1e-6)
    worst = max(float(np.max(np.abs(lg.casimir_matrix(fl) + 0.75 * np.eye(2)))) for fl in lg.Flavor)
    r.add("matrix Casimir", worst, 1e-6)


CRITERIA = [crit1, crit2, crit3, crit4, crit5, crit6, crit7, crit8, crit9, crit10, crit11]


def _record(res: Result):
    try:
        from conftest import ACCEPTANCE_LINES
    except ImportError:  # pragma: no cover - run outside pytest
        return
    ACCEPTANCE_LINES[res.number] = [(res.passed, res.line())]


@pytest.mark.parametrize("crit", CRITERIA, ids=[f"criterion_{c.number:02d}" for c in CRITERIA])
def test_criterion(crit):
    res = crit()
    _record(res)
    print(f"criterion {res.number:2d}: {'PASS' if res.passed else 'FAIL'}  {res.line()}")
    assert res.passed, res.line()


@pytest.mark.parametrize("crit", [crit6, crit10], ids=["criterion_06_corrected", "criterion_10_corrected"])
def test_sign_corrected_forms(crit):
    res = crit()
    assert res.corrected <= 1e-6 if crit is crit6 else res.corrected <= 1e-4


if __name__ == "__main__":
    ok = True
    for c in CRITERIA:
        res = c()
        ok &= res.passed
        print(f"criterion {res.number:2d}: {'PASS' if res.passed else 'FAIL'}  {res.line()}", flush=True)
    sys.exit(0 if ok else 1)
