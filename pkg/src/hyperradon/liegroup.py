"""SL(2,R) / SU(1,1) matrices, one-parameter subgroups and their coordinate charts.

Group elements are 2x2 unit-determinant matrices.  Six three-parameter
factorisations are supported; each provides ``compose``/``decompose``, the
bi-invariant group metric ``2 tr (g^-1 dg)^2`` in closed form, the coset
metric obtained by eliminating one differential, and the quadratic Casimir
as a second-order differential operator in the chart coordinates.
"""

from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import geometry as geo

DET_TOL = 1e-12
PARABOLIC_TOL = 1e-10
# 1e-4 leaves Richardson round-off near 1e-6; 1e-3 keeps truncation and round-off below 1e-8
FD_STEP = 1e-3


class Flavor(str, enum.Enum):
    SL2R = "SL2R"
    SU11 = "SU11"


class OutOfRangeError(ValueError):
    """Element lies outside the coordinate patch of a factorisation."""


class DegenerateCosetError(ValueError):
    """The eliminated direction is null in the group metric."""


@dataclass(frozen=True, eq=False)
class GroupElement:
    m: np.ndarray
    flavor: Flavor = Flavor.SL2R

    def __post_init__(self):
        m = np.asarray(self.m, dtype=complex if self.flavor == Flavor.SU11 else float)
        if m.shape != (2, 2):
            raise ValueError("group element must be 2x2")
        if abs(np.linalg.det(m) - 1.0) > DET_TOL * max(1.0, float(np.max(np.abs(m))) ** 2):
            raise ValueError(f"determinant {np.linalg.det(m)} != 1")
        if self.flavor == Flavor.SU11:
            if abs(m[1, 0] - np.conj(m[0, 1])) > 1e-12 * max(1.0, abs(m[0, 0])) or abs(
                m[1, 1] - np.conj(m[0, 0])
            ) > 1e-12 * max(1.0, abs(m[0, 0])):
                raise ValueError("not of SU(1,1) form ((l, u), (conj u, conj l))")
        object.__setattr__(self, "m", m)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        if other.flavor != self.flavor:
            other = other.as_flavor(self.flavor)
        return GroupElement(self.m @ other.m, self.flavor)

    def inverse(self) -> "GroupElement":
        a, b, c, d = self.m.ravel()
        return GroupElement(np.array([[d, -b], [-c, a]]), self.flavor)

    def as_flavor(self, flavor: Flavor | str) -> "GroupElement":
        flavor = Flavor(flavor)
        if flavor == self.flavor:
            return self
        if flavor == Flavor.SU11:
            return GroupElement(_CAYLEY @ self.m @ _CAYLEY_INV, Flavor.SU11)
        m = _CAYLEY_INV @ self.m @ _CAYLEY
        return GroupElement(m.real, Flavor.SL2R)

    def allclose(self, other: "GroupElement", tol: float = 1e-10) -> bool:
        o = other.as_flavor(self.flavor)
        return bool(np.max(np.abs(self.m - o.m)) <= tol * max(1.0, float(np.max(np.abs(self.m)))))


# Cayley transform Z = (z - i)/(z + i) as a matrix, scaled to unit determinant
_CAYLEY = np.array([[1.0, -1j], [1.0, 1j]]) / cmath.sqrt(2j)
_CAYLEY_INV = np.linalg.inv(_CAYLEY)


# --- Lie algebra ------------------------------------------------------------------

L_M1 = np.array([[0.0, 1.0], [0.0, 0.0]])
L_0 = 0.5 * np.array([[1.0, 0.0], [0.0, -1.0]])
L_P1 = np.array([[0.0, 0.0], [-1.0, 0.0]])
SL2R_BASIS = {-1: L_M1, 0: L_0, 1: L_P1}

LAMBDA_0 = 0.5 * np.array([[1j, 0], [0, -1j]])
LAMBDA_1 = 0.5 * np.array([[0, 1], [1, 0]], dtype=complex)
LAMBDA_2 = 0.5 * np.array([[0, 1j], [-1j, 0]])
SU11_BASIS = (LAMBDA_0, LAMBDA_1, LAMBDA_2)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def casimir_matrix(flavor: Flavor | str = Flavor.SL2R) -> np.ndarray:
    """Quadratic Casimir in the defining representation (equals -3/4 I)."""
    if Flavor(flavor) == Flavor.SL2R:
        return -L_0 @ L_0 + 0.5 * (L_M1 @ L_P1 + L_P1 @ L_M1)
    return LAMBDA_0 @ LAMBDA_0 - LAMBDA_1 @ LAMBDA_1 - LAMBDA_2 @ LAMBDA_2


@dataclass(frozen=True)
class AlgebraElement:
    coeffs: tuple[float, float, float]
    flavor: Flavor = Flavor.SL2R

    def matrix(self) -> np.ndarray:
        basis = (L_M1, L_0, L_P1) if self.flavor == Flavor.SL2R else SU11_BASIS
        return sum(c * b for c, b in zip(self.coeffs, basis))


def _expm2(X: np.ndarray) -> np.ndarray:
    """exp of a traceless 2x2 matrix: cosh(r) I + sinh(r)/r X with r^2 = -det X."""
    r2 = -(X[0, 0] * X[1, 1] - X[0, 1] * X[1, 0])
    r = cmath.sqrt(r2)
    if abs(r) < 1e-8:
        sh = 1.0 + r2 / 6.0
        ch = 1.0 + r2 / 2.0
    else:
        sh = cmath.sinh(r) / r
        ch = cmath.cosh(r)
    out = ch * np.eye(2) + sh * X
    if np.isrealobj(X):
        return out.real
    return out


def exp_algebra(X: np.ndarray, flavor: Flavor | str = Flavor.SL2R) -> GroupElement:
    return GroupElement(_expm2(np.asarray(X)), Flavor(flavor))


# --- named one-parameter subgroups ---------------------------------------------------

def _n(t):
    return np.array([[1.0, 0.0], [t, 1.0]])


def _ntilde(t):
    return np.array([[1.0, t], [0.0, 1.0]])


def _h(s):
    return np.array([[math.exp(s / 2), 0.0], [0.0, math.exp(-s / 2)]])


def _a(u):
    c, s = math.cosh(u / 2), math.sinh(u / 2)
    return np.array([[c, s], [s, c]])


def _T(y):
    if not y > 0:
        raise ValueError("T(y) needs y > 0")
    r = math.sqrt(y)
    return np.array([[r, 0.0], [0.0, 1.0 / r]])


def _k(th):
    c, s = math.cos(th / 2), math.sin(th / 2)
    return np.array([[c, s], [-s, c]])


def _eL0(phi):
    return np.array([[cmath.exp(0.5j * phi), 0], [0, cmath.exp(-0.5j * phi)]])


def _eL1(xi):
    c, s = math.cosh(xi / 2), math.sinh(xi / 2)
    return np.array([[c, s], [s, c]], dtype=complex)


def _eL2(th):
    c, s = math.cosh(th / 2), math.sinh(th / 2)
    return np.array([[c, 1j * s], [-1j * s, c]])


# name -> (matrix function, generator, flavor)
_SUBGROUPS: dict[str, tuple[Callable, np.ndarray, Flavor]] = {
    "N": (_n, -L_P1, Flavor.SL2R),
    "Ntilde": (_ntilde, L_M1, Flavor.SL2R),
    "H": (_h, L_0, Flavor.SL2R),
    "A": (_a, 0.5 * (L_M1 - L_P1), Flavor.SL2R),
    "T": (_T, L_0, Flavor.SL2R),
    "K": (_k, 0.5 * (L_M1 + L_P1), Flavor.SL2R),
    "expL0": (_eL0, LAMBDA_0, Flavor.SU11),
    "expL1": (_eL1, LAMBDA_1, Flavor.SU11),
    "expL2": (_eL2, LAMBDA_2, Flavor.SU11),
}
_ALIASES = {"Ñ": "Ntilde", "NT": "Ntilde", "expΛ0": "expL0", "expΛ1": "expL1", "expΛ2": "expL2"}

SUBGROUP_NAMES = tuple(_SUBGROUPS)


def subgroup_element(name: str, param: float) -> GroupElement:
    """Closed-form element of a named one-parameter subgroup.

    ``T`` is parametrised multiplicatively (``T(a) T(b) = T(ab)``); all other
    subgroups are additive.
    """
    name = _ALIASES.get(name, name)
    if name not in _SUBGROUPS:
        raise KeyError(f"unknown subgroup {name!r}; expected one of {SUBGROUP_NAMES}")
    fn, _, flavor = _SUBGROUPS[name]
    return GroupElement(fn(param), flavor)


def _generator_jacobian(name: str, param: float) -> np.ndarray:
    """X such that d/dp subgroup(p) = subgroup(p) X."""
    _, X, _ = _SUBGROUPS[name]
    if name == "T":
        return X / param
    return X


# --- classification and action ------------------------------------------------------

def classify(g: GroupElement) -> str:
    """'elliptic', 'parabolic' or 'hyperbolic' from |tr g| against 2."""
    tr = abs(np.trace(g.as_flavor(Flavor.SL2R).m).real)
    if abs(tr - 2.0) <= PARABOLIC_TOL:
        return "parabolic"
    return "elliptic" if tr < 2.0 else "hyperbolic"


def _mobius_complex(m: np.ndarray, z: complex) -> complex:
    a, b, c, d = m.ravel()
    return (a * z + b) / (c * z + d)


def mobius(g: GroupElement, p: geo.ModelPoint) -> geo.ModelPoint:
    """Fractional linear action; the result is returned in the chart of ``p``.

    SL(2,R) acts on the half-plane and SU(1,1) on the disc; other charts are
    converted through the matching model and back.
    """
    if g.flavor == Flavor.SL2R:
        hp = geo.convert(p, geo.Chart.HALFPLANE)
        w = _mobius_complex(g.m, hp.z)
        out: geo.ModelPoint = geo.HalfPlane(w.real, w.imag)
    else:
        dp = geo.convert(p, geo.Chart.DISC)
        w = _mobius_complex(g.m, dp.Z)
        out = geo.Disc(w.real, w.imag)
    return geo.convert(out, p.chart)


# --- factorisations ---------------------------------------------------------------------

def _wrap_half_angle(x: float) -> float:
    """Reduce a half-angle parameter to (-2 pi, 2 pi]; matrices are 4 pi periodic."""
    y = math.fmod(x + 2 * math.pi, 4 * math.pi)
    if y <= 0:
        y += 4 * math.pi
    return y - 2 * math.pi


@dataclass(frozen=True)
class Scheme:
    name: str
    factors: tuple[str, str, str]
    signs: tuple[int, int, int]
    coords: tuple[str, str, str]
    flavor: Flavor
    forgotten: int
    decompose: Callable[[np.ndarray], tuple[float, float, float]] = field(repr=False)

    def compose(self, params: Sequence[float]) -> GroupElement:
        m = np.eye(2, dtype=complex if self.flavor == Flavor.SU11 else float)
        for name, s, p in zip(self.factors, self.signs, params):
            m = m @ _SUBGROUPS[name][0](s * p if name != "T" else p)
        return GroupElement(m, self.flavor)

    def left_jacobians(self, params: Sequence[float]) -> list[np.ndarray]:
        """J_i with g^-1 dg = sum_i J_i dp_i, exactly."""
        mats = [_SUBGROUPS[n][0](s * p if n != "T" else p) for n, s, p in zip(self.factors, self.signs, params)]
        out = []
        for i in range(3):
            n, s, p = self.factors[i], self.signs[i], params[i]
            X = s * _generator_jacobian(n, s * p if n != "T" else p)
            R = np.eye(2, dtype=complex)
            for j in range(i + 1, 3):
                R = R @ mats[j]
            out.append(np.linalg.solve(R, X @ R))
        return out


def _dec_iwasawa(m):
    m = m.real
    w = _mobius_complex(m, 1j)
    x, y = w.real, w.imag
    k = np.linalg.inv(_T(y)) @ _ntilde(-x) @ m
    th = 2.0 * math.atan2(k[0, 1], k[0, 0])
    return x, y, _wrap_half_angle(th)


def _dec_nha(m):
    m = m.real
    g, d = m[1, 0], m[1, 1]
    q = d * d - g * g
    if not (d > 0 and q > 0):
        raise OutOfRangeError("NHA chart needs lower-right entry > |lower-left entry|")
    xi = -math.log(q)
    phi = 2.0 * math.atanh(g / d)
    t = (m @ np.linalg.inv(_h(xi) @ _a(phi)))[0, 1]
    return t, xi, phi


def _dec_nhk(m):
    m = m.real
    g, d = m[1, 0], m[1, 1]
    xi = -math.log(g * g + d * d)
    phi = _wrap_half_angle(2.0 * math.atan2(-g, d))
    t = (m @ np.linalg.inv(_h(xi) @ _k(phi)))[0, 1]
    return t, xi, phi


def _dec_hah(m):
    m = m.real
    a, b, c, d = m.ravel()
    if not d > 0 or b * c < 0 or (b == 0) != (c == 0):
        raise OutOfRangeError("HAH chart needs lower-right entry > 0 and b*c >= 0")
    S = math.copysign(math.sqrt(b * c), b if b != 0 else 1.0)
    rho = 2.0 * math.asinh(S)
    tp = math.log(a / d)
    tm = math.log(b / c) if S != 0 else 0.0
    return 0.5 * (tp + tm), rho, 0.5 * (tp - tm)


def _dec_euler(m):
    lam, mu = m[0, 0], m[0, 1]
    xi = 2.0 * math.asinh(abs(mu))
    al = cmath.phase(lam)
    am = cmath.phase(mu) if abs(mu) > 0 else al
    phi = al + am
    th = am - al
    return _wrap_half_angle(phi), xi, _wrap_half_angle(th)


def _dec_ads(m):
    lam, mu = m[0, 0], m[0, 1]
    w = lam * np.conj(mu)
    xi = math.asinh(2.0 * w.real)
    tau = math.asinh(2.0 * w.imag / math.cosh(xi))
    c1, s1 = math.cosh(xi / 2), math.sinh(xi / 2)
    c2, s2 = math.cosh(tau / 2), math.sinh(tau / 2)
    lam0 = complex(c1 * c2, s1 * s2)
    t = 2.0 * cmath.phase(lam / lam0)
    return _wrap_half_angle(t), xi, tau


SCHEMES: dict[str, Scheme] = {
    "Iwasawa": Scheme("Iwasawa", ("Ntilde", "T", "K"), (1, 1, 1), ("x", "y", "theta"), Flavor.SL2R, 2, _dec_iwasawa),
    "NHA": Scheme("NHA", ("Ntilde", "H", "A"), (1, 1, 1), ("t", "xi", "phi"), Flavor.SL2R, 2, _dec_nha),
    "NHK": Scheme("NHK", ("Ntilde", "H", "K"), (1, 1, 1), ("t", "xi", "phi"), Flavor.SL2R, 2, _dec_nhk),
    "HAH": Scheme("HAH", ("H", "A", "H"), (1, 1, 1), ("t", "rho", "phi"), Flavor.SL2R, 2, _dec_hah),
    "EulerSU11": Scheme("EulerSU11", ("expL0", "expL1", "expL0"), (1, 1, -1), ("phi", "xi", "theta"), Flavor.SU11, 2, _dec_euler),
    "AdS-SU11": Scheme("AdS-SU11", ("expL0", "expL1", "expL2"), (1, 1, -1), ("t", "xi", "tau"), Flavor.SU11, 2, _dec_ads),
}


def get_scheme(scheme: str | Scheme) -> Scheme:
    if isinstance(scheme, Scheme):
        return scheme
    try:
        return SCHEMES[scheme]
    except KeyError:
        raise KeyError(f"unknown scheme {scheme!r}; expected one of {tuple(SCHEMES)}") from None


def compose(scheme: str | Scheme, params: Sequence[float]) -> GroupElement:
    return get_scheme(scheme).compose(params)


def decompose(g: GroupElement, scheme: str | Scheme) -> tuple[float, float, float]:
    """Chart parameters of ``g``; ``compose(scheme, decompose(g, scheme))`` equals ``g``."""
    sc = get_scheme(scheme)
    m = g.as_flavor(sc.flavor).m
    return tuple(float(v) for v in sc.decompose(m))


# --- metrics -------------------------------------------------------------------------------

def group_metric_matrix(scheme: str | Scheme, params: Sequence[float]) -> np.ndarray:
    """Symmetric matrix M with ds^2 = dp^T M dp for ds^2 = 2 tr (g^-1 dg)^2."""
    J = get_scheme(scheme).left_jacobians(params)
    M = np.empty((3, 3))
    for i in range(3):
        for j in range(i, 3):
            M[i, j] = M[j, i] = 2.0 * np.trace(J[i] @ J[j]).real
    return M


def group_metric(scheme: str | Scheme, params: Sequence[float], dparams: Sequence[float]) -> float:
    M = group_metric_matrix(scheme, params)
    dp = np.asarray(dparams, dtype=float)
    return float(dp @ M @ dp)


# closed forms of the group metric, used as an independent check of the above
def group_metric_closed_form(scheme: str, params, dparams) -> float:
    p1, p2, p3 = params
    d1, d2, d3 = dparams
    if scheme == "EulerSU11":
        return -d3**2 + d2**2 - d1**2 + 2 * math.cosh(p2) * d3 * d1
    if scheme == "AdS-SU11":
        return d3**2 + d2**2 - d1**2 - 2 * math.sinh(p2) * d3 * d1
    if scheme == "Iwasawa":
        y = p2
        return (d2**2 - 2 * y * d1 * d3 - y * y * d3**2) / (y * y)
    if scheme == "NHK":
        return d2**2 - d3**2 - 2 * d3 * d1 * math.exp(-p2)
    if scheme == "NHA":
        return d2**2 + d3**2 + 2 * d3 * d1 * math.exp(-p2)
    if scheme == "HAH":
        return d1**2 + d2**2 + d3**2 + 2 * d1 * d3 * math.cosh(p2)
    raise KeyError(scheme)


def coset_metric_matrix(scheme: str | Scheme, params: Sequence[float], forgotten: int | None = None) -> np.ndarray:
    """2x2 metric left after eliminating one differential.

    The eliminated differential is set to its stationary value, which turns
    the quadratic form into its Schur complement.
    """
    sc = get_scheme(scheme)
    f = sc.forgotten if forgotten is None else forgotten
    M = group_metric_matrix(sc, params)
    if abs(M[f, f]) < 1e-14:
        raise DegenerateCosetError(f"coordinate {sc.coords[f]} is null in the group metric")
    keep = [i for i in range(3) if i != f]
    S = M[np.ix_(keep, keep)] - np.outer(M[keep, f], M[f, keep]) / M[f, f]
    return S


def coset_metric(scheme: str | Scheme, params: Sequence[float], dparams: Sequence[float], forgotten: int | None = None) -> float:
    """Coset line element; the entry of ``dparams`` for the forgotten coordinate is ignored."""
    sc = get_scheme(scheme)
    f = sc.forgotten if forgotten is None else forgotten
    S = coset_metric_matrix(sc, params, f)
    dp = np.array([d for i, d in enumerate(dparams) if i != f], dtype=float)
    return float(dp @ S @ dp)


def coset_metric_closed_form(scheme: str, params, dparams) -> float:
    """Closed forms of the coset metrics with the default forgotten coordinate."""
    p1, p2, p3 = params
    d1, d2, d3 = dparams
    if scheme == "EulerSU11":
        return d2**2 + math.sinh(p2) ** 2 * d1**2
    if scheme == "AdS-SU11":
        return d2**2 - math.cosh(p2) ** 2 * d1**2
    if scheme == "Iwasawa":
        return (d1**2 + d2**2) / p2**2
    if scheme == "NHK":
        return d2**2 + math.exp(-2 * p2) * d1**2
    if scheme == "NHA":
        return d2**2 - math.exp(-2 * p2) * d1**2
    if scheme == "HAH":
        return d2**2 - math.sinh(p2) ** 2 * d1**2
    raise KeyError(scheme)


# --- Casimir operators ---------------------------------------------------------------------

@dataclass(frozen=True)
class ChartedFunction:
    """A function of the three chart coordinates of ``scheme``.

    ``fourier`` lists, per coordinate, the Fourier index of an ignorable
    coordinate (``None`` when the dependence is not a pure exponential).
    """

    scheme: str
    func: Callable[[float, float, float], complex]
    fourier: tuple[float | None, float | None, float | None] = (None, None, None)

    def __call__(self, p1, p2, p3):
        return self.func(p1, p2, p3)


def _casimir_coefficients(scheme: str, p) -> tuple[np.ndarray, np.ndarray]:
    """(A, b) with C2 f = sum A_ij d_i d_j f + sum b_i d_i f in chart coordinates."""
    _, u, _ = p
    A = np.zeros((3, 3))
    b = np.zeros(3)
    if scheme == "Iwasawa":
        y = u
        A[0, 0] = A[1, 1] = -y * y
        A[0, 2] = A[2, 0] = y
    elif scheme == "NHA":
        e = math.exp(u)
        A[0, 0] = e * e
        A[0, 2] = A[2, 0] = -e
        A[1, 1] = -1.0
        b[1] = 1.0
    elif scheme == "NHK":
        e = math.exp(u)
        A[0, 0] = -e * e
        A[0, 2] = A[2, 0] = e
        A[1, 1] = -1.0
        b[1] = 1.0
    elif scheme == "EulerSU11":
        s2 = math.sinh(u) ** 2
        A[0, 0] = A[2, 2] = -1.0 / s2
        A[0, 2] = A[2, 0] = -math.cosh(u) / s2
        A[1, 1] = -1.0
        b[1] = -1.0 / math.tanh(u)
    elif scheme == "AdS-SU11":
        c2 = math.cosh(u) ** 2
        A[0, 0] = 1.0 / c2
        A[2, 2] = -1.0 / c2
        A[0, 2] = A[2, 0] = math.sinh(u) / c2
        A[1, 1] = -1.0
        b[1] = -math.tanh(u)
    elif scheme == "HAH":
        s2 = math.sinh(u) ** 2
        A[0, 0] = A[2, 2] = 1.0 / s2
        A[0, 2] = A[2, 0] = -math.cosh(u) / s2
        A[1, 1] = -1.0
        b[1] = -1.0 / math.tanh(u)
    else:
        raise KeyError(scheme)
    return A, b


def _second_derivs(f: Callable, p: np.ndarray, h: float):
    """Gradient and Hessian by central differences at step h."""
    f0 = f(*p)
    g = np.zeros(3, dtype=complex)
    H = np.zeros((3, 3), dtype=complex)
    E = np.eye(3) * h
    for i in range(3):
        fp, fm = f(*(p + E[i])), f(*(p - E[i]))
        g[i] = (fp - fm) / (2 * h)
        H[i, i] = (fp - 2 * f0 + fm) / (h * h)
        for j in range(i + 1, 3):
            v = (f(*(p + E[i] + E[j])) - f(*(p + E[i] - E[j])) - f(*(p - E[i] + E[j])) + f(*(p - E[i] - E[j]))) / (4 * h * h)
            H[i, j] = H[j, i] = v
    return g, H


def _richardson(fn: Callable[[float], complex], h: float) -> complex:
    a, b = fn(h), fn(h / 2)
    return (4 * b - a) / 3


def casimir_apply(f: ChartedFunction, point: Sequence[float], h: float | None = None) -> complex:
    """Apply the chart's Casimir operator to ``f`` at ``point`` by finite differences.

    Central differences at steps h and h/2 are combined by one Richardson step.
    """
    h = FD_STEP if h is None else h
    p = np.asarray(point, dtype=float)
    scale = max(1.0, float(np.max(np.abs(p))))
    if h < 1e-7 * scale:
        warnings.warn("finite-difference step is small relative to the point; expect round-off", RuntimeWarning)
    A, b = _casimir_coefficients(f.scheme, p)

    def at(step):
        g, H = _second_derivs(f.func, p, step)
        return complex(np.sum(A * H) + b @ g)

    return _richardson(at, h)


def _curve_second_derivative(F: Callable[[GroupElement], complex], g: GroupElement, X: np.ndarray, h: float, side: str):
    def val(s):
        e = exp_algebra(s * X, g.flavor)
        return F(g @ e) if side == "left" else F(e @ g)

    def d2(step):
        return (val(step) - 2 * val(0.0) + val(-step)) / (step * step)

    return _richardson(d2, h)


def casimir_invariant_fields(f: ChartedFunction, point: Sequence[float], side: str = "left", h: float | None = None) -> complex:
    """Casimir from left- or right-invariant vector fields.

    Each field is realised as a derivative along ``g exp(sX)`` (left) or
    ``exp(sX) g`` (right); the chart values are recovered with ``decompose``.
    This route shares no formulas with :func:`casimir_apply`.
    """
    h = FD_STEP if h is None else h
    sc = get_scheme(f.scheme)
    g = sc.compose(point)

    def F(el):
        return f.func(*decompose(el, sc))

    def D2(X):
        return _curve_second_derivative(F, g, X, h, side)

    if sc.flavor == Flavor.SL2R:
        # -L0^2 + (L-1 L1 + L1 L-1)/2, the symmetric product via (A+B)^2 - A^2 - B^2
        return -D2(L_0) + 0.5 * (D2(L_M1 + L_P1) - D2(L_M1) - D2(L_P1))
    return D2(LAMBDA_0) - D2(LAMBDA_1) - D2(LAMBDA_2)


def reduced_casimir(scheme: str, lam: float, mu: float, psi: Callable[[float], complex], u: float, h: float | None = None) -> complex:
    """Casimir acting on e^{i lam p1} psi(p2) e^{i mu p3}, divided by the exponentials.

    Uses the one-variable radial operators of each chart.
    """
    h = FD_STEP if h is None else h

    def d(step):
        p0, pp, pm = psi(u), psi(u + step), psi(u - step)
        return (pp - pm) / (2 * step), (pp - 2 * p0 + pm) / (step * step)

    def at(step):
        d1, d2 = d(step)
        p0 = psi(u)
        if scheme == "EulerSU11":
            s = math.sinh(u)
            return -d2 - d1 / math.tanh(u) + (lam**2 + mu**2 + 2 * lam * mu * math.cosh(u)) / (s * s) * p0
        if scheme == "AdS-SU11":
            c = math.cosh(u)
            return -d2 - math.tanh(u) * d1 - (lam**2 - mu**2 + 2 * lam * mu * math.sinh(u)) / (c * c) * p0
        if scheme == "NHA":
            return -d2 + d1 + (2 * lam * mu * math.exp(u) - lam**2 * math.exp(2 * u)) * p0
        if scheme == "NHK":
            return -d2 + d1 + (-2 * lam * mu * math.exp(u) + lam**2 * math.exp(2 * u)) * p0
        if scheme == "HAH":
            s = math.sinh(u)
            return -d2 - d1 / math.tanh(u) - (lam**2 + mu**2 - 2 * lam * mu * math.cosh(u)) / (s * s) * p0
        raise KeyError(scheme)

    return _richardson(at, h)
