"""Charts of the hyperbolic plane, metrics, geodesic families and kinematic space.

Four charts are supported: upper half-plane ``z = x + iy``, Poincare disc
``Z = X + iY``, geodesic polar coordinates ``(rho, phi)`` about the disc
centre, and the upper sheet of the hyperboloid ``T^2 - X^2 - Y^2 = 1``.
The hyperboloid is used as the canonical chart when two points are compared.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

CHART_TOL = 1e-12


class Chart(str, enum.Enum):
    HALFPLANE = "halfplane"
    DISC = "disc"
    POLAR = "polar"
    HYPERBOLOID = "hyperboloid"


class DomainError(ValueError):
    """A coordinate tuple that does not describe a point of the chart."""


class SingularChartError(DomainError):
    """The chart degenerates at the requested point."""


@dataclass(frozen=True)
class HalfPlane:
    x: float
    y: float

    chart = Chart.HALFPLANE

    def __post_init__(self):
        if not self.y > 0:
            raise DomainError(f"half-plane point needs y > 0, got y={self.y}")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True)
class Disc:
    X: float
    Y: float

    chart = Chart.DISC

    def __post_init__(self):
        if not self.X * self.X + self.Y * self.Y < 1.0:
            raise DomainError(f"disc point needs |Z| < 1, got ({self.X}, {self.Y})")

    @property
    def Z(self) -> complex:
        return complex(self.X, self.Y)


@dataclass(frozen=True)
class Polar:
    rho: float
    phi: float

    chart = Chart.POLAR

    def __post_init__(self):
        if not self.rho >= 0:
            raise DomainError(f"polar point needs rho >= 0, got {self.rho}")


@dataclass(frozen=True)
class Hyperboloid:
    T: float
    X: float
    Y: float

    chart = Chart.HYPERBOLOID

    def __post_init__(self):
        q = self.T * self.T - self.X * self.X - self.Y * self.Y
        if self.T < 1.0 - CHART_TOL or abs(q - 1.0) > CHART_TOL * max(1.0, self.T * self.T):
            raise DomainError(f"not on the upper hyperboloid sheet: T^2-X^2-Y^2={q}")


ModelPoint = Union[HalfPlane, Disc, Polar, Hyperboloid]


# --- chart maps -------------------------------------------------------------

def _to_disc_complex(p: ModelPoint) -> complex:
    if isinstance(p, Disc):
        return p.Z
    if isinstance(p, HalfPlane):
        z = p.z
        return (z - 1j) / (z + 1j)
    if isinstance(p, Polar):
        return complex(math.cos(p.phi), math.sin(p.phi)) * math.tanh(p.rho / 2.0)
    if isinstance(p, Hyperboloid):
        return complex(p.X, p.Y) / (1.0 + p.T)
    raise TypeError(f"unknown point type {type(p).__name__}")


def _to_hyperboloid_triple(p: ModelPoint) -> tuple[float, float, float]:
    if isinstance(p, Hyperboloid):
        return p.T, p.X, p.Y
    if isinstance(p, Polar):
        s = math.sinh(p.rho)
        return math.cosh(p.rho), s * math.cos(p.phi), s * math.sin(p.phi)
    if isinstance(p, HalfPlane):
        # direct formula avoids the Cayley map near the boundary
        x, y = p.x, p.y
        r2 = x * x + y * y
        T = (r2 + 1.0) / (2.0 * y)
        X = (r2 - 1.0) / (2.0 * y)
        Y = -x / y
        return T, X, Y
    Z = _to_disc_complex(p)
    r2 = abs(Z) ** 2
    d = 1.0 - r2
    return (1.0 + r2) / d, 2.0 * Z.real / d, 2.0 * Z.imag / d


def convert(p: ModelPoint, target: Chart | str) -> ModelPoint:
    """Return the same geometric point expressed in chart ``target``."""
    target = Chart(target)
    if p.chart == target:
        return p
    if target == Chart.DISC:
        Z = _to_disc_complex(p)
        return Disc(Z.real, Z.imag)
    if target == Chart.HYPERBOLOID:
        T, X, Y = _to_hyperboloid_triple(p)
        T = max(T, 1.0)
        return Hyperboloid(T, X, Y)
    if target == Chart.POLAR:
        T, X, Y = _to_hyperboloid_triple(p)
        rho = math.asinh(math.hypot(X, Y))
        phi = math.atan2(Y, X) if rho > 0 else 0.0
        if isinstance(p, Polar):
            phi = p.phi
        return Polar(rho, phi)
    if target == Chart.HALFPLANE:
        if isinstance(p, Polar):
            # T - X = e^-rho + 2 sinh(rho) sin^2(phi/2), free of cancellation near phi = 0
            sh = math.sinh(p.rho)
            y = 1.0 / (math.exp(-p.rho) + 2.0 * sh * math.sin(0.5 * p.phi) ** 2)
            return HalfPlane(-sh * math.sin(p.phi) * y, y)
        if isinstance(p, Hyperboloid):
            T, X, Y = _to_hyperboloid_triple(p)
            # inverse of the direct half-plane -> hyperboloid formula
            y = 1.0 / (T - X)
            return HalfPlane(-Y * y, y)
        Z = _to_disc_complex(p)
        z = 1j * (1.0 + Z) / (1.0 - Z)
        return HalfPlane(z.real, z.imag)
    raise DomainError(f"cannot convert to {target}")


def distance(p: ModelPoint, q: ModelPoint) -> float:
    """Hyperbolic distance.

    Uses 2 asinh(|z - w| / (2 sqrt(y1 y2))) for two half-plane points and
    2 atanh(|Z - W| / |1 - conj(Z) W|) otherwise; unlike arccosh of the
    hyperboloid bilinear form, both stay accurate for nearby points.
    """
    if isinstance(p, HalfPlane) and isinstance(q, HalfPlane):
        return 2.0 * math.asinh(abs(p.z - q.z) / (2.0 * math.sqrt(p.y * q.y)))
    Z, W = _to_disc_complex(p), _to_disc_complex(q)
    r = abs(Z - W) / abs(1.0 - Z.conjugate() * W)
    return 2.0 * math.atanh(min(r, 1.0 - 1e-16))


def same_point(p: ModelPoint, q: ModelPoint, tol: float | None = None) -> bool:
    tol = CHART_TOL if tol is None else tol
    a = np.array(_to_hyperboloid_triple(p))
    b = np.array(_to_hyperboloid_triple(q))
    return bool(np.max(np.abs(a - b)) <= tol * max(1.0, float(np.max(np.abs(a)))))


def metric_components(p: ModelPoint) -> np.ndarray:
    """Metric tensor g_{mu nu} of the point's own chart."""
    if isinstance(p, HalfPlane):
        return np.eye(2) / (p.y * p.y)
    if isinstance(p, Disc):
        return np.eye(2) * 4.0 / (1.0 - p.X * p.X - p.Y * p.Y) ** 2
    if isinstance(p, Polar):
        return np.diag([1.0, math.sinh(p.rho) ** 2])
    if isinstance(p, Hyperboloid):
        # induced metric in the (X, Y) coordinates of the sheet
        T = p.T
        v = np.array([p.X, p.Y])
        return np.eye(2) - np.outer(v, v) / (T * T)
    raise TypeError(f"unknown point type {type(p).__name__}")


# --- geodesics ----------------------------------------------------------------

@dataclass(frozen=True)
class HalfPlaneGeodesic:
    """Semicircle (x - t)^2 + y^2 = exp(2 xi), traversed with unit speed."""

    t: float
    xi: float
    orientation: int = 1

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")

    def flipped(self) -> "HalfPlaneGeodesic":
        return HalfPlaneGeodesic(self.t, self.xi, -self.orientation)


@dataclass(frozen=True)
class DiscGeodesic:
    """Disc geodesic obtained by boosting the vertical diameter by xi and
    rotating by theta.  Negative xi continues the family through the diameter
    onto the opposite side of the disc."""

    theta: float
    xi: float
    orientation: int = 1

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")

    def flipped(self) -> "DiscGeodesic":
        return DiscGeodesic(self.theta, self.xi, -self.orientation)

    def endpoint_angles(self) -> tuple[float, float]:
        """Boundary angles theta -/+ alpha with tan(alpha) = 1/sinh(xi)."""
        alpha = math.atan2(1.0, math.sinh(self.xi))
        return self.theta - alpha, self.theta + alpha


Geodesic = Union[HalfPlaneGeodesic, DiscGeodesic]


def halfplane_geodesic_xy(g: HalfPlaneGeodesic, sigma):
    """Vectorised (x, y) along a half-plane geodesic."""
    s = g.orientation * np.asarray(sigma, dtype=float)
    r = math.exp(g.xi)
    return r * np.tanh(s) + g.t, r / np.cosh(s)


def disc_geodesic_XY(g: DiscGeodesic, sigma):
    """Vectorised (X, Y) along a disc geodesic, rotated by theta."""
    s = g.orientation * np.asarray(sigma, dtype=float)
    ch = math.cosh(g.xi) * np.cosh(s)
    den = 1.0 + ch
    X0 = math.sinh(g.xi) * np.cosh(s) / den
    Y0 = np.sinh(s) / den
    c, sn = math.cos(g.theta), math.sin(g.theta)
    return c * X0 - sn * Y0, sn * X0 + c * Y0


def _arccosh_product(a: float, b):
    """arccosh(cosh a cosh b) without cancellation near 0 or overflow at large |a| + |b|.

    cosh a cosh b - 1 = sinh^2((a+b)/2) + sinh^2((a-b)/2), and arccosh(1 + 2u^2) = 2 asinh(u).
    """
    b = np.asarray(b, dtype=float)
    big = np.abs(a) + np.abs(b) > 40.0
    bs = np.where(big, 0.0, b)
    u2 = 0.5 * (np.sinh(0.5 * (a + bs)) ** 2 + np.sinh(0.5 * (a - bs)) ** 2)
    small = 2.0 * np.arcsinh(np.sqrt(u2))
    # log(2 cosh a cosh b) has relative error below e^-80 in this branch
    la = abs(a) + np.log1p(np.exp(-2 * abs(a)))
    lb = np.abs(b) + np.log1p(np.exp(-2 * np.abs(b)))
    large = la + lb - math.log(2.0)
    return np.where(big, large, small)


def disc_geodesic_polar(g: DiscGeodesic, sigma):
    """Vectorised (rho, phi) along a disc geodesic with phi continuous in sigma.

    cosh(rho) = cosh(xi) cosh(sigma) and phi = theta + arctan(csch(xi) tanh(sigma)),
    shifted by pi when xi < 0 so that the point lies on the correct side.
    """
    s = g.orientation * np.asarray(sigma, dtype=float)
    xi = g.xi
    rho = _arccosh_product(xi, s)
    if xi == 0.0:
        phi = g.theta + 0.5 * math.pi * np.sign(s)
    else:
        # subnormal xi overflows to +-inf, whose arctan is the right limit
        with np.errstate(over="ignore", divide="ignore"):
            phi = g.theta + np.arctan(np.tanh(s) / math.sinh(xi))
        if xi < 0:
            phi = phi + math.pi
    return rho, phi


def geodesic_point(g: Geodesic, sigma: float) -> ModelPoint:
    """Point at signed arc length ``sigma`` along ``g``."""
    if isinstance(g, HalfPlaneGeodesic):
        x, y = halfplane_geodesic_xy(g, sigma)
        return HalfPlane(float(x), float(y))
    if isinstance(g, DiscGeodesic):
        X, Y = disc_geodesic_XY(g, sigma)
        return Disc(float(X), float(Y))
    raise TypeError(f"unknown geodesic type {type(g).__name__}")


# --- kinematic space ------------------------------------------------------------

@dataclass(frozen=True)
class PoincarePatch:
    t: float
    eta: float


@dataclass(frozen=True)
class Global:
    theta: float
    alpha: float


@dataclass(frozen=True)
class GlobalXi:
    theta: float
    xi: float


KinematicPoint = Union[PoincarePatch, Global, GlobalXi]


def global_to_xi(p: Global) -> GlobalXi:
    if not 0.0 < p.alpha < math.pi:
        raise SingularChartError("alpha must lie in (0, pi)")
    return GlobalXi(p.theta, math.asinh(1.0 / math.tan(p.alpha)))


def xi_to_global(p: GlobalXi) -> Global:
    return Global(p.theta, math.atan2(1.0, math.sinh(p.xi)))


def kinematic_metric(p: KinematicPoint) -> np.ndarray:
    """Lorentzian metric on the space of geodesics, time coordinate first."""
    if isinstance(p, PoincarePatch):
        if not p.eta > 0:
            raise SingularChartError("eta must be positive")
        return np.diag([-1.0, 1.0]) / (p.eta * p.eta)
    if isinstance(p, GlobalXi):
        return np.diag([-math.cosh(p.xi) ** 2, 1.0])
    if isinstance(p, Global):
        if not 0.0 < p.alpha < math.pi:
            raise SingularChartError("alpha must lie in (0, pi)")
        return np.diag([-1.0, 1.0]) / math.sin(p.alpha) ** 2
    raise TypeError(f"unknown kinematic point {type(p).__name__}")
