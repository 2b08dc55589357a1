"""Laplacian eigenfunctions, index transforms and the Liouville operator.

Half-plane modes e^{ikx} sqrt(y) K_{i kappa}(|k| y), disc (polar) modes
e^{im phi} P^m_{i kappa-1/2}(cosh rho), the Kontorovich-Lebedev and
Mehler-Fock transform pairs, and the self-adjoint extensions of
-d^2/dxi^2 - k^2 e^{2 xi} labelled by an angle theta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import specfun as sf
from .geometry import HalfPlane, ModelPoint, Polar, convert
from .quadrature import gauss_panels


class TruncationError(sf.ConvergenceError):
    """The neglected tail of a truncated transform exceeds the tolerance."""


TAIL_TOL = 1e-6


# --- eigenmodes ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HalfPlaneMode:
    k: float
    kappa: float

    def __post_init__(self):
        if self.k == 0:
            raise ValueError("k must be nonzero")
        if not self.kappa > 0:
            raise ValueError("kappa must be positive")

    @property
    def eigenvalue(self) -> float:
        return self.kappa**2 + 0.25


@dataclass(frozen=True)
class PolarMode:
    m: int
    kappa: float

    def __post_init__(self):
        if not self.kappa > 0:
            raise ValueError("kappa must be positive")

    @property
    def eigenvalue(self) -> float:
        return self.kappa**2 + 0.25


def chi_normalization(kappa: float) -> float:
    """N_kappa = sqrt(2 kappa sinh(pi kappa)) / pi, the delta-normalisation of chi."""
    return math.sqrt(2 * kappa * math.sinh(math.pi * kappa)) / math.pi


def chi_mode_array(mode: HalfPlaneMode, x, y) -> np.ndarray:
    """Vectorised chi_{k,kappa}(x, y) = N e^{ikx} sqrt(y) K_{i kappa}(|k| y)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xb, yb = np.broadcast_arrays(x, y)
    K, _ = sf.bessel_K_imag_array(mode.kappa, abs(mode.k) * yb.ravel())
    K = K.reshape(yb.shape)
    return chi_normalization(mode.kappa) * np.exp(1j * mode.k * xb) * np.sqrt(yb) * K


def chi_mode(mode: HalfPlaneMode, p: ModelPoint) -> complex:
    """Delta-normalised half-plane eigenfunction of -Laplacian with eigenvalue kappa^2 + 1/4."""
    h = convert(p, "halfplane")
    assert isinstance(h, HalfPlane)
    return complex(chi_mode_array(mode, h.x, h.y))


def polar_mode_array(mode: PolarMode, rho, phi) -> np.ndarray:
    """Vectorised e^{im phi} P^m_{i kappa - 1/2}(cosh rho)."""
    rho = np.asarray(rho, dtype=float)
    phi = np.asarray(phi, dtype=float)
    rb, pb = np.broadcast_arrays(rho, phi)
    P, _ = sf.conical_P_array(mode.kappa, mode.m, np.cosh(rb.ravel()))
    return np.exp(1j * mode.m * pb) * P.reshape(rb.shape)


def polar_mode(mode: PolarMode, p: ModelPoint) -> complex:
    """Unnormalised polar eigenfunction; its squared norm is :func:`polar_mode_norm`."""
    q = convert(p, "polar")
    assert isinstance(q, Polar)
    return complex(polar_mode_array(mode, q.rho, q.phi))


def polar_mode_norm(m: int, kappa: float) -> float:
    """Coefficient of delta(kappa - kappa') delta_{mm'} in the inner product of two polar modes.

    2 pi^2 / (kappa sinh(pi kappa) Gamma(1/2 - m + i kappa) Gamma(1/2 - m - i kappa)).
    """
    gg = sf.gamma_pair_abs2(0.5 - m, kappa)
    return 2 * math.pi**2 / (kappa * math.sinh(math.pi * kappa) * gg)


# --- index transforms ---------------------------------------------------------------------

def _check_tail(tail: float, scale: float, what: str):
    if tail > TAIL_TOL * max(scale, 1.0):
        raise TruncationError(f"{what}: truncated tail {tail:.2e} exceeds tolerance")


def kontorovich_lebedev(
    f: Callable,
    direction: str = "forward",
    *,
    x_min: float = 1e-9,
    x_max: float = 60.0,
    nu_max: float = 30.0,
    order: int = 16,
) -> Callable:
    """Kontorovich-Lebedev transform pair on (0, infinity).

    forward:  F(nu) = int_0^inf K_{i nu}(x) f(x) dx
    inverse:  f(x)  = (2 / (pi^2 x)) int_0^inf nu sinh(nu pi) K_{i nu}(x) F(nu) dnu

    Returns a vectorised callable.  The forward integral is taken in log x
    over [x_min, x_max], the inverse over nu in [0, nu_max]; both raise
    :class:`TruncationError` when the integrand at the cut is not negligible.
    """
    if direction == "forward":
        edges = np.arange(math.log(x_min), math.log(x_max) + 0.25, 0.25)
        u, wu = gauss_panels(edges, order)
        xs = np.exp(u)
        w = wu * xs
        fx = np.asarray(f(xs), dtype=float)
        _check_tail(abs(fx[-1]) * xs[-1] + abs(fx[0]) * xs[0], float(np.max(np.abs(fx))), "KL forward")

        def forward(nu):
            nu = np.atleast_1d(np.asarray(nu, dtype=float))
            K, _ = sf.bessel_K_imag_pairs_auto(nu.ravel()[:, None], xs[None, :])
            return (K @ (fx * w)).reshape(nu.shape)

        return forward
    if direction == "inverse":
        edges = np.linspace(0.0, nu_max, int(math.ceil(nu_max)) + 1)
        nus, wn = gauss_panels(edges, order)
        Fn = np.asarray(f(nus), dtype=float)
        weight = 2.0 * nus * np.sinh(np.pi * nus) / math.pi**2
        _check_tail(abs(Fn[-1] * weight[-1]) * math.exp(-math.pi * nus[-1] / 2), float(np.max(np.abs(Fn * weight))), "KL inverse")

        def inverse(x):
            x = np.atleast_1d(np.asarray(x, dtype=float))
            K, _ = sf.bessel_K_imag_pairs_auto(nus[None, :], x.ravel()[:, None])
            return ((K @ (weight * Fn * wn)) / x.ravel()).reshape(x.shape)

        return inverse
    raise ValueError("direction must be 'forward' or 'inverse'")


def mehler_fock(
    f: Callable,
    direction: str = "forward",
    *,
    rho_max: float = 40.0,
    lam_max: float = 40.0,
    order: int = 16,
) -> Callable:
    """Mehler-Fock transform pair on [1, infinity).

    forward:  F(lam) = lam tanh(pi lam) int_1^inf P_{i lam - 1/2}(x) f(x) dx
    inverse:  f(x)   = int_0^inf P_{i lam - 1/2}(x) F(lam) dlam

    The forward integral is taken in rho = arccosh x over [0, rho_max].
    """
    if direction == "forward":
        edges = np.arange(0.0, rho_max + 0.25, 0.25)
        r, wr = gauss_panels(edges, order)
        xs = np.cosh(r)
        w = wr * np.sinh(r)
        fx = np.asarray(f(xs), dtype=float)
        _check_tail(abs(fx[-1]) * xs[-1] ** 0.5, float(np.max(np.abs(fx))), "MF forward")

        def forward(lam):
            lam = np.atleast_1d(np.asarray(lam, dtype=float))
            out = np.empty(lam.shape)
            for i, la in np.ndenumerate(lam):
                P, _ = sf.conical_P_array(la, 0, xs)
                out[i] = la * math.tanh(math.pi * la) * np.dot(P * fx, w)
            return out

        return forward
    if direction == "inverse":
        edges = np.linspace(0.0, lam_max, int(math.ceil(lam_max / 0.5)) + 1)
        lams, wl = gauss_panels(edges, order)
        Fl = np.asarray(f(lams), dtype=float)
        _check_tail(abs(Fl[-1]), float(np.max(np.abs(Fl))), "MF inverse")

        def inverse(x):
            x = np.atleast_1d(np.asarray(x, dtype=float))
            out = np.zeros(x.shape)
            for j, la in enumerate(lams):
                P, _ = sf.conical_P_array(la, 0, x.ravel())
                out += wl[j] * Fl[j] * P.reshape(x.shape)
            return out

        return inverse
    raise ValueError("direction must be 'forward' or 'inverse'")


# --- Liouville operator ---------------------------------------------------------------------

@dataclass(frozen=True)
class LiouvilleExtension:
    """Self-adjoint extension of -d^2/dxi^2 - k^2 e^{2 xi} fixed by the angle theta (mod pi)."""

    theta: float
    k: float = 1.0

    def __post_init__(self):
        if self.k == 0:
            raise ValueError("k must be nonzero")

    @property
    def theta_reduced(self) -> float:
        return self.theta % math.pi

    def bound_order(self, n: int) -> float:
        return 2.0 * (n + self.theta_reduced / math.pi)

    def bound_orders(self, count: int) -> list[float]:
        """First ``count`` positive orders nu_n = 2(n + theta/pi); bound energies are -nu_n^2."""
        out = []
        n = 0
        while len(out) < count:
            v = self.bound_order(n)
            if v > 0:
                out.append(v)
            n += 1
        return out

    def shift(self) -> float:
        """Translation log|k| taking the coupling to one."""
        return math.log(abs(self.k))


def liouville_norm(theta: float, kappa: float) -> float:
    """N_kappa with N^-2 = (tanh(pi kappa/2) cos^2 theta + coth(pi kappa/2) sin^2 theta) / kappa."""
    a = math.pi * kappa / 2
    inv2 = (math.tanh(a) * math.cos(theta) ** 2 + math.sin(theta) ** 2 / math.tanh(a)) / kappa
    return 1.0 / math.sqrt(inv2)


def liouville_scattering_array(ext: LiouvilleExtension, kappa: float, xi) -> np.ndarray:
    """Vectorised delta-normalised scattering state N (F cos theta + G sin theta)(|k| e^xi)."""
    xi = np.asarray(xi, dtype=float)
    x = np.exp(xi + ext.shift())
    d = sf.fgz_arrays(1j * kappa, x.ravel())
    th = ext.theta
    v = (d["F"] * math.cos(th) + d["G"] * math.sin(th)).real
    return liouville_norm(th, kappa) * v.reshape(x.shape)


def liouville_scattering(ext: LiouvilleExtension, kappa: float, xi: float) -> float:
    """Scattering eigenfunction with energy kappa^2, delta-normalised on the line."""
    return float(liouville_scattering_array(ext, kappa, xi))


def liouville_bound_array(ext: LiouvilleExtension, n: int, xi) -> np.ndarray:
    """Vectorised unit-norm bound state sqrt(2 nu_n) J_{nu_n}(|k| e^xi)."""
    nu = ext.bound_order(n)
    if not nu > 0:
        raise ValueError(f"bound order nu_{n} = {nu} is not positive")
    xi = np.asarray(xi, dtype=float)
    x = np.exp(xi + ext.shift())
    J = sf.bessel_J_array(nu, x.ravel())[0].real
    return math.sqrt(2 * nu) * J.reshape(x.shape)


def liouville_bound(ext: LiouvilleExtension, n: int, xi: float) -> float:
    """Normalised bound state with energy -nu_n^2."""
    return float(liouville_bound_array(ext, n, xi))


# --- Poschl-Teller ------------------------------------------------------------------------------

def poschl_teller_function(k: int, nu: float) -> float:
    """Gamma(nu+1) Gamma(nu) / (Gamma(nu+lam+1) Gamma(nu-lam)) with lam = k - 1/2.

    Written with reciprocal Gamma functions so that its zeros are exact.
    """
    lam = k - 0.5
    return float(
        (sf.gamma_complex(nu + 1).value * sf.gamma_complex(nu).value * sf.rgamma(nu + lam + 1) * sf.rgamma(nu - lam)).real
    )


def poschl_teller_spectrum(k: int) -> list[float]:
    """Positive zeros nu of :func:`poschl_teller_function`, ascending.

    The zeros come from the poles of Gamma(nu - lam) at nu = lam - j,
    j = 0, 1, ...; bound energies are -nu^2.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    lam = k - 0.5
    return sorted(lam - j for j in range(k))


def poschl_teller_parity_filter(k: int, spectrum: list[float] | None = None) -> list[float]:
    """Bound orders whose eigenfunction parity matches (-1)^k.

    The j-th bound state (nu = k - 1/2 - j) has parity (-1)^j, and Radon
    images of Fourier index k have parity (-1)^k in xi.
    """
    spec = poschl_teller_spectrum(k) if spectrum is None else spectrum
    lam = k - 0.5
    return [v for v in spec if int(round(lam - v)) % 2 == k % 2]
