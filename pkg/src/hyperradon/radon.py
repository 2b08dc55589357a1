"""Geodesic Radon transform on the half-plane and the disc.

[R f](gamma) is the arc-length integral of f along gamma.  Besides the
quadrature engine this module holds the closed forms for the transforms of
the Laplacian eigenmodes, the singular values that relate delta-normalised
modes on both sides, the finite-difference check that R maps eigenmodes to
eigenfunctions of the de Sitter wave operator, the antipodal/parity test,
and the fit of the self-adjoint-extension angle from large-eta data.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import optimize

from . import specfun as sf
from .geometry import (
    DiscGeodesic,
    Geodesic,
    HalfPlaneGeodesic,
    disc_geodesic_polar,
    disc_geodesic_XY,
    halfplane_geodesic_xy,
)
from .quadrature import gauss_panels, panel_sums
from .spectral import HalfPlaneMode, PolarMode, chi_mode_array, chi_normalization, polar_mode_array

SIGMA_CUTOFF = 12.0
TAIL_RTOL = 1e-6
QUAD_RTOL = 1e-11


class NonConvergenceError(sf.ConvergenceError):
    """The integrand does not decay fast enough along the geodesic."""


@dataclass(frozen=True)
class ChartFunction:
    """A vectorised function on one chart: ``func(a, b)`` with (a, b) = (x, y), (X, Y) or (rho, phi)."""

    func: Callable
    chart: str

    def __post_init__(self):
        if self.chart not in ("halfplane", "disc", "polar"):
            raise ValueError(f"unsupported chart {self.chart!r}")


@dataclass(frozen=True)
class RadonSample:
    geodesic: Geodesic
    value: complex
    quadrature_error: float


def _along(f, g: Geodesic) -> Callable:
    """Vectorised sigma -> f(point(sigma)) in the chart ``f`` expects."""
    if not isinstance(f, ChartFunction):
        f = ChartFunction(f, "halfplane" if isinstance(g, HalfPlaneGeodesic) else "disc")
    if isinstance(g, HalfPlaneGeodesic):
        if f.chart != "halfplane":
            raise ValueError("half-plane geodesics need a half-plane function")
        return lambda s: f.func(*halfplane_geodesic_xy(g, s))
    if f.chart == "disc":
        return lambda s: f.func(*disc_geodesic_XY(g, s))
    if f.chart == "polar":
        # continuous phase along the curve so that e^{ik phi} stays smooth
        return lambda s: f.func(*disc_geodesic_polar(g, s))
    raise ValueError("disc geodesics need a disc or polar function")


def _fit_tail(h: Callable, S: float, nu: float, side: int) -> tuple[complex, float]:
    """Integral of h over sigma in side*(S, inf) from a fit to e^{(-1/2 +- i nu) s} and e^{(-5/2 +- i nu) s}."""
    s = np.linspace(S - 4.0, S, 25)
    vals = np.asarray(h(side * s), dtype=complex)
    rates = np.array([-0.5 + 1j * nu, -0.5 - 1j * nu, -2.5 + 1j * nu, -2.5 - 1j * nu])
    A = np.exp(np.outer(s - S, rates))
    coef, *_ = np.linalg.lstsq(A, vals, rcond=None)
    resid = float(np.max(np.abs(A @ coef - vals)))
    # int_S^inf e^{r (s - S)} ds = -1/r
    tail = complex(np.sum(coef * (-1.0 / rates)))
    # the unmodelled remainder decays at least like e^{-|s|/2}, so its integral is below 2 resid
    return tail, 2.0 * resid


def radon(
    f,
    g: Geodesic,
    sigma_cutoff: float | None = None,
    tail_nu: float | None = None,
    panel: float = 0.25,
    order: int = 16,
    rtol: float | None = None,
) -> RadonSample:
    """Arc-length integral of ``f`` along ``g``.

    Parameters
    ----------
    f : callable or ChartFunction
        Vectorised function.  A bare callable takes the geodesic's own chart
        coordinates, (x, y) or (X, Y).
    g : HalfPlaneGeodesic or DiscGeodesic
    sigma_cutoff : float
        Composite Gauss-Legendre is used on [-cutoff, cutoff].  Panels are
        halved until the estimated error falls below ``rtol``.
    tail_nu : float, optional
        For integrands that decay like e^{-|sigma|/2} e^{+-i nu sigma}
        (Laplacian eigenmodes with spectral parameter nu), the two tails are
        fitted to that form and integrated in closed form.  Without it the
        tail is bounded by the endpoint values, and NonConvergenceError is
        raised when that bound exceeds 1e-6 of the result.
    """
    sigma_cutoff = SIGMA_CUTOFF if sigma_cutoff is None else sigma_cutoff
    rtol = QUAD_RTOL if rtol is None else rtol
    h = _along(f, g)
    S = float(sigma_cutoff)
    width = panel
    value = err = None
    for _ in range(8):
        n = int(math.ceil(2 * S / width))
        n += n % 2
        edges = np.linspace(-S, S, n + 1)
        x, w = gauss_panels(edges, order)
        fx = np.asarray(h(x), dtype=complex)
        fine = complex(np.sum(panel_sums(fx, w, order)))
        xc, wc = gauss_panels(edges[::2], order)
        coarse = complex(np.sum(np.asarray(h(xc), dtype=complex) * wc))
        value, err = fine, abs(fine - coarse)
        scale = float(np.sum(np.abs(fx) * w))
        if err <= rtol * max(abs(value), scale * 1e-3, 1e-300):
            break
        width /= 2
    else:
        raise NonConvergenceError(f"panel refinement stalled: error {err:.3e} on value {abs(value):.3e}")
    if tail_nu is not None:
        tp, ep = _fit_tail(h, S, tail_nu, +1)
        tm, em = _fit_tail(h, S, tail_nu, -1)
        if ep + em > TAIL_RTOL * max(abs(value), 1e-3 * scale):
            raise NonConvergenceError(
                f"tail fit beyond sigma = +-{S} is unreliable: residual {ep + em:.3e}, value {abs(value):.3e}"
            )
        value += tp + tm
        err += ep + em
    else:
        ends = np.asarray(h(np.array([-S, S])), dtype=complex)
        # an e^{-|sigma|/2} decay would leave 2 |f(S)| beyond each end
        tail = 2.0 * float(np.abs(ends).sum())
        if tail > TAIL_RTOL * abs(value):
            raise NonConvergenceError(
                f"integrand not negligible at sigma = +-{S}: tail bound {tail:.3e}, value {abs(value):.3e}"
            )
        err += tail
    return RadonSample(g, value, float(err))


# --- mode transforms ------------------------------------------------------------------------------

def chi_function(mode: HalfPlaneMode) -> ChartFunction:
    return ChartFunction(lambda x, y: chi_mode_array(mode, x, y), "halfplane")


def polar_function(mode: PolarMode) -> ChartFunction:
    return ChartFunction(lambda r, p: polar_mode_array(mode, r, p), "polar")


def _halfplane_panel(mode: HalfPlaneMode, eta: float) -> float:
    # phase of e^{ikx} advances at k eta per unit sigma at the top of the arc
    return min(0.25, 6.0 / max(abs(mode.k) * eta, 1e-9))


def radon_halfplane_mode(mode: HalfPlaneMode, t: float, eta: float, **kw) -> RadonSample:
    """R[chi_{k,kappa}] on the semicircle of centre t and radius eta."""
    g = HalfPlaneGeodesic(t, math.log(eta))
    kw.setdefault("panel", _halfplane_panel(mode, eta))
    return radon(chi_function(mode), g, tail_nu=mode.kappa, **kw)


def radon_disc_mode(mode: PolarMode, theta: float, xi: float, orientation: int = 1, **kw) -> RadonSample:
    """R[e^{im phi} P^m_{i kappa - 1/2}(cosh rho)] on the disc geodesic (theta, xi)."""
    g = DiscGeodesic(theta, xi, orientation)
    return radon(polar_function(mode), g, tail_nu=mode.kappa, **kw)


def gamma_quarter_pair(nu: float) -> float:
    """Gamma(1/4 + i nu/2) Gamma(1/4 - i nu/2)."""
    return sf.gamma_pair_abs2(0.25, nu / 2.0)


def halfplane_amplitude_integral(k: float, nu: float) -> float:
    """int_0^inf sqrt(y) K_{i nu}(|k| y) dy / y = 2^{-3/2} |k|^{-1/2} Gamma(1/4 + i nu/2) Gamma(1/4 - i nu/2)."""
    return 2.0**-1.5 * abs(k) ** -0.5 * gamma_quarter_pair(nu)


def radon_halfplane_asymptotic(k: float, nu: float, eta: float, t: float = 0.0) -> complex:
    """Large-k eta form N_nu 2^{-1/2} e^{ikt} |k|^{-1/2} cos(k eta) Gamma(1/4+i nu/2) Gamma(1/4-i nu/2).

    Obtained by replacing the semicircle by the two vertical lines x = t +- eta.
    """
    if abs(k) * eta < 10:
        warnings.warn(f"k eta = {abs(k) * eta:.3g} is not in the asymptotic regime", RuntimeWarning)
    return (
        chi_normalization(nu) * 2**-0.5 * complex(math.cos(k * t), math.sin(k * t))
        * abs(k) ** -0.5 * math.cos(k * eta) * gamma_quarter_pair(nu)
    )


def radon_halfplane_closed_form(k: float, nu: float, eta, t: float = 0.0):
    """Exact transform of the half-plane mode, valid for every eta > 0.

    Both sides solve the same radial equation in eta, and the only solution
    that stays bounded as eta -> 0 while matching the large-eta cosine is the
    Liouville scattering combination at extension angle 3 pi/4::

        -sqrt(pi)/2 N_nu Gamma Gamma e^{ikt} sqrt(eta) (F cos + G sin)(3 pi/4; |k| eta)
    """
    eta = np.asarray(eta, dtype=float)
    if np.any(eta <= 0):
        raise ValueError("eta must be positive")
    th = 0.75 * math.pi
    d = sf.fgz_arrays(1j * nu, (abs(k) * eta).ravel())
    w = (d["F"] * math.cos(th) + d["G"] * math.sin(th)).real.reshape(eta.shape)
    pref = -0.5 * math.sqrt(math.pi) * chi_normalization(nu) * gamma_quarter_pair(nu)
    out = pref * complex(math.cos(k * t), math.sin(k * t)) * np.sqrt(eta) * w
    return out if out.ndim else complex(out)


def disc_mode_sign(k: int, convention: str) -> int:
    """Overall sign of the disc closed form relative to e^{ik theta} Gamma Gamma E/O / sqrt(pi).

    The diameter (theta, 0) runs through the polar angles theta +- pi/2, so the
    transform of an even mode carries e^{ik pi/2} = (-1)^{k/2}; the odd modes
    carry (-1)^{(k-1)/2}.  ``"printed"`` omits this factor.
    """
    if convention == "printed":
        return 1
    if convention != "corrected":
        raise ValueError("convention must be 'printed' or 'corrected'")
    return -1 if (abs(k) // 2) % 2 else 1


def radon_disc_closed_form(k: int, nu: float, xi, theta: float = 0.0, convention: str = "corrected"):
    """Closed form of R[e^{ik phi} P^k_{i nu - 1/2}(cosh rho)](theta, xi).

    e^{ik theta} / sqrt(pi) Gamma(1/4 + i nu/2) Gamma(1/4 - i nu/2) times
    E^k_nu(xi) for even k or O^k_nu(xi) for odd k, with the sign described in
    :func:`disc_mode_sign`.  Vectorised over ``xi``.
    """
    if int(k) != k:
        raise ValueError("k must be an integer")
    k = int(k)
    ka = abs(k)
    d = sf.modified_conical_EO_array(ka, nu, xi)
    part = d["E"] if ka % 2 == 0 else d["O"]
    val = disc_mode_sign(ka, convention) * np.exp(1j * k * theta) * gamma_quarter_pair(nu) / math.sqrt(math.pi) * part
    if k < 0:
        # P^{-|k|} = Gamma(nu' - |k| + 1)/Gamma(nu' + |k| + 1) P^{|k|} on the mode side
        alpha = complex(-0.5, nu)
        val = val * sf._pochhammer_ratio(alpha, k).real / sf._pochhammer_ratio(alpha, ka).real
    return val if np.ndim(xi) else complex(val[0])


def diameter_value(k: int, nu: float) -> float:
    """(1/sqrt(pi)) P^k_{i nu - 1/2}(0) Gamma(1/4 + i nu/2) Gamma(1/4 - i nu/2).

    Transform on a diameter without the (-1)^{k/2} phase from the diameter
    passing through theta +- pi/2.  Meaningful for even k only.
    """
    p0, _ = sf.ferrers_at_zero(k, nu)
    return p0 * gamma_quarter_pair(nu) / math.sqrt(math.pi)


# --- singular values ----------------------------------------------------------------------------------

@dataclass(frozen=True)
class SingularValue:
    nu: float
    lam: float


def _log_cosh(x: float) -> float:
    x = abs(x)
    return x + math.log1p(math.exp(-2 * x)) - math.log(2.0)


def singular_value(nu: float) -> SingularValue:
    """lambda(nu) = Gamma(1/4 + i nu/2) Gamma(1/4 - i nu/2) sqrt(cosh(pi nu)) / sqrt(2 pi)."""
    if not nu > 0:
        raise ValueError("nu must be positive")
    lg = 2.0 * sf.loggamma_complex(complex(0.25, nu / 2)).real
    return SingularValue(nu, math.exp(lg + 0.5 * _log_cosh(math.pi * nu) - 0.5 * math.log(2 * math.pi)))


def singular_value_disc(nu: float) -> float:
    """Disc-side factor Gamma Gamma sqrt(cosh(pi nu)) / sqrt(pi), larger by sqrt 2."""
    return math.sqrt(2.0) * singular_value(nu).lam


def singular_value_continued_sq(nu: float) -> float:
    """lambda^2 continued to i nu -> nu: Gamma(1/4+nu/2)^2 Gamma(1/4-nu/2)^2 cos(pi nu) / (2 pi).

    Written through reciprocal Gamma functions; it vanishes at nu = 3/2, 7/2, ...
    and changes sign there.
    """
    r = (sf.rgamma(0.25 + nu / 2) * sf.rgamma(0.25 - nu / 2)).real
    if r == 0:
        return math.inf
    return math.cos(math.pi * nu) / (2 * math.pi * r * r)


def singular_value_zeros(brackets: Sequence[tuple[float, float]] = ((1.2, 1.8), (3.2, 3.8))) -> list[float]:
    """Zeros of the continued singular value, located by Brent's method."""
    return [optimize.brentq(singular_value_continued_sq, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps) for a, b in brackets]


# --- intertwining -------------------------------------------------------------------------------------

_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_OFF = np.array([-2, -1, 0, 1, 2])


def intertwine_residual(mode, grid: Iterable[tuple[float, float]], h: float = 0.01) -> float:
    """Relative residual of (-box - kappa^2 - 1/4) applied to the transform of ``mode``.

    For a :class:`HalfPlaneMode` the grid holds (t, eta) with
    box = eta^2 (-d_t^2 + d_eta^2); for a :class:`PolarMode` it holds (theta, xi)
    with box = d_xi^2 + tanh(xi) d_xi - sech^2(xi) d_theta^2.  Derivatives use
    fourth-order five-point stencils of step ``h``.  Returns
    max |residual| / max |R| over the grid.
    """
    lam = mode.kappa**2 + 0.25
    if isinstance(mode, HalfPlaneMode):
        R = lambda a, b: radon_halfplane_mode(mode, a, b).value  # noqa: E731
    elif isinstance(mode, PolarMode):
        R = lambda a, b: radon_disc_mode(mode, a, b).value  # noqa: E731
    else:
        raise TypeError("mode must be a HalfPlaneMode or PolarMode")
    res = 0.0
    big = 0.0
    for a, b in grid:
        fa = np.array([R(a + o * h, b) for o in _OFF])
        fb = np.array([R(a, b + o * h) if o else fa[2] for o in _OFF])
        f0 = fa[2]
        daa = _D2 @ fa / h**2
        dbb = _D2 @ fb / h**2
        if isinstance(mode, HalfPlaneMode):
            box = b * b * (-daa + dbb)
        else:
            db = _D1 @ fb / h
            box = dbb + math.tanh(b) * db - daa / math.cosh(b) ** 2
        res = max(res, abs(-box - lam * f0))
        big = max(big, abs(f0))
    return res / big


# --- antipodal structure ----------------------------------------------------------------------------

@dataclass(frozen=True)
class AntipodalReport:
    max_deviation: float
    parity_deviation: float
    scale: float


def antipodal_check(
    k: int,
    nu: float,
    samples: Iterable[tuple[float, float]],
    pairing: str = "antipodal",
) -> AntipodalReport:
    """Compare R[mode](theta, xi) with its value at the paired geodesic.

    ``pairing="antipodal"`` uses (theta + pi, -xi), the same geodesic with the
    opposite orientation; ``"naive"`` uses (theta + pi, xi), a different
    geodesic, as a negative control.  ``parity_deviation`` is the largest
    |R(theta, -xi) - (-1)^k R(theta, xi)|.  Values come from direct
    quadrature.
    """
    mode = PolarMode(int(k), nu)
    dev = par = scale = 0.0
    for theta, xi in samples:
        r0 = radon_disc_mode(mode, theta, xi).value
        if pairing == "antipodal":
            r1 = radon_disc_mode(mode, theta + math.pi, -xi).value
        elif pairing == "naive":
            r1 = radon_disc_mode(mode, theta + math.pi, xi).value
        else:
            raise ValueError("pairing must be 'antipodal' or 'naive'")
        r2 = radon_disc_mode(mode, theta, -xi).value
        dev = max(dev, abs(r1 - r0))
        par = max(par, abs(r2 - (-1) ** int(k) * r0))
        scale = max(scale, abs(r0))
    return AntipodalReport(dev, par, scale)


# --- extension angle --------------------------------------------------------------------------------

class FitConditioningError(ValueError):
    """The fitting window covers too few oscillations."""


def fit_theta(eta: np.ndarray, values: np.ndarray, k: float) -> tuple[float, float]:
    """Fit values = A cos(k eta - theta - pi/4) + O(1/eta) and return (theta mod pi, A).

    The model includes cos(k eta)/eta and sin(k eta)/eta so that the 1/eta phase
    drift of the Bessel asymptotics does not bias theta.
    """
    eta = np.asarray(eta, dtype=float)
    span = abs(k) * (eta.max() - eta.min()) / (2 * math.pi)
    if span < 3:
        raise FitConditioningError(f"window spans {span:.2f} oscillations; need at least 3")
    c, s = np.cos(k * eta), np.sin(k * eta)
    A = np.column_stack([c, s, c / eta, s / eta, c / eta**2, s / eta**2])
    coef, *_ = np.linalg.lstsq(A, np.asarray(values, dtype=float), rcond=None)
    phase = math.atan2(coef[1], coef[0])
    amp = math.hypot(coef[0], coef[1])
    return (phase - math.pi / 4) % math.pi, amp


def extract_theta(k: float, nu: float, eta_window: tuple[float, float], n: int = 48) -> float:
    """Extension angle theta (mod pi) read off the large-eta oscillation of R[chi_{k,nu}](0, eta)."""
    lo, hi = eta_window
    if abs(k) * lo < 20:
        warnings.warn("eta window starts before k eta = 20", RuntimeWarning)
    eta = np.linspace(lo, hi, n)
    mode = HalfPlaneMode(k, nu)
    vals = np.array([radon_halfplane_mode(mode, 0.0, e).value for e in eta])
    if np.max(np.abs(vals.imag)) > 1e-8 * np.max(np.abs(vals)):
        raise sf.ConvergenceError("transform at t = 0 should be real")
    return fit_theta(eta, vals.real, k)[0]


# --- range of the half-plane transform --------------------------------------------------------

@dataclass(frozen=True)
class OverlapReport:
    overlap: float
    packet_norm: float
    error: float

    @property
    def relative(self) -> float:
        return abs(self.overlap) / self.packet_norm


def bound_state_overlap(
    k: float,
    nu_center: float,
    nu_width: float,
    n: int = 0,
    theta: float = 0.75 * math.pi,
    nodes: int = 8,
) -> OverlapReport:
    """Overlap of a smeared half-plane transform with a Liouville bound state.

    The packet is the Gaussian-weighted superposition over nu of
    R[chi_{k,nu}](0, eta) / sqrt(eta), written as a function of xi = log(|k| eta).
    It is paired on the line with the unit-norm bound state of extension angle
    ``theta``.  For theta = 3 pi/4 the overlap vanishes, so the bound state lies
    outside the range of the transform; other angles give an O(1) overlap.
    """
    from .quadrature import line_inner_product
    from .spectral import LiouvilleExtension, liouville_bound_array

    lo = max(1e-3, nu_center - 4 * nu_width)
    nus, ws = gauss_panels([lo, nu_center + 4 * nu_width], nodes)
    ws = ws * np.exp(-0.5 * ((nus - nu_center) / nu_width) ** 2)

    def packet(xi):
        eta = np.exp(xi) / abs(k)
        acc = np.zeros(np.shape(xi))
        for nu, w in zip(nus, ws):
            acc = acc + w * radon_halfplane_closed_form(k, nu, eta).real
        return acc / np.sqrt(eta)

    ext = LiouvilleExtension(theta)
    ov, e1 = line_inner_product(packet, lambda xi: liouville_bound_array(ext, n, xi))
    nn, e2 = line_inner_product(packet, packet)
    return OverlapReport(float(np.real(ov)), math.sqrt(float(np.real(nn))), e1 + e2)
