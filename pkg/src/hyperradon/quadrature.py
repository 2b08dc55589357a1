"""Deterministic composite quadrature shared by the transform and inner-product code.

All rules use a fixed panel decomposition and ordered summation so that
results do not depend on evaluation order or thread count.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable

import numpy as np


@lru_cache(maxsize=32)
def _gl(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_panels(edges, order: int = 16) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of composite Gauss-Legendre on consecutive panels.

    Parameters
    ----------
    edges : array_like
        Increasing panel endpoints.
    order : int
        Nodes per panel.
    """
    e = np.asarray(edges, dtype=float)
    x0, w0 = _gl(order)
    mid = 0.5 * (e[1:] + e[:-1])
    half = 0.5 * (e[1:] - e[:-1])
    nodes = (mid[:, None] + half[:, None] * x0[None, :]).ravel()
    weights = (half[:, None] * w0[None, :]).ravel()
    return nodes, weights


def panel_sums(values: np.ndarray, weights: np.ndarray, order: int) -> np.ndarray:
    """Per-panel partial integrals, for building ordered cumulative sums."""
    return (values * weights).reshape(-1, order).sum(axis=1)


def integrate_panels(f: Callable, a: float, b: float, width: float, order: int = 16) -> tuple[complex, float]:
    """Composite Gauss-Legendre of a vectorised ``f`` over [a, b].

    The error estimate is the difference to the same rule on panels twice
    as wide.
    """
    if b <= a:
        return 0.0, 0.0
    n = max(2, int(math.ceil((b - a) / width)))
    n += n % 2
    edges = np.linspace(a, b, n + 1)
    x, w = gauss_panels(edges, order)
    fx = f(x)
    fine = np.sum(panel_sums(fx, w, order))
    xc, wc = gauss_panels(edges[::2], order)
    coarse = np.sum(f(xc) * wc)
    return fine, float(abs(fine - coarse))


def richardson_inverse_powers(X: np.ndarray, S: np.ndarray) -> tuple[complex, float]:
    """Extrapolate partial sums S(X) = S_inf + sum_j c_j / X^j to X -> infinity.

    Uses as many inverse powers as there are points minus one; the error
    estimate is the change from dropping the smallest X.
    """
    X = np.asarray(X, dtype=float)
    S = np.asarray(S)

    def fit(Xs, Ss):
        A = np.vander(1.0 / Xs, len(Xs), increasing=True)
        return np.linalg.solve(A, Ss)[0]

    full = fit(X, S)
    reduced = fit(X[1:], S[1:])
    return full, float(abs(full - reduced))


def line_inner_product(
    f: Callable,
    g: Callable,
    xi_min: float = -40.0,
    x_far: float = 1000.0,
    levels: int = 4,
    order: int = 16,
    x_panel: float = math.pi / 4,
    xi_panel: float = 0.25,
) -> tuple[complex, float]:
    """Integral of f(xi) g(xi) over [xi_min, infinity) for Bessel-type tails.

    On xi <= 0 the integrand is integrated in xi.  Beyond, the substitution
    x = e^xi gives an integrand f g / x whose oscillating part has period pi
    in x (a product of two unit-frequency factors); partial integrals are formed up to
    x_far * 2^j (snapped to a common phase of the oscillation, so the
    oscillatory part of the remainder has the same sign pattern at each
    cut) and extrapolated in inverse powers of the cut.

    Parameters
    ----------
    f, g : callable
        Vectorised functions of xi.
    """
    near, e_near = integrate_panels(lambda t: f(t) * g(t), xi_min, 0.0, xi_panel, order)
    cuts = [1.0 + x_far + math.pi * round((2**j - 1) * x_far / math.pi) for j in range(levels)]
    # panel grid aligned so that every cut is a panel edge
    edges = [1.0]
    for lo, hi in zip([1.0] + cuts[:-1], cuts):
        n = max(1, int(math.ceil((hi - lo) / x_panel)))
        edges.extend(np.linspace(lo, hi, n + 1)[1:].tolist())
    edges = np.asarray(edges)
    x, w = gauss_panels(edges, order)
    lx = np.log(x)
    vals = f(lx) * g(lx) / x
    ps = np.cumsum(panel_sums(vals, w, order))
    idx = [int(np.argmin(np.abs(edges[1:] - c))) for c in cuts]
    partial = np.array([ps[i] for i in idx])
    far, e_far = richardson_inverse_powers(np.array(cuts), partial)
    return near + far, e_near + e_far
