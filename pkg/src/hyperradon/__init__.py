"""Numerics for two-dimensional hyperbolic space.

Submodules
----------
geometry
    Charts of the hyperbolic plane, geodesic families and the space of geodesics.
liegroup
    SL(2,R) and SU(1,1) subgroups, decompositions, metrics and Casimir operators.
specfun
    Complex Gamma, Bessel J and K of imaginary order, conical and modified conical functions.
spectral
    Laplace eigenmodes, index transforms, Liouville extensions and Poschl-Teller spectra.
radon
    Geodesic Radon transform, closed forms, intertwining and singular values.
cli
    The ``hyperradon`` command.
"""

from .specfun import ConvergenceError, EvalResult, PoleError

__all__ = ["ConvergenceError", "EvalResult", "PoleError"]
__version__ = "0.1.0"
