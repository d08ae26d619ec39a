"""
curvalpha - exact sectional curvature of the H^1 metric on area-preserving
diffeomorphisms of the flat torus

Exact rational arithmetic throughout: curvature of Fourier planes, the cubic
in alpha^2 that decides their sign, and the threshold alpha0 beyond which the
curvature turns positive.

License: MIT
"""

__version__ = "1.0.0"

from .alpha import Alpha0Result, CubicPoly, EpsExpansion, curvature_poly, eps_expansion, find_alpha0, theorem2_check
from .core import (
    Beta,
    CurvatureError,
    DegenerateDirectionSetError,
    DegenerateModeError,
    DegeneratePlaneError,
    FourierStream,
    TorusGeometry,
    WaveVector,
    ZeroModeError,
)
from .curvature import CurvatureResult, CurvatureRoute, sectional_cos_cos_normalized, sectional_general

__all__ = [
    "Alpha0Result",
    "Beta",
    "CubicPoly",
    "CurvatureError",
    "CurvatureResult",
    "CurvatureRoute",
    "DegenerateDirectionSetError",
    "DegenerateModeError",
    "DegeneratePlaneError",
    "EpsExpansion",
    "FourierStream",
    "TorusGeometry",
    "WaveVector",
    "ZeroModeError",
    "curvature_poly",
    "eps_expansion",
    "find_alpha0",
    "sectional_cos_cos_normalized",
    "sectional_general",
    "theorem2_check",
]
