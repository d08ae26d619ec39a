"""
Curvature tensor and sectional curvatures of the H^1 metric on the torus

Curvature follows the Levi-Civita connection of ``lattice``:

    R(e_k, e_l) e_m = -nabla_k nabla_l e_m + nabla_l nabla_k e_m + nabla_[e_k,e_l] e_m

so that <R(u,v)u, v> divided by the Gram determinant is the usual sectional
curvature. Arnold's L^2 formulas are provided as independent oracles.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .core import (
    Beta,
    CurvatureError,
    DegenerateModeError,
    DegeneratePlaneError,
    FourierStream,
    GaussianRational,
    TorusGeometry,
    WaveVector,
    ZeroModeError,
)
from .lattice import a_alpha, a_of_norm, conn_coeff, cross, inner_basis

logger = logging.getLogger(__name__)


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


class CurvatureRoute(Enum):
    R_SUM = "r_sum"
    CLOSED_FORM = "closed_form"
    ARNOLD_L2 = "arnold_l2"


@dataclass(frozen=True)
class CurvatureResult:
    """Sectional curvature of one plane

    ``raw`` is the numerator <R(xi,eta)xi, eta> (or the closed-form value for
    the closed-form route), ``normalized`` divides it by the Gram determinant.
    """
    raw: Fraction
    normalized: Fraction
    route: CurvatureRoute
    beta: Beta
    k: Optional[WaveVector] = None
    l: Optional[WaveVector] = None

    def __post_init__(self):
        if self.route is CurvatureRoute.ARNOLD_L2 and self.beta.value != 0:
            raise ValueError("The Arnold L2 route only exists at beta = 0")
        if _sign(self.raw) != _sign(self.normalized):
            raise CurvatureError("Raw and normalized curvature disagree in sign")

    @property
    def sign(self) -> int:
        return _sign(self.raw)


def _require_plane(k: WaveVector, l: WaveVector) -> None:
    if k.is_zero or l.is_zero:
        raise ZeroModeError("The zero wave vector does not index a basis element")
    if k == l or k == -l:
        raise DegeneratePlaneError(f"degenerate plane: k={k} and l={l} are equal up to sign")


def r_coeff(k: WaveVector, l: WaveVector, m: WaveVector, beta: Beta, geom: TorusGeometry) -> Fraction:
    """<R(e_k, e_l) e_m, e_n> with n = -(k+l+m)"""
    target = k + l + m
    for mode in (k, l, m, target):
        if mode.is_zero:
            raise ZeroModeError("Curvature coefficients need four nonzero modes")
    total = Fraction(0)
    lm = l + m
    if not lm.is_zero:
        total -= conn_coeff(l, m, beta) * conn_coeff(k, lm, beta)
    km = k + m
    if not km.is_zero:
        total += conn_coeff(k, m, beta) * conn_coeff(l, km, beta)
    kl = k + l
    if not kl.is_zero:
        total += cross(k, l) * conn_coeff(kl, m, beta)
    if total == 0:
        return total
    return total * inner_basis(target, -target, beta, geom)


def _printed_d(source: WaveVector, target: WaveVector, beta: Beta) -> Fraction:
    step = target - source
    if source.is_zero or step.is_zero or target.is_zero:
        return Fraction(0)
    return conn_coeff(source, step, beta)


def r_coeff_paper(
    k: WaveVector,
    l: WaveVector,
    m: WaveVector,
    beta: Beta,
    geom: TorusGeometry,
    strict: bool = False,
) -> Fraction:
    """Literal transcription of the printed curvature coefficient

    Reads d_{a,b} as the connection coefficient of nabla_{e_a} e_{b-a}.
    Kept only to measure how far the printed formula is from ``r_coeff``.
    With ``strict`` a vanishing total mode raises DegenerateModeError
    instead of returning 0.
    """
    for mode in (k, l, m):
        if mode.is_zero:
            raise ZeroModeError("Curvature coefficients need nonzero modes")
    total_mode = k + l + m
    if total_mode.is_zero:
        if strict:
            raise DegenerateModeError(f"k+l+m = 0 for k={k} l={l} m={m}")
        logger.debug("printed coefficient vanishes: A(0) = 0 for k=%s l=%s m=%s", k, l, m)
        return Fraction(0)
    value = (
        -_printed_d(l + m, total_mode, beta) * _printed_d(m, l + m, beta)
        + _printed_d(k + m, total_mode, beta) * _printed_d(m, k + m, beta)
        + cross(k, l) * _printed_d(m, total_mode, beta)
    )
    return value * a_alpha(total_mode, beta) * geom.area


def _cos_cos_gram(k: WaveVector, l: WaveVector, beta: Beta, geom: TorusGeometry) -> Fraction:
    # <cos k, cos k> = S A(k)/2 and <cos k, cos l> = 0 for k != +-l
    return (geom.area * a_alpha(k, beta) / 2) * (geom.area * a_alpha(l, beta) / 2)


def sectional_cos_cos_raw(k: WaveVector, l: WaveVector, beta: Beta, geom: TorusGeometry) -> Fraction:
    """<R(xi,eta)xi,eta> for xi = cos(k,x), eta = cos(l,x), summed from r_coeff"""
    _require_plane(k, l)
    return (r_coeff(k, l, -k, beta, geom) + r_coeff(-k, l, k, beta, geom)) / 8


def bracket_from_norms(
    norm_k: Fraction, norm_l: Fraction, norm_sum: Fraction, norm_diff: Fraction, beta: Fraction
) -> Fraction:
    """The bracket whose sign decides the cos/cos curvature

    A(k+l)A(k-l)(4A(k) + 4A(l) - 3A(k+l) - 3A(k-l)) + (A(k) - A(l))^2 (A(k+l) + A(k-l)),
    taking squared norms so that non-lattice vectors can be fed in too.
    """
    a_k = a_of_norm(norm_k, beta)
    a_l = a_of_norm(norm_l, beta)
    a_p = a_of_norm(norm_sum, beta)
    a_m = a_of_norm(norm_diff, beta)
    return a_p * a_m * (4 * a_k + 4 * a_l - 3 * a_p - 3 * a_m) + (a_k - a_l) ** 2 * (a_p + a_m)


def cos_cos_bracket(k: WaveVector, l: WaveVector, beta: Beta) -> Fraction:
    return bracket_from_norms(
        Fraction(k.norm2()),
        Fraction(l.norm2()),
        Fraction((k + l).norm2()),
        Fraction((k - l).norm2()),
        beta.value,
    )


def rho_squared(k: WaveVector, l: WaveVector, beta: Beta, geom: TorusGeometry) -> Fraction:
    """S (k x l)^2 / (36 A(k+l) A(k-l))"""
    _require_plane(k, l)
    return geom.area * cross(k, l) ** 2 / (36 * a_alpha(k + l, beta) * a_alpha(k - l, beta))


def sectional_cos_cos_closed(k: WaveVector, l: WaveVector, beta: Beta, geom: TorusGeometry) -> Fraction:
    """Closed form rho^2 * bracket for the cos/cos plane"""
    _require_plane(k, l)
    return rho_squared(k, l, beta, geom) * cos_cos_bracket(k, l, beta)


def sectional_cos_cos_normalized(
    k: WaveVector,
    l: WaveVector,
    beta: Beta,
    geom: TorusGeometry,
    route: CurvatureRoute = CurvatureRoute.R_SUM,
) -> CurvatureResult:
    """Sectional curvature of the cos(k,x)/cos(l,x) plane"""
    _require_plane(k, l)
    if route is CurvatureRoute.R_SUM:
        raw = sectional_cos_cos_raw(k, l, beta, geom)
    elif route is CurvatureRoute.CLOSED_FORM:
        raw = sectional_cos_cos_closed(k, l, beta, geom)
    else:
        return arnold_cos_cos_result(k, l, geom)
    normalized = raw / _cos_cos_gram(k, l, beta, geom)
    return CurvatureResult(raw=raw, normalized=normalized, route=route, beta=beta, k=k, l=l)


def stream_inner(xi: FourierStream, eta: FourierStream, beta: Beta, geom: TorusGeometry) -> Fraction:
    """<xi, eta> = S sum_a x_a y_{-a} A(a)"""
    total = GaussianRational()
    for a, x in xi.items():
        y = eta.get(-a)
        if y.is_zero:
            continue
        total += x * y * (geom.area * a_alpha(a, beta))
    if total.im != 0:
        raise CurvatureError("Inner product of real streams came out complex")
    return total.re


def gram_determinant(xi: FourierStream, eta: FourierStream, beta: Beta, geom: TorusGeometry) -> Fraction:
    cross_term = stream_inner(xi, eta, beta, geom)
    return stream_inner(xi, xi, beta, geom) * stream_inner(eta, eta, beta, geom) - cross_term**2


def curvature_numerator(xi: FourierStream, eta: FourierStream, beta: Beta, geom: TorusGeometry) -> Fraction:
    """<R(xi,eta)xi, eta> expanded over all zero-sum index quadruples"""
    total = GaussianRational()
    for a, xa in xi.items():
        for b, yb in eta.items():
            for c, xc in xi.items():
                d = -(a + b + c)
                yd = eta.get(d)
                if yd.is_zero:
                    continue
                r = r_coeff(a, b, c, beta, geom)
                if r == 0:
                    continue
                total += xa * yb * xc * yd * r
    if total.im != 0:
        raise CurvatureError("Curvature numerator of real streams came out complex")
    return total.re


def sectional_general(xi: FourierStream, eta: FourierStream, beta: Beta, geom: TorusGeometry) -> CurvatureResult:
    """Sectional curvature of the plane spanned by two arbitrary real streams"""
    if len(xi) == 0 or len(eta) == 0:
        raise DegeneratePlaneError("degenerate plane: empty stream")
    gram = gram_determinant(xi, eta, beta, geom)
    if gram == 0:
        raise DegeneratePlaneError("degenerate plane: streams are linearly dependent")
    raw = curvature_numerator(xi, eta, beta, geom)
    return CurvatureResult(raw=raw, normalized=raw / gram, route=CurvatureRoute.R_SUM, beta=beta)


def arnold_general(k: WaveVector, eta: FourierStream, geom: TorusGeometry) -> Fraction:
    """L^2 curvature numerator in any plane containing cos(k, x)

    -(S/4) sum_l a_kl^2 |x_l + x_{l+2k}|^2 with a_kl = (k x l)^2 / |k + l|.
    """
    if k.is_zero:
        raise ZeroModeError("The zero wave vector does not index a basis element")
    shift = k.scaled(2)
    candidates = set(eta.support()) | {l - shift for l in eta.support()}
    total = Fraction(0)
    for l in sorted(candidates):
        if (l + k).is_zero:
            continue
        c = cross(k, l)
        if c == 0:
            continue
        weight = Fraction(c**4, (l + k).norm2())
        total += weight * (eta.get(l) + eta.get(l + shift)).abs2()
    return -geom.area * total / 4


def arnold_cos_cos(k: WaveVector, l: WaveVector, geom: TorusGeometry) -> Fraction:
    """-(|k|^2 + |l|^2) sin^2(k,l) sin^2(k+l, k-l) / (4S), with exact sines"""
    _require_plane(k, l)
    c = cross(k, l)
    norm_k, norm_l = k.norm2(), l.norm2()
    s, d = k + l, k - l
    sin2_kl = Fraction(c * c, norm_k * norm_l)
    sin2_sd = Fraction(s.cross(d) ** 2, s.norm2() * d.norm2())
    return -(norm_k + norm_l) * sin2_kl * sin2_sd / (4 * geom.area)


def arnold_cos_cos_result(k: WaveVector, l: WaveVector, geom: TorusGeometry) -> CurvatureResult:
    zero = Beta.zero()
    normalized = arnold_cos_cos(k, l, geom)
    raw = normalized * _cos_cos_gram(k, l, zero, geom)
    return CurvatureResult(raw=raw, normalized=normalized, route=CurvatureRoute.ARNOLD_L2, beta=zero, k=k, l=l)
