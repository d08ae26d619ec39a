"""
H^1 Lie-algebra structure on the Fourier basis of zero-mean stream functions

The basis functions are e_k = exp(i(k, x)) for nonzero lattice vectors k.
With A(k) = |k|^2 (1 + beta |k|^2):

    <e_k, e_l>    = S A(k)            if l = -k, else 0
    [e_k, e_l]    = (k x l) e_{k+l}
    B(e_k, e_l)   = (k x l) A(k) / A(k+l) e_{k+l}
    nabla_k e_l   = (k x l)/2 (1 - (A(k) - A(l)) / A(k+l)) e_{k+l}

Anything that would land on the zero mode is 0, since that mode is not part
of the algebra.
"""

import logging
from fractions import Fraction
from typing import Tuple

from .core import Beta, TorusGeometry, WaveVector, ZeroModeError

logger = logging.getLogger(__name__)

CONNECTION_DIVISOR = 2


def _require_nonzero(*modes: WaveVector) -> None:
    for mode in modes:
        if mode.is_zero:
            raise ZeroModeError("The zero wave vector does not index a basis element")


def cross(k: WaveVector, l: WaveVector) -> int:
    """Oriented area k1*l2 - k2*l1"""
    return k.cross(l)


def a_of_norm(norm2: Fraction, beta: Fraction) -> Fraction:
    """The H^1 multiplier written in terms of |k|^2"""
    return norm2 * (1 + beta * norm2)


def a_alpha(k: WaveVector, beta: Beta) -> Fraction:
    """A(k) = |k|^2 (1 + beta |k|^2); zero for the zero vector"""
    return a_of_norm(Fraction(k.norm2()), beta.value)


def inner_basis(k: WaveVector, l: WaveVector, beta: Beta, geom: TorusGeometry) -> Fraction:
    """<e_k, e_l> = S A(k) delta_{k,-l}"""
    _require_nonzero(k, l)
    if k + l != WaveVector(0, 0):
        return Fraction(0)
    return geom.area * a_alpha(k, beta)


def commutator_coeff(k: WaveVector, l: WaveVector) -> Tuple[Fraction, WaveVector]:
    """[e_k, e_l] = (k x l) e_{k+l}; returns (coefficient, target mode)"""
    _require_nonzero(k, l)
    return Fraction(cross(k, l)), k + l


def b_coeff(k: WaveVector, l: WaveVector, beta: Beta) -> Fraction:
    """Coefficient of B(e_k, e_l) along e_{k+l}"""
    _require_nonzero(k, l)
    target = k + l
    if target.is_zero:
        return Fraction(0)
    return cross(k, l) * a_alpha(k, beta) / a_alpha(target, beta)


def conn_coeff(
    k: WaveVector, l: WaveVector, beta: Beta, divisor: int = CONNECTION_DIVISOR
) -> Fraction:
    """Coefficient d_{k,k+l} of nabla_{e_k} e_l along e_{k+l}

    ``divisor`` exists only so the verification suite can build a
    deliberately wrong connection; leave it at 2.
    """
    _require_nonzero(k, l)
    target = k + l
    if target.is_zero:
        return Fraction(0)
    a_k = a_alpha(k, beta)
    a_l = a_alpha(l, beta)
    a_target = a_alpha(target, beta)
    return Fraction(cross(k, l), divisor) * (1 - (a_k - a_l) / a_target)


def jacobi_sum(k: WaveVector, l: WaveVector, m: WaveVector) -> Fraction:
    """Coefficient of e_{k+l+m} in [[e_k,e_l],e_m] + [[e_l,e_m],e_k] + [[e_m,e_k],e_l]"""
    _require_nonzero(k, l, m)
    total = Fraction(0)
    for a, b, c in ((k, l, m), (l, m, k), (m, k, l)):
        outer, inner_target = commutator_coeff(a, b)
        if inner_target.is_zero:
            continue
        coefficient, _ = commutator_coeff(inner_target, c)
        total += outer * coefficient
    return total


def b_adjoint_defect(k: WaveVector, l: WaveVector, m: WaveVector, beta: Beta, geom: TorusGeometry) -> Fraction:
    """<B(e_k,e_l), e_m> - <e_k, [e_l,e_m]>; zero for a correct B"""
    _require_nonzero(k, l, m)
    lhs = Fraction(0)
    if not (k + l).is_zero:
        lhs = b_coeff(k, l, beta) * inner_basis(k + l, m, beta, geom)
    rhs = Fraction(0)
    coefficient, target = commutator_coeff(l, m)
    if not target.is_zero:
        rhs = coefficient * inner_basis(k, target, beta, geom)
    return lhs - rhs


def torsion_defect(k: WaveVector, l: WaveVector, beta: Beta, divisor: int = CONNECTION_DIVISOR) -> Fraction:
    """d_{k,k+l} - d_{l,k+l} - (k x l); zero for a torsion-free connection"""
    return conn_coeff(k, l, beta, divisor) - conn_coeff(l, k, beta, divisor) - cross(k, l)


def metric_defect(k: WaveVector, l: WaveVector, beta: Beta, divisor: int = CONNECTION_DIVISOR) -> Fraction:
    """<nabla_k e_l, e_m> + <e_l, nabla_k e_m> with m = -(k+l), in units of S

    Zero for a metric connection. Both terms scale with 1/divisor, so this
    identity holds for any divisor.
    """
    _require_nonzero(k, l)
    m = -(k + l)
    if m.is_zero:
        return Fraction(0)
    first = conn_coeff(k, l, beta, divisor) * a_alpha(k + l, beta)
    second = conn_coeff(k, m, beta, divisor) * a_alpha(l, beta)
    return first + second
