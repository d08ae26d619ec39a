"""
Positivity threshold of the cos/cos curvature as a function of alpha

The bracket B that decides the sign of the cos/cos sectional curvature is a
cubic in beta = alpha^2. This module extracts that cubic exactly, isolates
the threshold alpha0 beyond which B stays positive, and expands the cubic's
coefficients for nearby wave vectors l = k + t*eps.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .core import (
    Beta,
    DegenerateDirectionSetError,
    DegeneratePlaneError,
    WaveVector,
    ZeroModeError,
    as_fraction,
)
from .curvature import bracket_from_norms, cos_cos_bracket
from .polynomial import (
    SturmChain,
    horner,
    interpolate,
    isolate_largest_root,
    sign,
    sqrt_approx,
    squarefree_part,
    trim,
)

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = Fraction(1, 10**18)
DEFAULT_DIGITS = 12

BETA_NODES = tuple(Fraction(i) for i in range(4))
# B has degree 12 in t once l = k + t*eps is substituted
T_NODES = tuple(Fraction(i) for i in range(13))

# Powers of |k|^2 multiplying |eps|^2 and (k,eps)^2 in the t^2 coefficient of b_n
EPS_NORM_POWERS = (2, 3, 4, 5)
DOT_NORM_POWERS = (1, 2, 3, 4)

# Leading forms as printed in the literature: (|eps|^2 multiplier, (k,eps)^2 multiplier)
CLAIMED_LEADING = (
    (Fraction(-64), Fraction(16)),
    (Fraction(-224), Fraction(128)),
    (Fraction(-640), Fraction(320)),
    (Fraction(0), Fraction(256)),
)

FLAT = "flat direction"
EVENTUALLY_NEGATIVE = "eventually negative"
NEGATIVE_FOR_ALL = "negative for all alpha"


@dataclass(frozen=True)
class CubicPoly:
    """B(beta) = b0 + b1 beta + b2 beta^2 + b3 beta^3"""
    b0: Fraction
    b1: Fraction
    b2: Fraction
    b3: Fraction

    def as_list(self) -> List[Fraction]:
        return [self.b0, self.b1, self.b2, self.b3]

    def evaluate(self, beta: Fraction) -> Fraction:
        return horner(self.as_list(), as_fraction(beta))

    def sign_at(self, beta: Fraction) -> int:
        return sign(self.evaluate(beta))

    @property
    def is_zero(self) -> bool:
        return not trim(self.as_list())

    def leading_sign(self) -> int:
        coeffs = trim(self.as_list())
        return sign(coeffs[-1]) if coeffs else 0


def _require_pair(k: WaveVector, l: WaveVector) -> None:
    if k.is_zero or l.is_zero:
        raise ZeroModeError("The zero wave vector does not index a basis element")
    if k == l or k == -l:
        raise DegeneratePlaneError(f"degenerate plane: k={k} and l={l} are equal up to sign")


def curvature_poly(k: WaveVector, l: WaveVector) -> CubicPoly:
    """Exact cubic in beta, interpolated from four bracket evaluations"""
    _require_pair(k, l)
    values = [cos_cos_bracket(k, l, Beta(node)) for node in BETA_NODES]
    b0, b1, b2, b3 = interpolate(BETA_NODES, values)
    logger.debug("bracket cubic for k=%s l=%s: %s %s %s %s", k, l, b0, b1, b2, b3)
    return CubicPoly(b0, b1, b2, b3)


@dataclass(frozen=True)
class Alpha0Result:
    """Outcome of the threshold search for one (k, l) pair

    When ``exists`` the cubic is positive on (beta_hi, infinity) and the
    largest distinct positive root lies in (beta_lo, beta_hi]. ``alpha0`` is
    sqrt(beta_hi) rounded to ``digits`` significant digits.

    For a simple root B(beta_lo) < 0. If the largest root is a tangent
    (even-multiplicity) root, B touches zero there without changing sign and
    B(beta_lo) > 0; the bracket still locates that root.
    """
    k: WaveVector
    l: WaveVector
    exists: bool
    poly: CubicPoly
    positive_roots: int
    bracket: Optional[Tuple[Fraction, Fraction]] = None
    alpha0: Optional[Fraction] = None
    reason: Optional[str] = None

    @property
    def beta_hi(self) -> Optional[Fraction]:
        return None if self.bracket is None else self.bracket[1]

    def below_cap(self, alpha_cap: Fraction) -> bool:
        """alpha0 < cap, decided exactly on beta_hi"""
        cap = as_fraction(alpha_cap)
        return self.exists and self.beta_hi is not None and self.beta_hi < cap * cap


def find_alpha0(
    k: WaveVector,
    l: WaveVector,
    tolerance: Fraction = DEFAULT_TOLERANCE,
    digits: int = DEFAULT_DIGITS,
) -> Alpha0Result:
    """Least beta* >= 0 with B > 0 on (beta*, infinity), via Sturm counts and bisection"""
    poly = curvature_poly(k, l)
    coeffs = poly.as_list()
    if k.cross(l) == 0 or poly.is_zero:
        return Alpha0Result(k=k, l=l, exists=False, poly=poly, positive_roots=0, reason=FLAT)

    core = squarefree_part(coeffs)
    positive_roots = SturmChain.build(core).count(Fraction(0))

    if poly.leading_sign() < 0:
        never_positive = poly.sign_at(Fraction(0)) < 0 and positive_roots == 0
        reason = NEGATIVE_FOR_ALL if never_positive else EVENTUALLY_NEGATIVE
        logger.info("no threshold for k=%s l=%s: %s", k, l, reason)
        return Alpha0Result(
            k=k, l=l, exists=False, poly=poly, positive_roots=positive_roots, reason=reason
        )

    isolated = isolate_largest_root(core, Fraction(0), tolerance) if positive_roots else None
    if isolated is None:
        bracket = (Fraction(0), Fraction(0))
        alpha0 = Fraction(0)
    else:
        bracket = isolated
        alpha0 = sqrt_approx(bracket[1], digits)
    logger.info("alpha0(k=%s, l=%s) = %s", k, l, float(alpha0))
    return Alpha0Result(
        k=k,
        l=l,
        exists=True,
        poly=poly,
        positive_roots=positive_roots,
        bracket=bracket,
        alpha0=alpha0,
    )


@dataclass(frozen=True)
class CoefficientMatch:
    index: int
    claimed: Tuple[Fraction, Fraction]
    computed: Tuple[Fraction, Fraction]

    @property
    def matches(self) -> bool:
        return self.claimed == self.computed


@dataclass(frozen=True)
class EpsExpansion:
    """t^2 coefficients of b_n(k, k + t*eps)

    ``leading[n]`` is the exact t^2 coefficient for this eps. ``computed_leading[n]``
    is the pair (c1, c2) with leading = c1 |k|^(2p) |eps|^2 + c2 |k|^(2q) (k,eps)^2,
    separated using a second direction. ``lower_order[n]`` holds the t^0 and t^1
    coefficients, which vanish identically.
    """
    k: WaveVector
    eps: WaveVector
    leading: Tuple[Fraction, ...]
    lower_order: Tuple[Tuple[Fraction, Fraction], ...]
    computed_leading: Tuple[Tuple[Fraction, Fraction], ...]
    claimed_leading: Tuple[Tuple[Fraction, Fraction], ...]
    match_report: Tuple[CoefficientMatch, ...]

    @property
    def all_match(self) -> bool:
        return all(m.matches for m in self.match_report)


def _t_series(norm_k: int, eps_norm: int, dot: int) -> List[List[Fraction]]:
    """Coefficients in t (ascending) of each b_n for the squared norms of k, k + t*eps"""
    samples: List[List[Fraction]] = []
    for t in T_NODES:
        norm_l = norm_k + 2 * t * dot + t * t * eps_norm
        norm_sum = 4 * norm_k + 4 * t * dot + t * t * eps_norm
        norm_diff = t * t * eps_norm
        values = [
            bracket_from_norms(Fraction(norm_k), norm_l, norm_sum, norm_diff, node)
            for node in BETA_NODES
        ]
        samples.append(interpolate(BETA_NODES, values))
    return [interpolate(T_NODES, [row[n] for row in samples]) for n in range(4)]


def t_squared_coefficients(k: WaveVector, eps: WaveVector) -> Tuple[Fraction, ...]:
    return tuple(series[2] for series in _t_series(k.norm2(), eps.norm2(), k.dot(eps)))


def separate_forms(
    k: WaveVector, samples: Sequence[WaveVector]
) -> Tuple[Tuple[Fraction, Fraction], ...]:
    """Solve for (c1, c2) per b_n from two eps samples

    Raises DegenerateDirectionSetError when the samples give linearly
    dependent (|eps|^2, (k,eps)^2) pairs.
    """
    if len(samples) != 2:
        raise DegenerateDirectionSetError("Exactly two eps samples are needed")
    first, second = samples
    n = k.norm2()
    e1, s1 = first.norm2(), k.dot(first) ** 2
    e2, s2 = second.norm2(), k.dot(second) ** 2
    det = e1 * s2 - e2 * s1
    if det == 0:
        raise DegenerateDirectionSetError(
            f"eps samples {first} and {second} cannot separate |eps|^2 from (k,eps)^2"
        )
    q1 = t_squared_coefficients(k, first)
    q2 = t_squared_coefficients(k, second)
    pairs = []
    for index in range(4):
        # Cramer's rule on [e n^p, s n^q] [c1, c2]^T = q
        u = Fraction(q1[index] * s2 - q2[index] * s1, det)
        v = Fraction(e1 * q2[index] - e2 * q1[index], det)
        pairs.append((u / n ** EPS_NORM_POWERS[index], v / n ** DOT_NORM_POWERS[index]))
    return tuple(pairs)


def _auxiliary_direction(k: WaveVector, eps: WaveVector) -> WaveVector:
    dot = k.dot(eps) ** 2
    for candidate in (k.perpendicular(), k, WaveVector(1, 0), WaveVector(0, 1), WaveVector(1, 1)):
        if eps.norm2() * k.dot(candidate) ** 2 - candidate.norm2() * dot != 0:
            return candidate
    raise DegenerateDirectionSetError(f"No auxiliary direction separates the forms for k={k}, eps={eps}")


def _require_expansion_args(k: WaveVector, eps: WaveVector) -> None:
    if k.is_zero:
        raise ZeroModeError("k must be nonzero")
    if eps.is_zero:
        raise DegeneratePlaneError("degenerate plane: eps must be nonzero")
    l = k + eps
    if l.is_zero or l == -k:
        raise DegeneratePlaneError(f"degenerate plane: k+eps={l} is equal to k up to sign")


def eps_expansion(k: WaveVector, eps: WaveVector) -> EpsExpansion:
    """Exact t^2 structure of the cubic's coefficients for l = k + t*eps"""
    _require_expansion_args(k, eps)
    series = _t_series(k.norm2(), eps.norm2(), k.dot(eps))
    computed = separate_forms(k, [eps, _auxiliary_direction(k, eps)])
    report = tuple(
        CoefficientMatch(index=n, claimed=CLAIMED_LEADING[n], computed=computed[n]) for n in range(4)
    )
    for match in report:
        if not match.matches:
            logger.info(
                "b%d leading form differs from the printed one: computed %s, printed %s",
                match.index, match.computed, match.claimed,
            )
    return EpsExpansion(
        k=k,
        eps=eps,
        leading=tuple(s[2] for s in series),
        lower_order=tuple((s[0], s[1]) for s in series),
        computed_leading=computed,
        claimed_leading=CLAIMED_LEADING,
        match_report=report,
    )


def theorem2_check(
    k: WaveVector,
    eps: WaveVector,
    alpha_cap: Fraction = Fraction(1),
    tolerance: Fraction = DEFAULT_TOLERANCE,
    digits: int = DEFAULT_DIGITS,
) -> Tuple[bool, Alpha0Result]:
    """Whether a threshold exists for l = k + eps and lies below ``alpha_cap``"""
    _require_expansion_args(k, eps)
    cap = as_fraction(alpha_cap)
    if cap <= 0:
        raise ValueError(f"alpha cap must be positive, got {cap}")
    result = find_alpha0(k, k + eps, tolerance=tolerance, digits=digits)
    return result.below_cap(cap), result
