"""
Exact polynomial helpers: interpolation, Sturm chains, root isolation

Sturm's theorem: the number of distinct real roots of p in (a, b] equals
V(a) - V(b), where V(x) counts sign changes along the Sturm sequence
evaluated at x (zeros dropped). Chains are built with sympy and then held
as Fraction coefficient tuples so that bisection stays cheap.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy as sp

logger = logging.getLogger(__name__)

_X = sp.Symbol("x")


def to_sympy(q: Fraction) -> sp.Rational:
    return sp.Rational(q.numerator, q.denominator)


def from_sympy(r: sp.Expr) -> Fraction:
    r = sp.Rational(r)
    return Fraction(int(r.p), int(r.q))


def horner(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    """Evaluate sum c_i x^i with coefficients in ascending order"""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def _as_node(x: "int | Fraction") -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@lru_cache(maxsize=32)
def _inverse_vandermonde(nodes: Tuple[Fraction, ...]) -> Tuple[Tuple[Fraction, ...], ...]:
    size = len(nodes)
    vandermonde = sp.Matrix(size, size, lambda i, j: to_sympy(nodes[i]) ** j)
    inverse = vandermonde.inv()
    logger.debug("inverted %dx%d Vandermonde matrix", size, size)
    return tuple(tuple(from_sympy(inverse[i, j]) for j in range(size)) for i in range(size))


def interpolate(nodes: Sequence[Fraction], values: Sequence[Fraction]) -> List[Fraction]:
    """Coefficients (ascending) of the unique polynomial through the points

    The inverse Vandermonde matrix is computed exactly with sympy and cached
    per node set.
    """
    if len(nodes) != len(values) or not nodes:
        raise ValueError("Interpolation needs matching, non-empty nodes and values")
    if len(set(nodes)) != len(nodes):
        raise ValueError("Interpolation nodes must be distinct")
    inverse = _inverse_vandermonde(tuple(_as_node(x) for x in nodes))
    return [sum((w * v for w, v in zip(row, values)), Fraction(0)) for row in inverse]


def trim(coeffs: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Drop vanishing leading coefficients (ascending order)"""
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def to_poly(coeffs: Sequence[Fraction]) -> sp.Poly:
    expr = sum((to_sympy(c) * _X**i for i, c in enumerate(coeffs)), sp.Integer(0))
    return sp.Poly(expr, _X, domain=sp.QQ)


def from_poly(poly: sp.Poly) -> Tuple[Fraction, ...]:
    if poly.is_zero:
        return ()
    return tuple(from_sympy(c) for c in reversed(poly.all_coeffs()))


def squarefree_part(coeffs: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Product of the distinct irreducible factors of p, with the same real roots"""
    poly = to_poly(trim(coeffs))
    if poly.is_zero or poly.degree() <= 0:
        return (Fraction(1),)
    _, factors = poly.sqf_list()
    product = sp.Poly(1, _X, domain=sp.QQ)
    for factor, _ in factors:
        product = product * factor
    return from_poly(product)


def cauchy_bound(coeffs: Sequence[Fraction]) -> Fraction:
    """Every real root has absolute value below this bound"""
    c = trim(coeffs)
    if len(c) <= 1:
        return Fraction(1)
    lead = abs(c[-1])
    return 1 + max(abs(x) / lead for x in c[:-1])


@dataclass(frozen=True)
class SturmChain:
    """Sturm sequence of a polynomial, ascending Fraction coefficients per member"""
    members: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def build(cls, coeffs: Sequence[Fraction]) -> "SturmChain":
        c = trim(coeffs)
        if len(c) <= 1:
            return cls((c,))
        chain = sp.sturm(to_poly(c))
        return cls(tuple(from_poly(p) for p in chain if not p.is_zero))

    def variations(self, x: Fraction) -> int:
        signs = [sign(horner(member, x)) for member in self.members]
        return _count_changes(signs)

    def variations_at_infinity(self) -> int:
        signs = [sign(member[-1]) for member in self.members if member]
        return _count_changes(signs)

    def count(self, lo: Fraction, hi: Optional[Fraction] = None) -> int:
        """Distinct roots in (lo, hi]; hi=None means +infinity"""
        upper = self.variations_at_infinity() if hi is None else self.variations(hi)
        return self.variations(lo) - upper


def _count_changes(signs: Sequence[int]) -> int:
    nonzero = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)


def isolate_largest_root(
    coeffs: Sequence[Fraction], lo: Fraction, tolerance: Fraction
) -> Optional[Tuple[Fraction, Fraction]]:
    """Bisect to (lo', hi'] holding the largest root above ``lo``

    Returns None when there is no root in (lo, infinity).
    """
    chain = SturmChain.build(coeffs)
    hi = max(cauchy_bound(coeffs), lo + 1)
    if chain.count(lo, hi) == 0:
        return None
    steps = 0
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        if chain.count(mid, hi) > 0:
            lo = mid
        else:
            hi = mid
        steps += 1
    logger.debug("isolated largest root in %d bisection steps", steps)
    return lo, hi


def render(q: Fraction, digits: int = 12) -> str:
    """Decimal rendering of an exact rational to ``digits`` significant digits"""
    if q == 0:
        return "0"
    return str(sp.Rational(q.numerator, q.denominator).evalf(digits))


def render_sqrt(q: Fraction, digits: int = 12) -> str:
    """Decimal rendering of sqrt(q) for q >= 0"""
    if q < 0:
        raise ValueError(f"Square root of a negative value: {q}")
    if q == 0:
        return "0"
    return str(sp.sqrt(to_sympy(q)).evalf(digits))


def sqrt_approx(q: Fraction, digits: int = 12) -> Fraction:
    """sqrt(q) rounded to ``digits`` significant digits, as an exact rational"""
    return Fraction(render_sqrt(q, digits))
