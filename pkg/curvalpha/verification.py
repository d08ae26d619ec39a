"""
Randomized invariant suite behind ``curvalpha verify``

Every check is exact: a single nonzero defect is a failure, and the first
failing tuple is kept for the report.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Set, Tuple

from .alpha import EpsExpansion, curvature_poly, eps_expansion, find_alpha0
from .core import Beta, FourierStream, UNIT_TORUS, WaveVector
from .curvature import (
    arnold_cos_cos,
    arnold_general,
    cos_cos_bracket,
    curvature_numerator,
    r_coeff,
    r_coeff_paper,
    sectional_cos_cos_closed,
    sectional_cos_cos_normalized,
    sectional_cos_cos_raw,
    sectional_general,
)
from .lattice import (
    CONNECTION_DIVISOR,
    b_adjoint_defect,
    commutator_coeff,
    jacobi_sum,
    metric_defect,
    torsion_defect,
)
from .polynomial import SturmChain, sign, squarefree_part

logger = logging.getLogger(__name__)

BETAS = (Fraction(0), Fraction(1, 4), Fraction(1), Fraction(9, 4))

# sympy-backed checks are sampled less densely
EXPANSION_CASES = 20
THRESHOLD_CASES = 30
BRACKET_SAMPLES = 20

ANCHOR_K = WaveVector(9, 11)
ANCHOR_EPS = WaveVector(2, 1)


@dataclass
class CheckOutcome:
    """Result of one invariant over its random cases"""
    name: str
    cases: int = 0
    failure: Optional[str] = None
    observed: Set[Fraction] = field(default_factory=set)

    @property
    def passed(self) -> bool:
        return self.failure is None


@dataclass
class PrintedFormulaComparison:
    """How the literally transcribed coefficient relates to r_coeff; informational only"""
    cases: int = 0
    agreements: int = 0
    ratios: Set[Fraction] = field(default_factory=set)
    sign_flips: int = 0

    @property
    def constant_ratio(self) -> Optional[Fraction]:
        return next(iter(self.ratios)) if len(self.ratios) == 1 else None


@dataclass
class VerificationReport:
    seed: int
    cases: int
    checks: List[CheckOutcome]
    expansion: EpsExpansion
    printed_formula: PrintedFormulaComparison

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def check(self, name: str) -> CheckOutcome:
        for outcome in self.checks:
            if outcome.name == name:
                return outcome
        raise KeyError(name)

    def constant(self, name: str) -> Optional[Fraction]:
        observed = self.check(name).observed
        return next(iter(observed)) if len(observed) == 1 else None


class Sampler:
    """Seeded source of random wave vectors and betas"""

    def __init__(self, seed: int, bound: int):
        self.rng = random.Random(seed)
        self.bound = bound

    def vector(self) -> WaveVector:
        while True:
            v = WaveVector(
                self.rng.randint(-self.bound, self.bound), self.rng.randint(-self.bound, self.bound)
            )
            if not v.is_zero:
                return v

    def beta(self) -> Beta:
        return Beta(self.rng.choice(BETAS))

    def rational_beta(self) -> Beta:
        return Beta(Fraction(self.rng.randint(0, 400), self.rng.randint(1, 97)))

    def plane(self) -> Tuple[WaveVector, WaveVector]:
        """k, l with k x l != 0"""
        while True:
            k, l = self.vector(), self.vector()
            if k.cross(l) != 0:
                return k, l

    def quadruple(self) -> Tuple[WaveVector, WaveVector, WaveVector, WaveVector]:
        """Nonzero k, l, m, n with k + l + m + n = 0"""
        while True:
            k, l, m = self.vector(), self.vector(), self.vector()
            n = -(k + l + m)
            if not n.is_zero:
                return k, l, m, n


Check = Callable[[CheckOutcome, Sampler, int, int], None]


def _fail(outcome: CheckOutcome, detail: str) -> None:
    if outcome.failure is None:
        outcome.failure = detail
        logger.warning("check %s failed: %s", outcome.name, detail)


def _commutator_antisymmetry(outcome: CheckOutcome, s: Sampler, cases: int, divisor: int) -> None:
    for _ in range(cases):
        k, l = s.vector(), s.vector()
        outcome.cases += 1
        if commutator_coeff(k, l)[0] != -commutator_coeff(l, k)[0]:
            _fail(outcome, f"k={k} l={l}")


def _jacobi(outcome: CheckOutcome, s: Sampler, cases: int, divisor: int) -> None:
    for _ in range(cases):
        k, l, m = s.vector(), s.vector(), s.vector()
        outcome.cases += 1
        if jacobi_sum(k, l, m) != 0:
            _fail(outcome, f"k={k} l={l} m={m}")


def _b_adjoint(outcome: CheckOutcome, s: Sampler, cases: int, divisor: int) -> None:
    for _ in range(cases):
        k, l, m, beta = s.vector(), s.vector(), s.vector(), s.beta()
        outcome.cases += 1
        if b_adjoint_defect(k, l, m, beta, UNIT_TORUS) != 0:
            _fail(outcome, f"k={k} l={l} m={m} beta={beta.value}")


def _torsion_free(outcome: CheckOutcome, s: Sampler, cases: int, divisor: int) -> None:
    for _ in range(cases):
        k, l, beta = s.vector(), s.vector(), s.beta()
        outcome.cases += 1
        if torsion_defect(k, l, beta, divisor) != 0:
            _fail(outcome, f"k={k} l={l} beta={beta.value}")


def _metric_compatible(outcome: CheckOutcome, s: Sampler, cases: int, divisor: int) -> None:
    for _ in range(cases):
        k, l, beta = s.vector(), s.vector(), s.beta()
        outcome.cases += 1
        if metric_defect(k, l, beta, divisor) != 0:
            _fail(outcome, f"k={k} l={l} beta={beta.value}")


def _curvature_symmetries(name: str) -> Check:
    def run(outcome: CheckOutcome, s: Sampler, cases: int, divisor: int) -> None:
        for _ in range(cases):
            k, l, m, n = s.quadruple()
            beta = s.beta()
            r = r_coeff(k, l, m, beta, UNIT_TORUS)
            if name == "first-pair antisymmetry":
                other = -r_coeff(l, k, m, beta, UNIT_TORUS)
            elif name == "last-pair antisymmetry":
                other = -r_coeff(k, l, n, beta, UNIT_TORUS)
            elif name == "pair symmetry":
                other = r_coeff(m, n, k, beta, UNIT_TORUS)
            else:
                other = -r_coeff(l, m, k, beta, UNIT_TORUS) - r_coeff(m, k, l, beta, UNIT_TORUS)
            outcome.cases += 1
            if r != other:
                _fail(outcome, f"k={k} l={l} m={m} beta={beta.value}: {r} != {other}")

    return run


def _route_ratio(outcome: CheckOutcome, s: Sampler, cases: int, divisor: int) -> None:
    for _ in range(cases):
        k, l = s.plane()
        beta = s.beta()
        closed = sectional_cos_cos_closed(k, l, beta, UNIT_TORUS)
        outcome.cases += 1
        if closed == 0:
            continue
        ratio = sectional_cos_cos_raw(k, l, beta, UNIT_TORUS) / closed
        outcome.observed.add(ratio)
        if len(outcome.observed) > 1:
            _fail(outcome, f"k={k} l={l} beta={beta.value}: ratio {ratio} vs {sorted(outcome.observed)}")


def _l2_constant(outcome: CheckOutcome, s: Sampler, cases: int, divisor: int) -> None:
    zero = Beta.zero()
    for _ in range(cases):
        k, l = s.plane()
        normalized = sectional_cos_cos_normalized(k, l, zero, UNIT_TORUS).normalized
        ratio = normalized / arnold_cos_cos(k, l, UNIT_TORUS)
        outcome.cases += 1
        outcome.observed.add(ratio)
        if len(outcome.observed) > 1:
            _fail(outcome, f"k={k} l={l}: ratio {ratio} vs {sorted(outcome.observed)}")


def _l2_nonpositive(outcome: CheckOutcome, s: Sampler, cases: int, divisor: int) -> None:
    for _ in range(cases):
        k, l = s.plane()
        outcome.cases += 1
        value = sectional_cos_cos_closed(k, l, Beta.zero(), UNIT_TORUS)
        if value > 0:
            _fail(outcome, f"k={k} l={l}: closed form {value} > 0")


def _general_matches_cos_cos(outcome: CheckOutcome, s: Sampler, cases: int, divisor: int) -> None:
    for _ in range(cases):
        k, l = s.plane()
        beta = s.beta()
        general = sectional_general(FourierStream.cosine(k), FourierStream.cosine(l), beta, UNIT_TORUS)
        direct = sectional_cos_cos_normalized(k, l, beta, UNIT_TORUS)
        outcome.cases += 1
        if (general.raw, general.normalized) != (direct.raw, direct.normalized):
            _fail(outcome, f"k={k} l={l} beta={beta.value}")


def _uncoupled_stream(s: Sampler, k: WaveVector) -> FourierStream:
    """Two-mode stream with no pair of modes related by +-2k"""
    shift = k.scaled(2)
    while True:
        l1, l2 = s.vector(), s.vector()
        modes = (l1, l2)
        if any(m == k or m == -k for m in modes) or l1 == l2 or l1 == -l2:
            continue
        if any(l1 + l2.scaled(sgn) in (shift, -shift) for sgn in (1, -1)):
            continue
        return FourierStream.cosine(l1, s.rng.randint(1, 3)) + FourierStream.sine(l2, s.rng.randint(1, 3))


def _l2_general_oracle(outcome: CheckOutcome, s: Sampler, cases: int, divisor: int) -> None:
    zero = Beta.zero()
    for _ in range(cases):
        k = s.vector()
        eta = _uncoupled_stream(s, k)
        expected = arnold_general(k, eta, UNIT_TORUS)
        actual = curvature_numerator(FourierStream.cosine(k), eta, zero, UNIT_TORUS)
        outcome.cases += 1
        if expected != actual:
            _fail(outcome, f"k={k} eta modes={eta.support()}: {actual} != {expected}")


def _cubic_reproduction(outcome: CheckOutcome, s: Sampler, cases: int, divisor: int) -> None:
    for _ in range(min(cases, THRESHOLD_CASES)):
        k, l = s.plane()
        poly = curvature_poly(k, l)
        for _ in range(BRACKET_SAMPLES):
            beta = s.rational_beta()
            outcome.cases += 1
            bracket = cos_cos_bracket(k, l, beta)
            if poly.evaluate(beta.value) != bracket:
                _fail(outcome, f"k={k} l={l} beta={beta.value}")
            closed = sectional_cos_cos_closed(k, l, beta, UNIT_TORUS)
            if sign(closed) != sign(bracket):
                _fail(outcome, f"sign mismatch k={k} l={l} beta={beta.value}")


def _threshold_certificate(outcome: CheckOutcome, s: Sampler, cases: int, divisor: int) -> None:
    for _ in range(min(cases, THRESHOLD_CASES)):
        k, l = s.plane()
        result = find_alpha0(k, l)
        outcome.cases += 1
        if not result.exists or result.bracket is None:
            continue
        lo, hi = result.bracket
        chain = SturmChain.build(squarefree_part(result.poly.as_list()))
        if result.poly.sign_at(hi) < 0 or chain.count(hi) != 0:
            _fail(outcome, f"k={k} l={l}: roots remain above beta={hi}")
        elif hi > 0 and chain.count(lo, hi) != 1:
            _fail(outcome, f"k={k} l={l}: bracket ({lo}, {hi}] does not isolate one root")


def _expansion_structure(outcome: CheckOutcome, s: Sampler, cases: int, divisor: int) -> None:
    for _ in range(min(cases, EXPANSION_CASES)):
        while True:
            k, eps = s.vector(), s.vector()
            if k.dot(eps) != 0 and k.cross(eps) != 0 and k + eps != -k:
                break
        expansion = eps_expansion(k, eps)
        outcome.cases += 1
        if any(low != (0, 0) for low in expansion.lower_order):
            _fail(outcome, f"k={k} eps={eps}: nonzero t^0 or t^1 terms")
        elif not expansion.leading[3] > 0 or expansion.computed_leading[3][0] != 0:
            _fail(outcome, f"k={k} eps={eps}: b3 leading term is not a positive multiple of (k,eps)^2")
        elif any(q >= 0 for q in expansion.leading[:3]):
            _fail(outcome, f"k={k} eps={eps}: b0..b2 leading terms not all negative")


def compare_printed_formula(s: Sampler, cases: int) -> PrintedFormulaComparison:
    comparison = PrintedFormulaComparison()
    for _ in range(cases):
        k, l, m, _n = s.quadruple()
        beta = s.beta()
        canonical = r_coeff(k, l, m, beta, UNIT_TORUS)
        printed = r_coeff_paper(k, l, m, beta, UNIT_TORUS)
        comparison.cases += 1
        if canonical == printed:
            comparison.agreements += 1
        if canonical != 0 and printed != 0:
            comparison.ratios.add(printed / canonical)
            if (canonical > 0) != (printed > 0):
                comparison.sign_flips += 1
    return comparison


CHECKS: Dict[str, Check] = {
    "commutator antisymmetry": _commutator_antisymmetry,
    "jacobi identity": _jacobi,
    "B adjoint": _b_adjoint,
    "torsion free": _torsion_free,
    "metric compatible": _metric_compatible,
    "first-pair antisymmetry": _curvature_symmetries("first-pair antisymmetry"),
    "last-pair antisymmetry": _curvature_symmetries("last-pair antisymmetry"),
    "pair symmetry": _curvature_symmetries("pair symmetry"),
    "first bianchi": _curvature_symmetries("first bianchi"),
    "route ratio": _route_ratio,
    "l2 constant": _l2_constant,
    "l2 nonpositive": _l2_nonpositive,
    "general vs cos/cos": _general_matches_cos_cos,
    "l2 general oracle": _l2_general_oracle,
    "cubic reproduction": _cubic_reproduction,
    "threshold certificate": _threshold_certificate,
    "eps structure": _expansion_structure,
}


def run_verification(
    seed: int = 0,
    cases: int = 200,
    component_bound: int = 12,
    divisor: int = CONNECTION_DIVISOR,
) -> VerificationReport:
    """Run every check; ``divisor`` other than 2 builds a deliberately wrong connection"""
    if cases < 1:
        raise ValueError("no cases")
    if component_bound < 1:
        raise ValueError(f"component bound must be positive, got {component_bound}")
    outcomes = []
    for offset, (name, check) in enumerate(CHECKS.items()):
        outcome = CheckOutcome(name=name)
        # each check gets its own stream so adding a check never reshuffles the others
        check(outcome, Sampler(seed * 1000 + offset, component_bound), cases, divisor)
        logger.info("%s: %s over %d cases", name, "ok" if outcome.passed else "FAILED", outcome.cases)
        outcomes.append(outcome)
    printed = compare_printed_formula(Sampler(seed * 1000 + len(CHECKS), component_bound), cases)
    return VerificationReport(
        seed=seed,
        cases=cases,
        checks=outcomes,
        expansion=eps_expansion(ANCHOR_K, ANCHOR_EPS),
        printed_formula=printed,
    )
