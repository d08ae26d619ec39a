"""
Bracket cubic, alpha0 threshold and eps expansion
"""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from curvalpha.alpha import (
    FLAT,
    NEGATIVE_FOR_ALL,
    CubicPoly,
    curvature_poly,
    eps_expansion,
    find_alpha0,
    separate_forms,
    theorem2_check,
)
from curvalpha.core import (
    UNIT_TORUS,
    Beta,
    DegenerateDirectionSetError,
    DegeneratePlaneError,
    WaveVector,
)
from curvalpha.curvature import cos_cos_bracket, sectional_cos_cos_closed
from curvalpha.polynomial import SturmChain, squarefree_part

FIG_K = WaveVector(9, 11)
FIG_L = WaveVector(11, 12)
E1 = WaveVector(1, 0)
E2 = WaveVector(0, 1)

components = st.integers(min_value=-12, max_value=12)
vectors = st.builds(WaveVector, components, components).filter(lambda v: not v.is_zero)
rational_betas = st.fractions(min_value=0, max_value=10, max_denominator=97)


class TestCurvaturePoly:
    """The bracket as an exact cubic in beta"""

    def test_unit_pair(self):
        """k=(1,0), l=(0,1): B = -16 (1 + 2 beta)^2 (1 + 4 beta)"""
        poly = curvature_poly(E1, E2)
        assert poly.as_list() == [-16, -128, -320, -256]

    def test_fig_case_coefficients(self):
        """k=(9,11), l=(11,12): b0 and b1 exactly, b3 positive"""
        poly = curvature_poly(FIG_K, FIG_L)
        assert poly.b0 == -631384
        assert poly.b1 == -7128109592
        assert poly.b2 < 0
        assert poly.b3 > 0

    def test_degenerate_plane(self):
        """k = -l has no cubic"""
        with pytest.raises(DegeneratePlaneError):
            curvature_poly(E1, -E1)

    @settings(max_examples=50, deadline=None)
    @given(vectors, vectors, st.lists(rational_betas, min_size=20, max_size=20))
    def test_reproduces_bracket(self, k, l, beta_values):
        """The interpolated cubic equals the bracket at arbitrary rational beta"""
        assume(k != l and k != -l)
        poly = curvature_poly(k, l)
        for value in beta_values:
            assert poly.evaluate(value) == cos_cos_bracket(k, l, Beta(value))

    @settings(max_examples=50, deadline=None)
    @given(vectors, vectors, rational_betas)
    def test_sign_matches_closed_form(self, k, l, beta):
        """rho^2 > 0, so the closed form has the cubic's sign"""
        assume(k.cross(l) != 0)
        closed = sectional_cos_cos_closed(k, l, Beta(beta), UNIT_TORUS)
        sign = (closed > 0) - (closed < 0)
        assert sign == curvature_poly(k, l).sign_at(beta)


class TestFindAlpha0:
    """Threshold beyond which the curvature stays positive"""

    def test_fig_case(self):
        """A single crossing, slightly below 0.1"""
        result = find_alpha0(FIG_K, FIG_L)
        assert result.exists
        assert result.reason is None
        assert result.positive_roots == 1
        assert 0.08 < float(result.alpha0) < 0.11

    def test_fig_case_certificate(self):
        """Negative just below the bracket, positive above, no roots beyond"""
        result = find_alpha0(FIG_K, FIG_L)
        lo, hi = result.bracket
        assert 0 < hi - lo <= Fraction(1, 10**18)
        assert result.poly.sign_at(lo) < 0
        assert result.poly.sign_at(hi) >= 0
        chain = SturmChain.build(squarefree_part(result.poly.as_list()))
        assert chain.count(hi) == 0

    def test_reported_alpha_is_root_of_bracket_end(self):
        """alpha0 is sqrt(beta_hi) to twelve digits"""
        result = find_alpha0(FIG_K, FIG_L)
        assert abs(float(result.alpha0) ** 2 - float(result.beta_hi)) < 1e-12

    def test_alpha0_is_a_scalar(self):
        """alpha0 is a rounded rational, comparable without parsing"""
        result = find_alpha0(FIG_K, FIG_L)
        assert isinstance(result.alpha0, Fraction)
        assert Fraction(8, 100) < result.alpha0 < Fraction(11, 100)
        assert result.alpha0 == find_alpha0(FIG_K, FIG_L, digits=12).alpha0

    def test_coarser_tolerance(self):
        """The tolerance is a stopping rule on the beta bracket"""
        result = find_alpha0(FIG_K, FIG_L, tolerance=Fraction(1, 1000), digits=4)
        lo, hi = result.bracket
        assert hi - lo <= Fraction(1, 1000)
        assert 0.08 < float(result.alpha0) < 0.11

    def test_parallel_is_flat(self):
        """k x l = 0 kills the curvature for every alpha"""
        result = find_alpha0(E1, WaveVector(2, 0))
        assert not result.exists
        assert result.reason == FLAT
        assert result.alpha0 is None

    def test_unit_pair_never_positive(self):
        """All coefficients negative: no threshold"""
        result = find_alpha0(E1, E2)
        assert not result.exists
        assert result.reason == NEGATIVE_FOR_ALL
        assert result.positive_roots == 0

    def test_small_perturbation_along_k(self):
        """k=(5,0), l=(5,1): b3 < 0, negative throughout"""
        result = find_alpha0(WaveVector(5, 0), WaveVector(5, 1))
        assert result.poly.as_list() == [-10200, -3595800, -261426000, -232590400]
        assert not result.exists
        assert result.reason == NEGATIVE_FOR_ALL

    def test_degenerate_plane(self):
        """k = l spans no plane"""
        with pytest.raises(DegeneratePlaneError):
            find_alpha0(E1, E1)

    def test_below_cap(self):
        """Cap comparisons are exact on beta_hi"""
        result = find_alpha0(FIG_K, FIG_L)
        assert result.below_cap(Fraction(1))
        assert not result.below_cap(Fraction(1, 20))


class TestCubicPoly:
    """Evaluation helpers"""

    def test_leading_sign_skips_zero_terms(self):
        """Degree drops are handled"""
        assert CubicPoly(Fraction(1), Fraction(-1), Fraction(0), Fraction(0)).leading_sign() == -1

    def test_zero_poly(self):
        """All coefficients zero"""
        poly = CubicPoly(Fraction(0), Fraction(0), Fraction(0), Fraction(0))
        assert poly.is_zero
        assert poly.leading_sign() == 0


class TestEpsExpansion:
    """t^2 structure of b_n for l = k + t eps"""

    def test_anchor_leading_terms(self):
        """k=(5,0), eps=(0,1): only the |eps|^2 forms survive"""
        expansion = eps_expansion(WaveVector(5, 0), E2)
        assert expansion.leading == (-10000, -3500000, -250000000, 0)

    def test_lower_order_terms_vanish(self):
        """B = O(t^2) as l -> k"""
        expansion = eps_expansion(FIG_K, WaveVector(2, 1))
        assert all(low == (0, 0) for low in expansion.lower_order)

    def test_computed_forms(self):
        """Exact multipliers of |k|^(2p)|eps|^2 and |k|^(2q)(k,eps)^2"""
        expansion = eps_expansion(FIG_K, WaveVector(2, 1))
        assert expansion.computed_leading == (
            (-16, 16),
            (-224, 128),
            (-640, 320),
            (0, 256),
        )

    def test_match_report(self):
        """Only the b0 |eps|^2 multiplier disagrees with the printed -64"""
        expansion = eps_expansion(FIG_K, WaveVector(2, 1))
        assert [m.matches for m in expansion.match_report] == [False, True, True, True]
        assert expansion.match_report[0].claimed == (-64, 16)
        assert not expansion.all_match

    def test_fig_case_sign_pattern(self):
        """b0..b2 leading terms negative, b3 positive"""
        expansion = eps_expansion(FIG_K, WaveVector(2, 1))
        assert expansion.leading[0] == -546208
        assert all(q < 0 for q in expansion.leading[:3])
        assert expansion.leading[3] == 256 * 202**4 * 29**2

    def test_perpendicular_eps(self):
        """(k, eps) = 0 removes the b3 leading term"""
        expansion = eps_expansion(WaveVector(3, 4), WaveVector(4, -3))
        assert expansion.leading[3] == 0

    @settings(max_examples=25, deadline=None)
    @given(vectors, vectors)
    def test_structure(self, k, eps):
        """b3 leading term is a positive multiple of (k,eps)^2; the others are negative"""
        assume(k.dot(eps) != 0 and k.cross(eps) != 0 and k + eps != -k)
        expansion = eps_expansion(k, eps)
        assert expansion.leading[3] > 0
        assert expansion.computed_leading[3][0] == 0
        assert all(q < 0 for q in expansion.leading[:3])

    def test_dependent_samples(self):
        """Parallel eps samples cannot separate the two forms"""
        with pytest.raises(DegenerateDirectionSetError):
            separate_forms(FIG_K, [WaveVector(2, 1), WaveVector(4, 2)])

    @pytest.mark.parametrize("eps", [WaveVector(0, 0), WaveVector(-18, -22)])
    def test_inadmissible_eps(self, eps):
        """eps = 0 or k + eps = -k leave no plane"""
        with pytest.raises(DegeneratePlaneError):
            eps_expansion(FIG_K, eps)


class TestThresholdBelowCap:
    """Threshold below a cap for l = k + eps"""

    def test_fig_case(self):
        """k=(9,11), eps=(2,1): threshold below 1"""
        ok, result = theorem2_check(FIG_K, WaveVector(2, 1))
        assert ok
        assert result.l == FIG_L

    def test_tight_cap(self):
        """The same threshold is not below 1/20"""
        ok, result = theorem2_check(FIG_K, WaveVector(2, 1), alpha_cap=Fraction(1, 20))
        assert not ok
        assert result.exists

    def test_cap_must_be_positive(self):
        """Zero cap is rejected"""
        with pytest.raises(ValueError):
            theorem2_check(FIG_K, WaveVector(2, 1), alpha_cap=Fraction(0))
