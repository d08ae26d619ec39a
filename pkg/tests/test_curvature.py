"""
Curvature tensor, sectional curvature routes and L2 oracles
"""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from curvalpha.core import (
    UNIT_TORUS,
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
from curvalpha.curvature import (
    CurvatureResult,
    CurvatureRoute,
    arnold_cos_cos,
    arnold_cos_cos_result,
    arnold_general,
    gram_determinant,
    r_coeff,
    r_coeff_paper,
    rho_squared,
    sectional_cos_cos_closed,
    sectional_cos_cos_normalized,
    sectional_cos_cos_raw,
    sectional_general,
    stream_inner,
)

components = st.integers(min_value=-12, max_value=12)
vectors = st.builds(WaveVector, components, components).filter(lambda v: not v.is_zero)
betas = st.sampled_from([Fraction(0), Fraction(1, 4), Fraction(1), Fraction(9, 4)]).map(Beta)

IDENTITY_SETTINGS = settings(max_examples=200, deadline=None)

E1 = WaveVector(1, 0)
E2 = WaveVector(0, 1)
FIG_K = WaveVector(9, 11)
FIG_L = WaveVector(11, 12)


@st.composite
def quadruples(draw):
    k, l, m = draw(vectors), draw(vectors), draw(vectors)
    n = -(k + l + m)
    assume(not n.is_zero)
    return k, l, m, n


@st.composite
def planes(draw):
    k, l = draw(vectors), draw(vectors)
    assume(k.cross(l) != 0)
    return k, l


class TestCurvatureCoefficient:
    """<R(e_k, e_l) e_m, e_n>"""

    def test_unit_anchor(self):
        """k=(1,0), l=(0,1), m=(-1,0) at beta=0 gives -1/2"""
        assert r_coeff(E1, E2, -E1, Beta.zero(), UNIT_TORUS) == Fraction(-1, 2)

    def test_scales_with_area(self):
        """The coefficient is linear in S"""
        geom = TorusGeometry(Fraction(3))
        assert r_coeff(E1, E2, -E1, Beta.zero(), geom) == Fraction(-3, 2)

    def test_zero_total_mode_rejected(self):
        """n = 0 is not a basis index"""
        with pytest.raises(ZeroModeError):
            r_coeff(E1, E2, -(E1 + E2), Beta.zero(), UNIT_TORUS)

    @IDENTITY_SETTINGS
    @given(quadruples(), betas)
    def test_first_pair_antisymmetry(self, quad, beta):
        """R(e_k,e_l) = -R(e_l,e_k)"""
        k, l, m, _ = quad
        assert r_coeff(k, l, m, beta, UNIT_TORUS) == -r_coeff(l, k, m, beta, UNIT_TORUS)

    @IDENTITY_SETTINGS
    @given(quadruples(), betas)
    def test_last_pair_antisymmetry(self, quad, beta):
        """<R e_m, e_n> = -<R e_n, e_m>"""
        k, l, m, n = quad
        assert r_coeff(k, l, m, beta, UNIT_TORUS) == -r_coeff(k, l, n, beta, UNIT_TORUS)

    @IDENTITY_SETTINGS
    @given(quadruples(), betas)
    def test_pair_symmetry(self, quad, beta):
        """R_{klmn} = R_{mnkl}"""
        k, l, m, n = quad
        assert r_coeff(k, l, m, beta, UNIT_TORUS) == r_coeff(m, n, k, beta, UNIT_TORUS)

    @IDENTITY_SETTINGS
    @given(quadruples(), betas)
    def test_first_bianchi(self, quad, beta):
        """Cyclic sum over the first three slots vanishes"""
        k, l, m, _ = quad
        total = (
            r_coeff(k, l, m, beta, UNIT_TORUS)
            + r_coeff(l, m, k, beta, UNIT_TORUS)
            + r_coeff(m, k, l, beta, UNIT_TORUS)
        )
        assert total == 0


class TestPrintedCoefficient:
    """The literally transcribed coefficient, kept for comparison"""

    def test_unit_anchor_differs(self):
        """At the unit anchor the printed formula gives -1, not -1/2"""
        assert r_coeff_paper(E1, E2, -E1, Beta.zero(), UNIT_TORUS) == -1

    def test_zero_total_mode_returns_zero(self):
        """A(0) = 0 annihilates the expression"""
        assert r_coeff_paper(E1, E2, -(E1 + E2), Beta.zero(), UNIT_TORUS) == 0

    def test_zero_total_mode_strict(self):
        """Strict mode reports the degenerate mode"""
        with pytest.raises(DegenerateModeError):
            r_coeff_paper(E1, E2, -(E1 + E2), Beta.zero(), UNIT_TORUS, strict=True)


class TestCosCosRoutes:
    """Sectional curvature of the cos(k,x)/cos(l,x) plane"""

    def test_raw_unit_anchor(self):
        """Raw R-sum value for the unit plane is -1/8"""
        assert sectional_cos_cos_raw(E1, E2, Beta.zero(), UNIT_TORUS) == Fraction(-1, 8)

    def test_closed_unit_anchor(self):
        """Closed form rho^2 * bracket = (1/144) * (-16) = -1/9"""
        assert rho_squared(E1, E2, Beta.zero(), UNIT_TORUS) == Fraction(1, 144)
        assert sectional_cos_cos_closed(E1, E2, Beta.zero(), UNIT_TORUS) == Fraction(-1, 9)

    def test_normalized_unit_anchor(self):
        """Dividing by the Gram determinant 1/4 gives -1/2"""
        result = sectional_cos_cos_normalized(E1, E2, Beta.zero(), UNIT_TORUS)
        assert result.normalized == Fraction(-1, 2)
        assert result.route is CurvatureRoute.R_SUM
        assert result.sign == -1

    def test_closed_route_result(self):
        """The closed-form route shares the Gram normalization"""
        result = sectional_cos_cos_normalized(E1, E2, Beta.zero(), UNIT_TORUS, CurvatureRoute.CLOSED_FORM)
        assert result.raw == Fraction(-1, 9)
        assert result.normalized == Fraction(-4, 9)

    def test_arnold_route_result(self):
        """The L2 route delegates to the oracle"""
        result = sectional_cos_cos_normalized(E1, E2, Beta.zero(), UNIT_TORUS, CurvatureRoute.ARNOLD_L2)
        assert result.normalized == Fraction(-1, 2)
        assert result.route is CurvatureRoute.ARNOLD_L2

    @pytest.mark.parametrize("l", [E1, -E1])
    def test_degenerate_plane(self, l):
        """k = +-l spans no plane"""
        with pytest.raises(DegeneratePlaneError):
            sectional_cos_cos_raw(E1, l, Beta.zero(), UNIT_TORUS)

    def test_parallel_plane_is_flat(self):
        """(k x l)^2 = 0 kills the curvature"""
        result = sectional_cos_cos_normalized(E1, WaveVector(2, 0), Beta(Fraction(1)), UNIT_TORUS)
        assert result.raw == 0
        assert result.sign == 0

    @IDENTITY_SETTINGS
    @given(planes(), betas)
    def test_route_ratio_is_nine_eighths(self, plane, beta):
        """R-sum and closed form differ by the constant 9/8"""
        k, l = plane
        closed = sectional_cos_cos_closed(k, l, beta, UNIT_TORUS)
        assume(closed != 0)
        assert sectional_cos_cos_raw(k, l, beta, UNIT_TORUS) / closed == Fraction(9, 8)

    @IDENTITY_SETTINGS
    @given(planes())
    def test_l2_oracle_agrees(self, plane):
        """At beta = 0 the normalized curvature equals the L2 formula"""
        k, l = plane
        normalized = sectional_cos_cos_normalized(k, l, Beta.zero(), UNIT_TORUS).normalized
        assert normalized == arnold_cos_cos(k, l, UNIT_TORUS)

    @IDENTITY_SETTINGS
    @given(planes())
    def test_l2_closed_form_nonpositive(self, plane):
        """The L2 curvature of cos/cos planes is never positive"""
        k, l = plane
        assert sectional_cos_cos_closed(k, l, Beta.zero(), UNIT_TORUS) <= 0

    def test_fig_case_changes_sign(self):
        """k=(9,11), l=(11,12): negative for L2, positive at alpha = 1"""
        at_zero = sectional_cos_cos_normalized(FIG_K, FIG_L, Beta.zero(), UNIT_TORUS)
        at_one = sectional_cos_cos_normalized(FIG_K, FIG_L, Beta.from_alpha(1), UNIT_TORUS)
        assert at_zero.normalized < 0
        assert at_one.normalized > 0

    def test_normalized_scales_inversely_with_area(self):
        """Signs are S-independent and magnitudes scale as 1/S"""
        unit = sectional_cos_cos_normalized(FIG_K, FIG_L, Beta(Fraction(1, 4)), UNIT_TORUS)
        double = sectional_cos_cos_normalized(FIG_K, FIG_L, Beta(Fraction(1, 4)), TorusGeometry(Fraction(2)))
        assert double.normalized == unit.normalized / 2


class TestCurvatureResult:
    """Invariants carried by the result type"""

    def test_arnold_route_needs_zero_beta(self):
        """The L2 oracle has no H^1 counterpart"""
        with pytest.raises(ValueError):
            CurvatureResult(Fraction(-1), Fraction(-1), CurvatureRoute.ARNOLD_L2, Beta(Fraction(1)))

    def test_sign_mismatch_rejected(self):
        """Raw and normalized must agree in sign"""
        with pytest.raises(CurvatureError):
            CurvatureResult(Fraction(-1), Fraction(1), CurvatureRoute.R_SUM, Beta.zero())

    def test_arnold_result(self):
        """The wrapped oracle reproduces the Gram-scaled raw value"""
        result = arnold_cos_cos_result(E1, E2, UNIT_TORUS)
        assert result.raw == Fraction(-1, 8)
        assert result.normalized == Fraction(-1, 2)


class TestFourierStreams:
    """Real stream functions as finite Fourier sums"""

    def test_cosine_coefficients(self):
        """cos(k,x) = (e_k + e_-k)/2"""
        stream = FourierStream.cosine(E1, 4)
        assert stream.get(E1) == GaussianRational(Fraction(2))
        assert stream.get(-E1) == GaussianRational(Fraction(2))

    def test_sine_coefficients(self):
        """sin(k,x) = (e_k - e_-k)/(2i)"""
        stream = FourierStream.sine(E2)
        assert stream.get(E2) == GaussianRational(0, Fraction(-1, 2))
        assert stream.get(-E2) == GaussianRational(0, Fraction(1, 2))

    def test_non_real_stream_rejected(self):
        """Coefficients at -k must be conjugate to those at k"""
        with pytest.raises(ValueError):
            FourierStream({E1: GaussianRational(Fraction(1)), -E1: GaussianRational(Fraction(2))})

    def test_zero_mode_rejected(self):
        """Stream functions have zero mean"""
        with pytest.raises(ZeroModeError):
            FourierStream({WaveVector(0, 0): GaussianRational(Fraction(1))})

    def test_cancelling_sum_is_empty(self):
        """cos - cos leaves no coefficients"""
        stream = FourierStream.cosine(E1) + FourierStream.cosine(E1, -1)
        assert len(stream) == 0

    def test_inner_product(self):
        """<cos k, cos k> = S A(k)/2"""
        stream = FourierStream.cosine(WaveVector(1, 2))
        assert stream_inner(stream, stream, Beta(Fraction(1)), UNIT_TORUS) == 15

    def test_inner_method(self):
        """FourierStream.inner agrees with stream_inner, unit area by default"""
        xi = FourierStream.cosine(WaveVector(1, 2)) + FourierStream.sine(WaveVector(3, -1), 2)
        eta = FourierStream.cosine(WaveVector(1, 2), 3)
        beta = Beta(Fraction(1, 4))
        assert xi.inner(eta, beta) == stream_inner(xi, eta, beta, UNIT_TORUS)
        assert xi.inner(xi, beta, TorusGeometry(Fraction(2))) == 2 * xi.inner(xi, beta)
        assert FourierStream.cosine(WaveVector(1, 2)).inner(FourierStream.cosine(WaveVector(1, 2)), Beta(Fraction(1))) == 15

    def test_sine_cosine_orthogonal(self):
        """Sine and cosine of the same mode are orthogonal"""
        assert stream_inner(FourierStream.cosine(E1), FourierStream.sine(E1), Beta.zero(), UNIT_TORUS) == 0


class TestGeneralPlanes:
    """Sectional curvature of arbitrary stream pairs"""

    @settings(max_examples=50, deadline=None)
    @given(planes(), betas)
    def test_matches_cos_cos_route(self, plane, beta):
        """The general expansion reproduces the cos/cos R-sum"""
        k, l = plane
        general = sectional_general(FourierStream.cosine(k), FourierStream.cosine(l), beta, UNIT_TORUS)
        direct = sectional_cos_cos_normalized(k, l, beta, UNIT_TORUS)
        assert general.raw == direct.raw
        assert general.normalized == direct.normalized

    def test_empty_stream(self):
        """No plane without two nonzero streams"""
        with pytest.raises(DegeneratePlaneError):
            sectional_general(FourierStream(), FourierStream.cosine(E1), Beta.zero(), UNIT_TORUS)

    def test_dependent_streams(self):
        """Proportional streams have zero Gram determinant"""
        xi = FourierStream.cosine(E1)
        assert gram_determinant(xi, xi.scaled(2), Beta.zero(), UNIT_TORUS) == 0
        with pytest.raises(DegeneratePlaneError):
            sectional_general(xi, xi.scaled(2), Beta.zero(), UNIT_TORUS)

    @settings(max_examples=50, deadline=None)
    @given(planes())
    def test_l2_general_single_mode(self, plane):
        """The general L2 formula agrees with the R-sum for eta = cos(l,x)"""
        k, l = plane
        expected = sectional_cos_cos_raw(k, l, Beta.zero(), UNIT_TORUS)
        assert arnold_general(k, FourierStream.cosine(l), UNIT_TORUS) == expected

    def test_l2_general_uncoupled_modes(self):
        """Modes not related by +-2k contribute independently"""
        k = WaveVector(1, 0)
        eta = FourierStream.cosine(WaveVector(0, 1), 2) + FourierStream.sine(WaveVector(1, 3))
        xi = FourierStream.cosine(k)
        numerator = sectional_general(xi, eta, Beta.zero(), UNIT_TORUS).raw
        assert arnold_general(k, eta, UNIT_TORUS) == numerator
