import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, stats

from gi0geo.errors import DegenerateSampleError, DomainError
from gi0geo.model import (
    ModelParams,
    as_sample,
    cdf,
    fisher_matrix,
    log_pdf,
    moment,
    pdf,
    sample,
    scale_transform,
    texture_class,
)
from gi0geo.special import trigamma

params_st = st.builds(
    ModelParams,
    alpha=st.floats(min_value=-20, max_value=-1.05),
    gamma=st.floats(min_value=0.05, max_value=50),
    looks=st.sampled_from([1.0, 2.0, 3.0, 4.0, 8.0]),
)


def mp_pdf(a, g, L, z):
    a, g, L, z = (mpmath.mpf(v) for v in (a, g, L, z))
    c = L ** L * mpmath.gamma(L - a) / (g ** a * mpmath.gamma(-a) * mpmath.gamma(L))
    return float(c * z ** (L - 1) / (g + z * L) ** (L - a))


def quad_cdf(p, z):
    return integrate.quad(lambda t: pdf(p, t), 0, z, epsabs=1e-13, limit=200)[0]


class TestParams:
    @pytest.mark.parametrize("a,g,L", [(0.0, 1, 1), (1.0, 1, 1), (-2, 0, 1), (-2, -1, 1), (-2, 1, 0.5), (float("nan"), 1, 1)])
    def test_invalid(self, a, g, L):
        with pytest.raises(DomainError):
            ModelParams(a, g, L)

    def test_texture_bands(self):
        assert texture_class(-1.5) == "extremely textured"
        assert texture_class(-4.0) == "moderately textured"
        assert texture_class(-9.0) == "textureless"


class TestDensity:
    def test_value_at_zero_single_look(self):
        assert pdf(ModelParams(-2, 1, 1), 0.0) == pytest.approx(2.0, rel=1e-14)

    def test_zero_for_multilook(self):
        assert pdf(ModelParams(-2, 1, 3), 0.0) == 0.0
        assert log_pdf(ModelParams(-2, 1, 3), 0.0) == -math.inf

    def test_log_value(self):
        assert log_pdf(ModelParams(-2, 1, 1), 1.0) == pytest.approx(math.log(0.25), abs=1e-14)

    def test_against_high_precision(self):
        # 4 * Gamma(5) / (2**-3 Gamma(3) Gamma(2)) / 4**5 = 0.375
        ref = mp_pdf(-3, 2, 2, 1)
        assert ref == pytest.approx(0.375, rel=1e-15)
        assert pdf(ModelParams(-3, 2, 2), 1.0) == pytest.approx(ref, rel=1e-13)
        for (a, g, L, z) in [(-1.3, 0.7, 1, 12.0), (-7.5, 3.0, 4, 0.2), (-15, 10, 8, 2.5)]:
            assert pdf(ModelParams(a, g, L), z) == pytest.approx(mp_pdf(a, g, L, z), rel=1e-12)

    def test_no_overflow_far_tail(self):
        v = log_pdf(ModelParams(-1.01, 1, 1), 1e6)
        assert math.isfinite(v)
        ref = math.log(mp_pdf(-1.01, 1, 1, 1e6))
        assert v == pytest.approx(ref, rel=1e-12)

    def test_exp_log_consistency(self, rng):
        for _ in range(100):
            p = ModelParams(-rng.uniform(1.01, 20), rng.uniform(0.1, 10), float(rng.integers(1, 9)))
            z = rng.uniform(0.001, 20)
            if pdf(p, z) > 1e-300:
                assert math.exp(log_pdf(p, z)) == pytest.approx(pdf(p, z), rel=1e-12)

    def test_negative_z_rejected(self):
        with pytest.raises(DomainError):
            pdf(ModelParams(-2, 1, 1), -1.0)

    @pytest.mark.parametrize("a", [-1.5, -3.0, -8.0])
    @pytest.mark.parametrize("g", [0.5, 1.0, 10.0])
    @pytest.mark.parametrize("L", [1.0, 2.0, 4.0, 8.0])
    def test_normalization(self, a, g, L):
        p = ModelParams(a, g, L)
        # u in (0,1) compactification, integrated by scipy quad
        total = integrate.quad(lambda u: pdf(p, g * u / (1 - u)) * g / (1 - u) ** 2, 0, 1, epsabs=1e-12, limit=500)[0]
        assert total == pytest.approx(1.0, abs=1e-6)

    @given(params_st, st.floats(min_value=1e-3, max_value=1e3))
    def test_scale_law(self, p, z):
        unit = ModelParams(p.alpha, 1.0, p.looks)
        lhs = pdf(p, z)
        rhs = pdf(unit, z / p.gamma) / p.gamma
        if lhs > 1e-250:
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_cdf_against_quadrature(self):
        for p in [ModelParams(-2, 1, 1), ModelParams(-5, 4, 2), ModelParams(-8, 1, 8)]:
            for z in [0.01, 0.3, 1.0, 3.0]:
                assert cdf(p, z) == pytest.approx(quad_cdf(p, z), abs=1e-10)


class TestMoments:
    def test_mean_closed_form(self):
        # E Z = gamma / (-alpha - 1)
        assert moment(ModelParams(-2, 1, 4), 1) == pytest.approx(1.0, rel=1e-14)

    def test_infinite(self):
        assert moment(ModelParams(-1, 1, 1), 1) == math.inf
        assert moment(ModelParams(-2, 1, 1), 2) == math.inf

    def test_second_moment(self):
        # (2/1)^2 * Gamma(1)/Gamma(3) * Gamma(3)/Gamma(1) = 4
        assert moment(ModelParams(-3, 2, 1), 2) == pytest.approx(4.0, rel=1e-14)

    def test_bad_order(self):
        with pytest.raises(DomainError):
            moment(ModelParams(-3, 1, 1), 0)


class TestSampler:
    def test_deterministic(self):
        p = ModelParams(-3, 2, 2)
        np.testing.assert_array_equal(sample(p, 100, 7), sample(p, 100, 7))
        assert not np.array_equal(sample(p, 100, 7), sample(p, 100, 8))

    def test_mean_large_sample(self):
        z = sample(ModelParams(-2, 1, 4), 1_000_000, 3)
        assert abs(z.mean() - 1.0) < 0.02

    @pytest.mark.parametrize("p", [ModelParams(-5, 1, 1), ModelParams(-8, 3, 2), ModelParams(-12, 0.5, 8)])
    def test_moments_within_three_standard_errors(self, p):
        n = 200_000
        z = sample(p, n, 11)
        m1, m2 = moment(p, 1), moment(p, 2)
        assert abs(z.mean() - m1) < 3 * math.sqrt((m2 - m1 ** 2) / n)
        if p.alpha < -4:
            m4 = moment(p, 4)
            assert abs(np.mean(z ** 2) - m2) < 3 * math.sqrt((m4 - m2 ** 2) / n)

    def test_ks_against_cdf(self):
        p = ModelParams(-5, 4, 1)
        z = sample(p, 100_000, 5)
        d = stats.kstest(z, lambda x: cdf(p, x)).statistic
        assert d < stats.kstwo.ppf(0.99, z.size)

    def test_bad_size(self):
        with pytest.raises(DomainError):
            sample(ModelParams(-2, 1, 1), 0, 1)


class TestFisher:
    def test_examples(self):
        assert fisher_matrix(ModelParams(-1, 1, 1)).g11 == pytest.approx(1.0, abs=1e-14)
        assert fisher_matrix(ModelParams(-2, 1, 1)).g12 == pytest.approx(1 / 3, abs=1e-15)
        assert fisher_matrix(ModelParams(-2, 2, 1)).g22 == pytest.approx(1 / 8, abs=1e-15)

    @pytest.mark.parametrize("p", [ModelParams(-2, 1, 1), ModelParams(-4.5, 3, 2), ModelParams(-3, 0.5, 4)])
    def test_against_numerical_information(self, p):
        # E[score score^T] with central-difference scores, integrated over z
        h = 1e-6

        def score(z):
            da = (log_pdf(ModelParams(p.alpha + h, p.gamma, p.looks), z)
                  - log_pdf(ModelParams(p.alpha - h, p.gamma, p.looks), z)) / (2 * h)
            dg = (log_pdf(ModelParams(p.alpha, p.gamma + h, p.looks), z)
                  - log_pdf(ModelParams(p.alpha, p.gamma - h, p.looks), z)) / (2 * h)
            return da, dg

        def expect(fn):
            g = p.gamma
            return integrate.quad(lambda u: fn(g * u / (1 - u)) * pdf(p, g * u / (1 - u)) * g / (1 - u) ** 2,
                                  0, 1, epsabs=1e-11, limit=500)[0]

        g11 = expect(lambda z: score(z)[0] ** 2)
        g12 = expect(lambda z: score(z)[0] * score(z)[1])
        g22 = expect(lambda z: score(z)[1] ** 2)
        fm = fisher_matrix(p)
        assert fm.g11 == pytest.approx(g11, rel=1e-5)
        assert fm.g12 == pytest.approx(g12, rel=1e-5)
        assert fm.g22 == pytest.approx(g22, rel=1e-5)

    @given(params_st)
    def test_structure(self, p):
        fm = fisher_matrix(p)
        assert fm.g12 == fm.g21
        assert fm.g11 > 0 and fm.g22 > 0
        assert fm.g11 == fisher_matrix(ModelParams(p.alpha, 1.0, p.looks)).g11
        c = 3.7
        assert fisher_matrix(ModelParams(p.alpha, c * p.gamma, p.looks)).g22 == pytest.approx(fm.g22 / c ** 2, rel=1e-12)

    def test_fractional_looks_uses_trigamma(self):
        p = ModelParams(-3, 1, 2.5)
        assert fisher_matrix(p).g11 == pytest.approx(trigamma(3.0) - trigamma(5.5), rel=1e-14)

    def test_determinant_available(self):
        fm = fisher_matrix(ModelParams(-2, 1, 1))
        assert fm.determinant == pytest.approx(0.25 * 0.5 - 1 / 9)
        assert fm.as_array().shape == (2, 2)


class TestScaleTransform:
    def test_identity_and_division(self):
        np.testing.assert_array_equal(scale_transform([2.0, 4.0, 6.0], 1.0), [2.0, 4.0, 6.0])
        np.testing.assert_array_equal(scale_transform([2.0, 4.0, 6.0], 2.0), [1.0, 2.0, 3.0])

    def test_bad_scale(self):
        with pytest.raises(DomainError):
            scale_transform([1.0], 0.0)


class TestSampleValidation:
    def test_rejects(self):
        with pytest.raises(DomainError):
            as_sample([1.0, -1.0])
        with pytest.raises(DegenerateSampleError):
            as_sample([0.0, 0.0])
        with pytest.raises(DegenerateSampleError):
            as_sample([])
