import math
import random
from fractions import Fraction

import pytest

from padicsharp import (AlphaVector, HardyL1WeakParams, HardyLpWeakParams,
                        LebesgueParams, PadicContext, ParameterError,
                        ShellFunction, WeakParams, branch_suprema,
                        extremal_hardy_lp, extremal_unit_ball, extremal_weighted,
                        fractional_hardy, hardy_l1_weak_constant,
                        hardy_lp_weak_constant, hardy_sup_constant,
                        hausdorff_indicator_constant, hilbert_bound_region_sum,
                        hilbert_sup_bound, hilbert_sup_series,
                        indicator_max_ball_kernel, hausdorff_constant,
                        kernel_constant, lp_norm, source_norm_constant, weak_norm)

NEG_INF = float("-inf")
POS_INF = float("inf")


class TestHardyLpWeak:
    def test_extremal_oracle(self, ctx21):
        """Closed form equals weak(H f0)/strong(f0) from the full pipeline."""
        spec = HardyLpWeakParams(p1=2, q=2, beta=Fraction(1, 2),
                                 gamma=Fraction(1, 2), alpha=0, ctx=ctx21)
        closed = hardy_lp_weak_constant(spec)
        f0 = extremal_hardy_lp(spec.beta, spec.p1, ctx21)
        num = weak_norm(fractional_hardy(f0, spec.alpha, ctx21),
                        WeakParams(spec.q, spec.gamma), ctx21).expect()
        den = lp_norm(f0, LebesgueParams(spec.p1, spec.beta), ctx21).expect()
        assert num / den == pytest.approx(closed, rel=1e-12)
        assert closed == pytest.approx(0.5745383453297614, rel=1e-12)

    def test_factorization(self, ctx21):
        """The two factors are the weak prefactor^)1/q) and C^(1/p1')."""
        spec = HardyLpWeakParams.with_derived_q(3, 1, Fraction(1, 2), 0, ctx21)
        c = source_norm_constant(spec.p1, spec.beta, ctx21)
        pref = (ctx21.sphere_unit * ctx21.pow(-(ctx21.n + spec.gamma))
                / (1 - ctx21.pow(-(ctx21.n + spec.gamma))))
        expected = pref ** (1 / float(spec.q)) * c ** (1 - 1 / float(spec.p1))
        assert hardy_lp_weak_constant(spec) == pytest.approx(expected, rel=1e-14)

    def test_pole_rejected_before_overflow(self, ctx21):
        # beta -> n(p1-1) hits the pole of the closed form
        with pytest.raises(ParameterError, match="beta"):
            HardyLpWeakParams(p1=2, q=4, beta=1, gamma=0, alpha=0, ctx=ctx21)
        with pytest.raises(ParameterError):
            source_norm_constant(2, 1, ctx21)

    def test_scaling_relation_enforced(self, ctx21):
        with pytest.raises(ParameterError, match="scaling"):
            HardyLpWeakParams(p1=2, q=3, beta=Fraction(1, 2), gamma=0,
                              alpha=0, ctx=ctx21)

    def test_alpha_range(self, ctx21):
        with pytest.raises(ParameterError, match="alpha"):
            HardyLpWeakParams.with_derived_q(2, Fraction(1, 2), 0,
                                             Fraction(1, 2), ctx21)

    def test_unchecked_mode(self, ctx21):
        spec = HardyLpWeakParams(p1=2, q=3, beta=Fraction(1, 2), gamma=0,
                                 alpha=0, ctx=ctx21, check=False)
        assert hardy_lp_weak_constant(spec) > 0

    def test_branch_suprema_agree(self, ctx21):
        spec = HardyLpWeakParams.with_derived_q(2, Fraction(1, 2), 0, 0, ctx21)
        m1, m2 = branch_suprema(spec)
        assert m1 == pytest.approx(m2, rel=1e-12)
        den = lp_norm(extremal_hardy_lp(spec.beta, spec.p1, ctx21),
                      LebesgueParams(spec.p1, spec.beta), ctx21).value
        assert m1 / den == pytest.approx(hardy_lp_weak_constant(spec), rel=1e-12)


class TestHardyL1Weak:
    def test_value_p2(self, ctx21):
        spec = HardyL1WeakParams(alpha=Fraction(1, 2), gamma=0, ctx=ctx21)
        assert hardy_l1_weak_constant(spec) == pytest.approx(
            math.sqrt(0.5), rel=1e-14)

    def test_extremal_oracle(self, ctx21):
        spec = HardyL1WeakParams(alpha=Fraction(1, 2), gamma=0, ctx=ctx21)
        f0 = extremal_unit_ball(ctx21)
        num = weak_norm(fractional_hardy(f0, spec.alpha, ctx21),
                        WeakParams(spec.q, spec.gamma), ctx21).expect()
        assert num / 0.5 == pytest.approx(hardy_l1_weak_constant(spec), rel=1e-12)

    def test_alpha_to_n_limit(self):
        ctx = PadicContext(3, 1)
        spec = HardyL1WeakParams(alpha=1 - 1e-9, gamma=Fraction(1, 2), ctx=ctx)
        assert hardy_l1_weak_constant(spec) == pytest.approx(1.0, abs=1e-7)

    def test_p3_n2_value(self):
        ctx = PadicContext(3, 2)
        spec = HardyL1WeakParams(alpha=1, gamma=1, ctx=ctx)
        expected = ((1 - 3.0 ** -2) / ((1 - 3.0 ** -3) * 27)) ** (1 / 3)
        assert hardy_l1_weak_constant(spec) == pytest.approx(expected, rel=1e-14)

    def test_alpha_zero_rejected(self, ctx21):
        # the endpoint statement fails at alpha = 0
        with pytest.raises(ParameterError):
            HardyL1WeakParams(alpha=0, gamma=0, ctx=ctx21)


class TestHardySup:
    def test_trivial(self, ctx21):
        assert hardy_sup_constant(AlphaVector((0,)), ctx21) == pytest.approx(1.0)
        assert hardy_sup_constant(AlphaVector((0, 0)), ctx21) == pytest.approx(1.0)

    def test_kernel_constant_oracle(self):
        ctx = PadicContext(3, 1)
        alphas = AlphaVector((Fraction(1, 2),))
        K = indicator_max_ball_kernel(1, ctx)
        got = kernel_constant(K, alphas, ctx)
        closed = hardy_sup_constant(alphas, ctx)
        assert closed == pytest.approx(1.5773502691896257, rel=1e-12)
        assert abs(got.value - closed) <= got.error_bound + 1e-12 * closed

    def test_precondition(self, ctx21):
        with pytest.raises(ParameterError):
            hardy_sup_constant(AlphaVector((1.5,)), ctx21)

    def test_telescoping_identity_random(self, ctx21):
        """A_m (1 - p^(d_m - mn)) equals the product formula."""
        rng = random.Random(9)
        n = ctx21.n
        for m in (1, 2, 3, 4):
            for _ in range(6):
                alphas = AlphaVector(tuple(rng.uniform(-1.5, 0.9) for _ in range(m)))
                a = alphas.alpha
                am = ctx21.sphere_unit ** m / (1 - ctx21.pow(a - m * n))
                for ak in alphas.alphas:
                    am /= 1 - ctx21.pow(ak - n)
                assembled = am * (1 - ctx21.pow(a - m * n))
                assert assembled == pytest.approx(
                    hardy_sup_constant(alphas, ctx21), rel=1e-12)


class TestHilbert:
    def test_series_below_bound_m1(self, ctx21):
        alphas = AlphaVector((Fraction(1, 2),))
        series = hilbert_sup_series(alphas, ctx21)
        bound = hilbert_sup_bound(alphas, ctx21)
        assert bound == pytest.approx(0.25 / (1 - 2 ** -0.5) ** 2, rel=1e-13)
        assert series.value <= bound
        assert series.value + series.error_bound >= series.value

    def test_series_below_bound_m2(self, ctx21):
        alphas = AlphaVector((Fraction(1, 2), Fraction(1, 2)))
        series = hilbert_sup_series(alphas, ctx21)
        bound = hilbert_sup_bound(alphas, ctx21)
        assert series.value <= bound
        assert series.converged

    def test_pole_at_zero_alpha(self, ctx21):
        with pytest.raises(ParameterError):
            hilbert_sup_bound(AlphaVector((0,)), ctx21)
        with pytest.raises(ParameterError):
            hilbert_sup_series(AlphaVector((Fraction(1, 2), Fraction(-1, 2))), ctx21)

    def test_bound_region_telescoping(self, ctx21):
        """B_m p^(d_m) (1 - p^(-mn)) assembled from the region sums."""
        rng = random.Random(21)
        for m in (1, 2, 3):
            for _ in range(6):
                alphas = AlphaVector(tuple(rng.uniform(0.05, 0.9) for _ in range(m)))
                assert hilbert_bound_region_sum(alphas, ctx21) == pytest.approx(
                    hilbert_sup_bound(alphas, ctx21), rel=1e-12)


class TestHausdorffConstant:
    def test_per_axis_closed_form(self, ctx21):
        alphas = AlphaVector((Fraction(-1, 2), -1))
        closed = hausdorff_indicator_constant(alphas, ctx21)
        expected = (0.5 / (1 - 2 ** -0.5)) * (0.5 / (1 - 0.5))
        assert closed == pytest.approx(expected, rel=1e-13)
        from padicsharp import TruncationPolicy
        phi = indicator_max_ball_kernel(2, ctx21, TruncationPolicy(tol=1e-6))
        got = hausdorff_constant(phi, alphas, ctx21)
        assert got.value == pytest.approx(closed, rel=1e-8)

    def test_zero_multiplier(self, ctx21):
        from padicsharp import KernelSpec
        phi = KernelSpec(m=1, eval=lambda ks: 0.0, support_hi=0,
                         tail_bound=lambda a, c, w: 0.0, name="zero")
        assert hausdorff_constant(phi, AlphaVector((-1,)), ctx21).value == 0.0

    def test_negative_test_alpha_shift(self, ctx21):
        """The indicator multiplier equals the Hardy kernel with exponents
        shifted by n, so alpha_j >= 0 must fail the shifted precondition."""
        phi = indicator_max_ball_kernel(1, ctx21)
        with pytest.raises(ParameterError, match="alpha_1 < n"):
            hausdorff_constant(phi, AlphaVector((Fraction(1, 2),)), ctx21)
        with pytest.raises(ParameterError):
            hausdorff_indicator_constant(AlphaVector((0,)), ctx21)


class TestExtremals:
    def test_unit_ball(self, ctx21):
        f = extremal_unit_ball(ctx21)
        assert len(f.segments) == 1
        seg = f.segments[0]
        assert seg.lo == NEG_INF and seg.hi == -1
        assert seg.const_value == 1.0

    def test_hardy_lp(self, ctx21):
        f = extremal_hardy_lp(Fraction(1, 2), 2, ctx21)
        seg = f.segments[0]
        assert seg.lo == NEG_INF and seg.hi == -1
        assert seg.terms == ((1.0, Fraction(-1, 2)),)

    def test_weighted_zero_alpha_constant_one(self, ctx21):
        f = extremal_weighted(0, ctx21)
        for k in (-5, 0, 7):
            assert f.value(k, ctx21) == 1.0

    def test_positivity_of_constants(self, ctx21):
        rng = random.Random(4)
        for _ in range(20):
            alpha = Fraction(rng.randint(1, 7), 8)
            gamma = Fraction(rng.randint(-3, 8), 8)
            if ctx21.n + gamma <= 0 or not 0 < alpha < ctx21.n:
                continue
            c = hardy_l1_weak_constant(HardyL1WeakParams(alpha=alpha, gamma=gamma,
                                                         ctx=ctx21))
            assert 0 < c < POS_INF
