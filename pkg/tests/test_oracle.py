"""Numeric oracles: quadrature, fitting, the oscillatory transform."""

import math
from fractions import Fraction

import numpy as np
import pytest

from newton_decay.errors import (BudgetExceededError, DivergenceSuspectedError,
                                 DivergentError, PreconditionError)
from newton_decay.newton import build_polygon
from newton_decay.oracle import (CutoffSpec, DyadicRectangle,
                                 check_comparability,
                                 check_majorant_equivalence, fit_power_log,
                                 integrate_power_on_rect, oscillatory_transform,
                                 sharpness_probe, slice_integral)
from newton_decay.asymptotics import envelope_value
from newton_decay.terms import QUADRANTS, QuadrantSign, parse_terms

F = Fraction


def monomial_rect_integral(a, b, rho, rect):
    """Closed form of the integral of (x1^a x2^b)^-rho over a dyadic rect."""
    def one(e, lo, hi):
        p = -e * rho
        return (hi ** (p + 1) - lo ** (p + 1)) / (p + 1) if p != -1 \
            else math.log(hi / lo)
    x0, x1 = rect.x_range()
    y0, y1 = rect.y_range()
    return one(a, x0, x1) * one(b, y0, y1)


class TestIntegratePowerOnRect:
    def test_monomial_closed_form(self):
        f = parse_terms("x1^2*x2^3")
        rect = DyadicRectangle(1, 1)
        got = integrate_power_on_rect(f, 0.25, rect, tol=1e-8)
        want = monomial_rect_integral(2, 3, 0.25, rect)
        assert got == pytest.approx(want, rel=1e-8)

    def test_rho_zero_gives_exact_area(self):
        f = parse_terms("x1^2*x2^3")
        rect = DyadicRectangle(2, 4)
        got = integrate_power_on_rect(f, 0.0, rect, tol=1e-10)
        want = (2.0 ** -2 - 2.0 ** -3) * (2.0 ** -4 - 2.0 ** -5)
        assert got == pytest.approx(want, rel=1e-12)

    def test_majorant_against_richardson_reference(self):
        # fixed-grid midpoint rule with Richardson extrapolation
        p = build_polygon(parse_terms("x1^3 + x2^2"))
        rect = DyadicRectangle(1, 2)
        rho = 0.5
        x0, x1 = rect.x_range()
        y0, y1 = rect.y_range()

        def midpoint(n):
            xs = x0 + (np.arange(n) + 0.5) * (x1 - x0) / n
            ys = y0 + (np.arange(n) + 0.5) * (y1 - y0) / n
            X, Y = np.meshgrid(xs, ys, indexing="ij")
            vals = (X ** 3 + Y ** 2) ** (-rho)
            return vals.sum() * (x1 - x0) * (y1 - y0) / n / n

        a, b, c = midpoint(50), midpoint(100), midpoint(200)
        ref = c + (c - b) / 3 + ((c - b) / 3 - (b - a) / 3) / 3
        got = integrate_power_on_rect(p, rho, rect, tol=1e-9)
        assert got == pytest.approx(ref, rel=1e-6)

    def test_cauchy_consistency_when_halving_tol(self):
        # fixed test set: smooth, axis-singular, and zero-curve rectangles
        cases = [
            (parse_terms("x1^3 + x2^2"), 0.5, DyadicRectangle(2, 3, QuadrantSign(-1, +1))),
            (parse_terms("x1^2*x2^3"), 0.3, DyadicRectangle(4, 1)),
            (parse_terms("|x1|^2 + |x2|^2"), 0.9, DyadicRectangle(1, 5)),
        ]
        for f, rho, rect in cases:
            for tol in (1e-5, 1e-6):
                v1 = integrate_power_on_rect(f, rho, rect, tol=tol)
                v2 = integrate_power_on_rect(f, rho, rect, tol=tol / 2)
                assert abs(v1 - v2) <= 1.5 * tol * max(abs(v1), abs(v2))

    def test_singular_rect_against_fine_reference(self):
        f = parse_terms("x1^3 + x2^2")
        rect = DyadicRectangle(2, 3, QuadrantSign(-1, +1))
        coarse = integrate_power_on_rect(f, 0.5, rect, tol=1e-5)
        fine = integrate_power_on_rect(f, 0.5, rect, tol=1e-8)
        assert coarse == pytest.approx(fine, rel=3e-5)

    def test_divergence_suspected_on_double_zero(self):
        f = parse_terms("x1^2 - 2*x1*x2 + x2^2")
        rect = DyadicRectangle(3, 3)     # contains the double line x1 = x2
        with pytest.raises(DivergenceSuspectedError):
            integrate_power_on_rect(f, 0.6, rect, tol=1e-6)

    def test_weight_factor(self):
        f = parse_terms("x1*x2")
        rect = DyadicRectangle(1, 1)
        got = integrate_power_on_rect(f, 0.0, rect, tol=1e-10,
                                      weight=lambda x, y: x * y)
        want = ((0.5 ** 2 - 0.25 ** 2) / 2) ** 2
        assert got == pytest.approx(want, rel=1e-10)


class TestSliceIntegral:
    def test_monomial_closed_form(self):
        p = build_polygon(parse_terms("x1^2*x2^3"))
        r, r0, rho = 2.0 ** -10, 0.25, 0.25
        got = slice_integral(p, rho, r, r0, tol=1e-11)
        want = r ** (-2 * rho) * r0 ** (1 - 3 * rho) / (1 - 3 * rho)
        assert got == pytest.approx(want, rel=1e-10)

    def test_rho_zero_gives_r0(self):
        p = build_polygon(parse_terms("x1^3 + x2^2"))
        assert slice_integral(p, 0.0, 2.0 ** -8) == pytest.approx(0.25, rel=1e-12)

    def test_ratio_stable_against_predicted_power(self):
        p = build_polygon(parse_terms("|x1|^2 + |x2|^2"))
        ratios = []
        for e in range(8, 17, 2):
            r = 2.0 ** -e
            ratios.append(slice_integral(p, 0.75, r) / r ** -0.5)
        assert max(ratios) / min(ratios) <= 2.0

    def test_divergent_first_block(self):
        p = build_polygon(parse_terms("x1^2*x2^3"))
        with pytest.raises(DivergentError):
            slice_integral(p, 0.5, 2.0 ** -8)

    def test_range_validation(self):
        p = build_polygon(parse_terms("x1^2"))
        with pytest.raises(ValueError):
            slice_integral(p, 0.25, 0.3, r0=0.25)


class TestFitPowerLog:
    def test_exact_power(self):
        fit = fit_power_log([(2.0 ** -e, (2.0 ** -e) ** -0.5)
                             for e in range(6, 19)])
        assert fit.slope == pytest.approx(0.5, abs=1e-6)
        assert not fit.log_flag

    def test_exact_log(self):
        fit = fit_power_log([(2.0 ** -e, abs(math.log(2.0 ** -e)))
                             for e in range(6, 19)])
        assert abs(fit.slope) < 0.02
        assert fit.log_flag

    def test_power_with_log(self):
        fit = fit_power_log([(2.0 ** -e,
                              (2.0 ** -e) ** -0.3 * abs(math.log(2.0 ** -e)))
                             for e in range(6, 19)])
        assert fit.slope == pytest.approx(0.3, abs=1e-6)
        assert fit.log_flag

    def test_needs_six_samples(self):
        with pytest.raises(ValueError):
            fit_power_log([(0.5, 1.0)] * 5)

    def test_rejects_nonpositive_values(self):
        with pytest.raises(ValueError):
            fit_power_log([(2.0 ** -e, -1.0) for e in range(6, 13)])

    def test_sample_range(self):
        fit = fit_power_log([(2.0 ** -e, (2.0 ** -e) ** -1.0)
                             for e in range(6, 13)])
        assert fit.sample_range == (2.0 ** -12, 2.0 ** -6)


class TestCutoff:
    def test_profile_plateau_and_support(self):
        phi = CutoffSpec(radius=0.25)
        assert phi.profile(0.0) == 1.0
        assert phi.profile(0.124) == 1.0
        assert phi.profile(0.26) == 0.0
        mid = phi.profile(0.19)
        assert 0.0 < mid < 1.0

    def test_gradient_bound_finite(self):
        phi = CutoffSpec()
        assert 0 < phi.gradient_bound() < 100

    def test_derivative_bounds_finite_up_to_order_four(self):
        phi = CutoffSpec()
        for a in range(5):
            for b in range(5):
                assert math.isfinite(phi.derivative_bound(a, b))
        with pytest.raises(ValueError):
            phi.derivative_bound(5, 0)

    def test_quadrant_restriction(self):
        phi = CutoffSpec(kind="quadrant-restricted-bump",
                         quadrant=QuadrantSign(1, 1))
        assert phi(0.05, 0.05) == 1.0
        assert phi(-0.05, 0.05) == 0.0


class TestOscillatory:
    def test_zero_frequency_matches_rect_sum(self):
        # independent path: integrate phi |f|^-rho over dyadic cells
        f = parse_terms("|x1|^2 + |x2|^2")
        rho = 0.5
        phi = CutoffSpec()
        F0 = oscillatory_transform(f, rho, phi, (0.0, 0.0), tol=1e-7)
        assert abs(F0.imag) < 1e-9
        total = 0.0
        for j in range(2, 21):
            for k in range(2, 21):
                rect = DyadicRectangle(j, k)
                total += integrate_power_on_rect(
                    f, rho, rect, tol=1e-7,
                    weight=lambda x, y: float(phi(x, y)))
        assert F0.real == pytest.approx(4 * total, rel=2e-4)

    def test_conjugate_symmetry(self):
        f = parse_terms("|x1|^2 + |x2|^2")
        phi = CutoffSpec()
        a = oscillatory_transform(f, 0.5, phi, (37.0, 11.0), tol=1e-6)
        b = oscillatory_transform(f, 0.5, phi, (-37.0, -11.0), tol=1e-6)
        assert abs(a - b.conjugate()) <= 1e-9 * abs(a)

    def test_smooth_integrand_superpolynomial_decay(self):
        # rho = 0 leaves the transform of the bump itself: two-octave decay
        # slopes must accelerate (single-octave slopes bounce off the
        # transform's oscillation dips), ending steeper than 5
        f = parse_terms("x1^2 + x2^2")
        phi = CutoffSpec()
        lams = [16.0 * 2 ** k for k in range(7)]
        vals = [abs(oscillatory_transform(f, 0.0, phi, (lam, 0.0), tol=1e-10))
                for lam in lams]
        first = math.log(vals[2] / vals[0]) / math.log(4.0)
        last = math.log(vals[-1] / vals[-3]) / math.log(4.0)
        assert last < first - 2.0
        assert last < -5.0

    def test_separable_factorization(self):
        # (x1^2 x2^2)^-rho factorizes, so F factorizes into 1D transforms
        f = parse_terms("x1^2*x2^2")
        phi = CutoffSpec()
        rho = 0.3
        v_both = oscillatory_transform(f, rho, phi, (64.0, 32.0), tol=1e-7)
        v_1 = oscillatory_transform(f, rho, phi, (64.0, 0.0), tol=1e-7)
        v_2 = oscillatory_transform(f, rho, phi, (0.0, 32.0), tol=1e-7)
        v_0 = oscillatory_transform(f, rho, phi, (0.0, 0.0), tol=1e-7)
        assert v_both * v_0 == pytest.approx(v_1 * v_2, rel=1e-4)

    def test_mixed_sign_quadrant_against_reference(self):
        # frozen from an independent nested-QUADPACK run with exact root
        # splitting (agrees with this engine to ~1e-8)
        f = parse_terms("x1^3 + x2^2")
        got = oscillatory_transform(f, 0.5, CutoffSpec(), (8.0, 5.0), tol=1e-6)
        ref = complex(2.022210986455988, 0.3409692261374585)
        assert abs(got - ref) < 5e-7 * abs(ref)

    def test_separable_reduction_for_single_variable_power(self):
        # f = x1: |F(l1, 0)| reduces to the 1D transform of |x|^-0.8 times a
        # bump, which decays like l1^(rho - 1) = l1^-0.2
        from newton_decay.oracle import oscillatory_decay_fit

        f = parse_terms("x1")
        fit, _ = oscillatory_decay_fit(f, 0.8, axis=1,
                                       lambdas=[16.0 * 2 ** k for k in range(6)],
                                       tol=1e-5)
        assert fit.slope == pytest.approx(-0.2, abs=0.15)

    def test_quadrant_restricted_cutoffs_add_up(self):
        # multiplying the cutoff by a quadrant indicator keeps it admissible;
        # the four restricted transforms sum to the full one
        f = parse_terms("|x1|^2 + |x2|^2")
        lam = (24.0, 6.0)
        full = oscillatory_transform(f, 0.5, CutoffSpec(), lam, tol=1e-7)
        parts = sum(
            oscillatory_transform(
                f, 0.5,
                CutoffSpec(kind="quadrant-restricted-bump", quadrant=q),
                lam, tol=1e-7)
            for q in QUADRANTS)
        assert abs(full - parts) <= 1e-6 * abs(full)

    def test_budget_cap(self):
        f = parse_terms("x1^2*x2^2")
        with pytest.raises(BudgetExceededError):
            oscillatory_transform(f, 0.3, CutoffSpec(), (4096.0, 0.0))

    def test_divergent_rho(self):
        f = parse_terms("x1^2*x2^2")
        with pytest.raises(DivergentError):
            oscillatory_transform(f, 0.6, CutoffSpec(), (16.0, 0.0))

    @pytest.mark.parametrize("expr,rho,rho_frac", [
        ("x1^2*x2^2", 0.3, F(3, 10)),
        ("|x1|^2 + |x2|^2", 0.9, F(9, 10)),
    ])
    def test_envelope_domination_constant_stable(self, expr, rho, rho_frac):
        # edge-zero-free golden cases: |F| <= C * envelope with one C
        # stable across the frequency grid
        f = parse_terms(expr)
        p = build_polygon(f)
        phi = CutoffSpec()
        cs = []
        for l1 in (64.0, 256.0):
            for l2 in (64.0, 512.0):
                val = abs(oscillatory_transform(f, rho, phi, (l1, l2),
                                                tol=1e-6))
                env = envelope_value(p, rho_frac, 1 / l1, 1 / l2)
                cs.append(val / env)
        assert max(cs) / min(cs) <= 4.0


class TestComparability:
    def test_monomial_ratios_are_one(self):
        f = parse_terms("x1^2*x2^3")
        rects = [DyadicRectangle(j, k) for j in (1, 3, 5) for k in (1, 4)]
        report = check_comparability(f, 0.25, rects, tol=1e-7)
        assert report.passed
        for row in report.rows:
            assert row.ratio == pytest.approx(1.0, rel=1e-6)

    def test_curved_function_band_bounded(self):
        f = parse_terms("x1^3 + x2^2")
        rects = [DyadicRectangle(j, k, QUADRANTS[(j + k) % 4])
                 for j in range(1, 13) for k in range(1, 13)]
        report = check_comparability(f, 0.5, rects, tol=1e-4)
        assert report.passed
        assert report.ratio_max / report.ratio_min < 1e3

    def test_precondition_requires_well_behaved(self):
        f = parse_terms("x1^2 - 2*x1*x2 + x2^2")
        with pytest.raises(PreconditionError):
            check_comparability(f, 0.25, [DyadicRectangle(1, 1)])

    def test_precondition_requires_rho_below_threshold(self):
        f = parse_terms("x1^3 + x2^2")
        with pytest.raises(PreconditionError):
            check_comparability(f, 0.9, [DyadicRectangle(1, 1)])

    def test_threaded_run_is_deterministic(self, monkeypatch):
        f = parse_terms("x1^3 + x2^2")
        rects = [DyadicRectangle(j, k) for j in (1, 2, 3) for k in (1, 2, 3)]
        serial = check_comparability(f, 0.5, rects, tol=1e-6, threads=1)
        monkeypatch.setenv("NEWTON_DECAY_THREADS", "4")
        from newton_decay.oracle import default_thread_count

        assert default_thread_count() == 4
        threaded = check_comparability(f, 0.5, rects, tol=1e-6,
                                       threads=default_thread_count())
        assert [r.ratio for r in serial.rows] == [r.ratio for r in threaded.rows]


class TestEquivalence:
    def test_monomial_ratio_is_one(self):
        report = check_majorant_equivalence(parse_terms("x1^2*x2^2"),
                                            scales=range(3, 15))
        assert report.passed
        assert report.ratio_min == pytest.approx(1.0, abs=1e-12)
        assert report.ratio_max == pytest.approx(1.0, abs=1e-12)

    def test_zero_free_edges_stable_across_scales(self):
        report = check_majorant_equivalence(parse_terms("x1^3 + x1*x2^2"))
        assert report.passed
        assert report.ratio_min > 0.05
        assert report.ratio_max <= float(
            parse_terms("x1^3 + x1*x2^2").coeff_abs_sum()) + 1e-9

    def test_precondition_violation_reported(self):
        with pytest.raises(PreconditionError):
            check_majorant_equivalence(parse_terms("x1^2 - 2*x1*x2 + x2^2"))


class TestSharpnessProbe:
    def test_inapplicable_for_boundary_monomial(self):
        report = sharpness_probe(parse_terms("x1^2*x2^3"), 0.25, axis=1)
        assert not report.applicable
        assert report.fit is None
