import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tfrunner.errors import InputError, PreconditionNotMet, SmallRelation
from tfrunner.gabor import PointSet, TFPoint, independence_score
from tfrunner.hrt import (
    Verdict,
    case2_claim_refute,
    case3_reduce,
    case3_refute,
    case4_trig_poly_check,
    case5_feasibility,
    case5_refute,
    classify_4pt,
    khinchin_average_check,
    perturbation_phis,
    refute_dependence,
    verify_4pt,
    verify_theorem_1_4,
)
from tfrunner.models import ExpPure, Gaussian, HalfLine, OneSidedExpDecay, TwoPlusCos

F = OneSidedExpDecay()


def rand_c(rng, k):
    return rng.normal(size=k) + 1j * rng.normal(size=k)


def pts(taus, omegas):
    return PointSet([TFPoint(t, w) for t, w in zip(taus, omegas)])


def assert_reverified(report):
    assert report.verdict is Verdict.REFUTED, report.details
    assert report.margin > 0
    assert report.reverify() > report.margin / 2 > 0
    assert report.original_residual > 0


class TestClassify:
    @pytest.mark.parametrize(
        "omegas,tag,sub",
        [
            ((0, 0, 0, 0), "Case4", None),
            ((0, 0, 1, 1), "Case5", "Case5Rational"),
            ((0, 1, 2, 3), "Case1", "Case1Extremal123"),
            ((0, 1, 2, 4), "Case1", "Case1Generic"),
            ((0, 1, 2 ** 0.5, 3 ** 0.5), "Case1", "Case1AffineDimHigh"),
            ((0, 0, 1, 2), "Case2", None),
            ((0, 1, 1, 2), "Case2", None),
            ((0, 1, 2, 2), "Case2", None),
            ((0, 0, 0, 1), "Case3", None),
            ((0, 1, 1, 1), "Case3", None),
        ],
    )
    def test_patterns(self, omegas, tag, sub):
        c = classify_4pt(pts([0, 0.4, 0.9, 1.3], omegas))
        assert (c.tag, c.subcase) == (tag, sub)

    def test_irrational_case5(self):
        c = classify_4pt(pts([0, 1, 0, 2 ** 0.5], [0, 0, 1, 1]))
        assert c.subcase == "Case5Irrational"

    def test_exact_equality(self, B):
        r2 = B.unit("sqrt2")
        c = classify_4pt(pts([0, 1, 2, 3], [r2 * 0, r2, r2, r2 + 1]))
        assert c.tag == "Case2"

    def test_needs_four(self):
        with pytest.raises(InputError):
            classify_4pt(pts([0, 1], [0, 0]))
        with pytest.raises(InputError):
            classify_4pt([(0, 0), (0, 0), (1, 1), (2, 2)])

    @settings(max_examples=60, deadline=None)
    @given(
        st.lists(st.sampled_from([0.0, 1.0, 2.0, 3.0, 2 ** 0.5]), min_size=4, max_size=4),
        st.permutations(range(4)),
        st.floats(-5, 5),
    )
    def test_invariances(self, omegas, perm, shift):
        taus = [0.0, 0.7, 1.1, 1.9]
        base = classify_4pt(pts(taus, omegas))
        permuted = classify_4pt(pts([taus[i] for i in perm], [omegas[i] for i in perm]))
        assert permuted.tag == base.tag
        # shift by an exactly representable amount keeps float equalities intact
        s = round(shift * 8) / 8
        assert classify_4pt(pts(taus, [w + s for w in omegas])).tag == base.tag


class TestPerturbation:
    def test_example(self, oracle):
        r = perturbation_phis((1, 1, -1), 0.4)
        assert r.phis == pytest.approx([float(Fraction(x)) for x in oracle["phis_111"]])
        assert sum(p * f for p, f in zip((1, 1, -1), r.phis)) == pytest.approx(-0.4)

    def test_zero_alpha(self):
        assert perturbation_phis((1, 2), 0.0).phis == (0.0, 0.0)
        assert perturbation_phis((2, 1, 1), 0.0).phis == (0.0, 0.0, 0.0)

    def test_small_relation(self):
        with pytest.raises(SmallRelation):
            perturbation_phis((1, -1), 0.3)
        with pytest.raises(InputError):
            perturbation_phis((0, 0), 0.3)

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(-4, 4), min_size=1, max_size=5).filter(lambda p: sum(map(abs, p)) >= 3), st.floats(-10, 10))
    def test_postconditions(self, p, alpha):
        r = perturbation_phis(p, alpha)
        assert max(abs(x) for x in r.phis) < 0.25
        assert r.alpha_residual <= 1e-12


class TestRefuteDependence:
    def test_generic_case1(self):
        rng = np.random.default_rng(0)
        for _ in range(5):
            c = rand_c(rng, 3)
            rep = refute_dependence(F, pts([0.3, 0.8, 1.2], [1, 2, 4]), c)
            assert_reverified(rep)

    def test_extremal_takes_spectator(self):
        rng = np.random.default_rng(1)
        for _ in range(5):
            rep = refute_dependence(F, pts([0.3, 0.8, 1.2], [1, 2, 3]), rand_c(rng, 3))
            assert rep.details["branch"].startswith("spectator")
            assert_reverified(rep)

    @pytest.mark.parametrize("mode", ["real", "imag"])
    def test_modes(self, mode):
        rep = refute_dependence(F, pts([0.3, 0.8, 1.2], [1, 2 ** 0.5, 3 ** 0.5]), [1 + 1j, -2, 0.5j], mode)
        assert rep.details["branch"].endswith(mode)
        assert_reverified(rep)

    def test_zero_coefficient(self):
        with pytest.raises(InputError):
            refute_dependence(F, pts([0.3, 0.8, 1.2], [1, 2, 4]), [1, 0, 1])

    def test_window_start(self):
        rep = refute_dependence(F, pts([0.3, 0.8], [1, 2 ** 0.5]), [1, 1j], window_start=50.0)
        assert rep.witness_time >= 50.0
        assert_reverified(rep)


class TestCase2:
    def test_irrational(self):
        rng = np.random.default_rng(2)
        for _ in range(5):
            rep = case2_claim_refute(F, pts([0, 0.6, 0.2, 1.1], [0, 0, 1, 2 ** 0.5]), rand_c(rng, 4))
            assert_reverified(rep)
            s = rep.details["sines"]
            assert max(s) <= -0.5 + 1e-6 or rep.details["method"].startswith("sign_window")

    def test_conjugation_logged(self):
        # d = a1 / a0 with negative imaginary part forces the conjugate relation
        rep = case2_claim_refute(F, pts([0, 0.6, 0.2, 1.1], [0, 0, 1, 2]), [1, -1j, 1, 1])
        assert rep.details["wlog_conjugated"] is True
        assert_reverified(rep)

    def test_middle_pair(self):
        rep = case2_claim_refute(F, pts([0, 0.6, 0.2, 1.1], [0, 1, 1, 3]), [1, 2, 1j, -1])
        assert_reverified(rep)

    def test_half_line(self):
        rep = case2_claim_refute(HalfLine(), pts([0, 0.6, 0.2, 1.1], [0, 0, 1, 2]), [1, 1, 1, 1])
        assert rep.details["branch"] == "half_line_shortcut"
        assert_reverified(rep)

    def test_wrong_pattern(self):
        with pytest.raises(InputError):
            case2_claim_refute(F, pts([0, 0.6, 0.2, 1.1], [0, 1, 2, 3]), [1, 1, 1, 1])


class TestCase3:
    def test_reduced_points(self):
        red = case3_reduce(pts([0, 0.4, 0.9, 0.5], [0, 0, 0, 1]), [1, 0.3 + 0.2j, -0.5j, 1 + 1j])
        assert [(p.tau, p.w) for p in red.points] == [(0.4, 0.0), (0.9, 0.0), (0.5, 1.0), (0.5, -1.0)]
        assert not red.analytic
        # the reduced combination equals Im R on a grid
        t = np.linspace(1, 4, 50)
        from tfrunner.gabor import combination_values

        lhs = combination_values(red.system.f, red.points, red.coeffs, t)
        assert np.allclose(lhs, np.imag(red.system.value(t)))

    def test_analytic_branch(self):
        a = [1, -0.3, 0.7, 1 + 1j]
        red = case3_reduce(pts([0, 0.4, 0.9, 0.5], [0, 0, 0, 1]), a)
        assert red.analytic
        rep = case3_refute(F, pts([0, 0.4, 0.9, 0.5], [0, 0, 0, 1]), a)
        assert rep.details["branch"] == "case3_analytic"
        assert_reverified(rep)

    def test_random(self):
        rng = np.random.default_rng(4)
        for _ in range(5):
            rep = case3_refute(F, pts([0, 0.4, 0.9, 0.5], [0, 0, 0, 1]), rand_c(rng, 4))
            assert_reverified(rep)

    def test_top_triple(self):
        rep = verify_4pt(F, pts([0, 0.4, 0.9, 0.5], [0, 1, 1, 1]), [1, 1j, -1, 2])
        assert rep.case.tag == "Case3"
        assert_reverified(rep)


class TestCase4:
    def test_constant(self):
        r = case4_trig_poly_check([1], [0])
        assert r.is_nonvanishing and r.max_modulus == pytest.approx(1)

    def test_difference(self):
        r = case4_trig_poly_check([1, -1], [0, 1])
        assert r.is_nonvanishing and r.max_modulus == pytest.approx(2, abs=1e-3)

    def test_dominant(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            c = rand_c(rng, 4)
            r = case4_trig_poly_check(c, rng.uniform(-2, 2, 4))
            k = np.argmax(np.abs(c))
            bound = abs(c[k]) - (np.abs(c).sum() - abs(c[k]))
            assert r.is_nonvanishing and r.max_modulus >= max(bound, 1e-6) - 1e-9

    def test_zero(self):
        with pytest.raises(InputError):
            case4_trig_poly_check([0, 0], [0, 1])

    def test_refute(self):
        rep = verify_4pt(F, pts([0, 0.4, 0.9, 1.5], [0, 0, 0, 0]), [1, -1, 0.5j, 2])
        assert rep.case.tag == "Case4"
        assert_reverified(rep)


class TestCase5:
    def test_feasibility_examples(self, oracle):
        ok = case5_feasibility(0.25, 0.5, 1, 2)
        assert ok.feasible and ok.C0 == pytest.approx(0.5)
        assert abs(oracle["case5_gap"]["0.25,0.5,1,2"]) < 1e-10
        bad = case5_feasibility(0.5, 0.5, 1, 3)
        assert not bad.feasible and bad.gap == pytest.approx(oracle["case5_gap"]["0.5,0.5,1,3"])
        sym = case5_feasibility(0.3, 0.3, 1.5, 1.5)
        assert sym.feasible and sym.C0 == pytest.approx(0.3 ** (1 / 1.5))

    def test_infeasible_tags(self):
        assert case5_feasibility(1.5, 0.5, 1, 2).reason == "not square-integrable"
        irr = case5_feasibility(0.5, 0.4, 2 ** 0.5, 1)
        assert irr.tag == "C^{-n}c^m>1"
        g = irr.growth
        assert g["shift"] > 0 and g["log_factor"] > 0
        with pytest.raises(InputError):
            case5_feasibility(-0.5, 0.5, 1, 1)

    @settings(max_examples=100, deadline=None)
    @given(st.floats(0.05, 0.95), st.floats(0.1, 3), st.floats(0.1, 3))
    def test_feasible_model(self, C0, tau, tau1):
        r = case5_feasibility(C0**tau1, C0**tau, tau, tau1)
        assert r.feasible
        assert abs(r.C0**tau - C0**tau) <= 1e-10 and abs(r.C0**tau1 - C0**tau1) <= 1e-10

    def test_khinchin_n1(self, oracle):
        k = khinchin_average_check(0.5, 2 ** 0.5, 1, N=1)
        ref = oracle["khinchin_N1"]
        assert k.empirical_average == pytest.approx(ref["value"], rel=1e-12)
        assert k.integral == pytest.approx(ref["integral"], rel=1e-12)
        assert k.deviation == pytest.approx(ref["deviation"], rel=1e-10)

    def test_khinchin_convergence(self):
        a = khinchin_average_check(0.5, 2 ** 0.5, 1, N=10**4)
        b = khinchin_average_check(0.5, 2 ** 0.5, 1, N=10**5)
        assert b.deviation <= 5e-3 and b.deviation <= a.deviation
        assert not b.rational_ratio

    def test_khinchin_rational(self):
        k = khinchin_average_check(0.5, 0.5, 1, N=10**5, x=0.25)
        assert k.rational_ratio
        orbit = np.mean([0.5 ** (2 * ((0.25 + n * 0.5) % 1)) for n in range(2)])
        assert k.empirical_average == pytest.approx(orbit, rel=1e-9)
        assert k.deviation > 1e-3

    def base(self):
        return pts([0, 1.0, 0.2, 0.9], [0, 0, 1, 1])

    def test_generic_branch(self):
        rep = case5_refute(F, self.base(), [1, 0.5, 1, 1j])
        assert rep.details["branch"] == "case5_generic"
        assert_reverified(rep)

    def test_antipodal_branch(self):
        rep = case5_refute(F, self.base(), [1, 1j, 1, -2])
        assert rep.details["branch"] == "case5_antipodal"
        assert_reverified(rep)

    def test_functional_branch(self):
        rep = case5_refute(F, self.base(), [1, -0.5, 1, -2])
        assert rep.details["branch"] == "case5_functional"
        assert "feasibility" in rep.details
        assert_reverified(rep)

    def test_exponential_identity(self):
        # f = C0^t satisfies both functional equations: a genuine (non-L^2) dependence
        f = ExpPure(1.0, 0.5)
        rep = verify_4pt(f, pts([0, 1, 0.5, 1.5], [0, 0, 1, 1]), [1, -0.5, 1, -0.5])
        assert rep.verdict is Verdict.DEPENDENT


class TestSingleRelation:
    def examples(self, B):
        one, r2, r3 = B.unit("1"), B.unit("sqrt2"), B.unit("sqrt3")
        z = one * 0
        return {
            "independent": [z, one, r2, r3],
            "perturbation": [z, one, r2, one + r2],
            "reduction": [z, z, r2, r3],
        }

    @pytest.mark.parametrize("name", ["independent", "perturbation", "reduction"])
    def test_branches(self, B, name):
        rng = np.random.default_rng(8)
        oms = self.examples(B)[name]
        for _ in range(5):
            rep = verify_theorem_1_4(F, pts([0, 0.3, 0.7, 1.1], oms), rand_c(rng, 4))
            assert name in rep.details["branch"]
            assert_reverified(rep)

    def test_precondition(self, B):
        z = B.rational(0)
        with pytest.raises(PreconditionNotMet):
            verify_theorem_1_4(F, pts([0, 0.3, 0.7, 1.1], [z, z, z, B.unit("sqrt2")]), [1, 1, 1, 1])

    def test_five_points(self, B):
        one, r2, r3 = B.unit("1"), B.unit("sqrt2"), B.unit("sqrt3")
        oms = [one * 0, one, r2, r3, one + r2]
        rep = verify_theorem_1_4(F, pts([0, 0.3, 0.7, 1.1, 0.5], oms), [1, 1j, -1, 0.5, 2])
        assert_reverified(rep)

    @pytest.mark.parametrize("a", [0.3, 1 / 2 ** 0.5, 2.7])
    def test_counterexample_never_refuted(self, a):
        p = PointSet([(0, 0), (0, -1), (0, 1), (a, 0), (a, -1), (a, 1)])
        rep = verify_theorem_1_4(TwoPlusCos(), p)
        assert rep.verdict is Verdict.DEPENDENT
        assert rep.details["gram_dependent"]


class TestVerify4pt:
    def test_gaussian_cross_check(self):
        rng = np.random.default_rng(9)
        for _ in range(10):
            p = PointSet(map(tuple, rng.uniform(-2, 2, (4, 2))))
            rep = verify_4pt(Gaussian(), p)
            score = independence_score(Gaussian(), p)
            assert not score.dependent
            assert_reverified(rep)

    def test_trimmed_counterexample(self):
        p = PointSet([(0, 0), (0, -1), (0.3, 0), (0.3, 1)])
        score = independence_score(TwoPlusCos(), p)
        assert not score.dependent
        rep = verify_4pt(TwoPlusCos(), p)
        assert rep.verdict is not Verdict.DEPENDENT

    def test_half_line(self):
        rep = verify_4pt(HalfLine(), pts([0, 0.5, 0.9, 1.3], [0, 1, 2, 3]), [1, 2, 3, 4])
        assert rep.details["branch"] == "half_line_shortcut"
        assert_reverified(rep)

    def test_zero_coefficients_reduce(self):
        rep = verify_4pt(F, pts([0, 0.5, 0.9, 1.3], [0, 1, 2, 3]), [1, 0, 2j, 0])
        assert rep.details["dropped_zero_coefficients"] == 2
        assert_reverified(rep)

    def test_not_ultimately_positive(self):
        from tfrunner.models import Tabulated

        with pytest.raises(PreconditionNotMet):
            verify_4pt(Tabulated((0, 1, 2), (0, 1, 0)), pts([0, 0.5, 0.9, 1.3], [0, 1, 2, 3]), [1, 1, 1, 1])

    def test_report_json(self, validate):
        rep = verify_4pt(F, pts([0, 0.5, 0.9, 1.3], [0, 1, 2, 3]), [1, 1j, -1, 2])
        validate(rep.to_json(), "witness_report")

    @settings(max_examples=25, deadline=None)
    @given(
        st.lists(st.sampled_from([0.0, 1.0, 2.0, 2 ** 0.5]), min_size=4, max_size=4),
        st.lists(st.integers(-15, 15), min_size=4, max_size=4, unique=True).map(lambda v: [x / 10 for x in v]),
        st.lists(st.tuples(st.floats(-2, 2), st.floats(-2, 2)).filter(lambda z: abs(complex(*z)) > 0.05), min_size=4, max_size=4),
    )
    def test_refutations_reverify(self, omegas, taus, coeffs):
        rep = verify_4pt(F, pts(taus, omegas), [complex(*z) for z in coeffs])
        assert rep.verdict is not Verdict.DEPENDENT
        if rep.verdict is Verdict.REFUTED:
            assert rep.reverify() > rep.margin / 2 > 0
