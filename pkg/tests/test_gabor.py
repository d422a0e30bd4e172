import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tfrunner.errors import DetNotOne, InputError
from tfrunner.gabor import (
    FOURIER_ROTATION,
    PointSet,
    TFPoint,
    apply_metaplectic,
    dependence_residual,
    gram_matrix,
    independence_score,
    normalize_origin,
    tf_shift_eval,
)
from tfrunner.models import ExpPure, Gaussian, HalfLine, OneSidedExpDecay, Tabulated, TwoPlusCos, model_from_json


def counterexample(a):
    return PointSet([(0, 0), (0, -1), (0, 1), (a, 0), (a, -1), (a, 1)])


def random_points(rng, k=4, box=2.0, sep=0.1):
    while True:
        p = rng.uniform(-box, box, size=(k, 2))
        d = np.linalg.norm(p[:, None] - p[None], axis=-1) + np.eye(k) * 9
        if d.min() >= sep:
            return PointSet(map(tuple, p))


class TestModels:
    @pytest.mark.parametrize(
        "f",
        [Gaussian(0.3, 1.2), OneSidedExpDecay(0.5, 2.0), OneSidedExpDecay(0.5, 1.0, None), TwoPlusCos(0.1), HalfLine(1.0, "gauss"), ExpPure(2.0, 0.7)],
    )
    def test_shift_and_json(self, f):
        t = np.linspace(-3, 3, 31)
        assert np.allclose(f.shifted(0.7)(t), f(t - 0.7))
        assert model_from_json(f.to_json()) == f
        if f.ultimately_positive:
            s = np.linspace(f.onset, f.onset + 5, 50)
            assert np.all(f(s) > 0)

    def test_tabulated(self):
        f = Tabulated((0, 1, 2), (0, 1, 0))
        assert f(0.5) == pytest.approx(0.5) and f(5) == 0
        assert not f.ultimately_positive

    def test_bad_json(self):
        with pytest.raises(InputError):
            model_from_json({"kind": "nope"})
        with pytest.raises(InputError):
            model_from_json({"kind": "gaussian", "sigma": 2})

    def test_flags(self):
        assert not TwoPlusCos().square_integrable
        assert OneSidedExpDecay(left_rate=None).half_line
        assert not OneSidedExpDecay().half_line


class TestPointSet:
    def test_distinct(self):
        with pytest.raises(InputError):
            PointSet([(0, 0), (0.0, 0.0)])

    def test_tf_shift(self):
        v = tf_shift_eval(TwoPlusCos(), TFPoint(0, 1), 0.25)
        assert v == pytest.approx(2j)

    def test_normalize_examples(self):
        shift, pts, _ = normalize_origin(Gaussian(), PointSet([(1, 2), (3, 4)]))
        assert (shift.tau, shift.w) == (1, 2)
        assert [(p.tau, p.w) for p in pts] == [(0, 0), (2, 2)]
        pts0 = PointSet([(0, 0), (1, 3)])
        assert normalize_origin(Gaussian(), pts0)[1] == pts0

    def test_metaplectic(self):
        pts = PointSet([(1, 0), (0.5, 2)])
        assert apply_metaplectic(pts, np.eye(2)) == pts
        assert [(p.tau, p.w) for p in apply_metaplectic(PointSet([(1, 0)]), FOURIER_ROTATION)] == [(0, 1)]
        for c in (-3.0, 0.0, 2.5):
            apply_metaplectic(pts, [[1, 0], [c, 1]])
        with pytest.raises(DetNotOne):
            apply_metaplectic(pts, [[2, 0], [0, 1]])


class TestScore:
    @pytest.mark.parametrize("a", ["0.3", "0.7071067811865476", "2.7"])
    def test_counterexample_null_vector(self, oracle, a):
        s = independence_score(TwoPlusCos(), counterexample(float(a)))
        assert s.dependent and s.min_eigenvalue <= 1e-8 * s.trace
        ref = np.array([complex(*c) for c in oracle["counterexample_null"][a]])
        # equal up to a unimodular factor
        overlap = abs(np.vdot(ref, s.null_vector))
        assert overlap == pytest.approx(1.0, abs=1e-6)
        assert s.residual <= 1e-6

    def test_counterexample_rank(self, oracle):
        # 6 functions inside a 5-dimensional trigonometric space
        assert oracle["counterexample_rank"] == 5

    def test_null_residual_consistency(self):
        s = independence_score(TwoPlusCos(), counterexample(0.3))
        assert s.residual <= math.sqrt(max(s.min_eigenvalue, 0.0)) * (1 + 1e-6) + 1e-9

    def test_hermitian_psd(self):
        rng = np.random.default_rng(3)
        for f in (Gaussian(), OneSidedExpDecay(), HalfLine()):
            for _ in range(5):
                g = gram_matrix(f, random_points(rng), 16, 2**12)
                assert np.allclose(g, g.conj().T)
                ev = np.linalg.eigvalsh(g)
                assert ev[0] >= -1e-10 * np.trace(g).real

    def test_translation_invariance(self):
        rng = np.random.default_rng(5)
        f = Gaussian(0.2)
        for _ in range(5):
            pts = random_points(rng)
            shift, pts2, f2 = normalize_origin(f, pts)
            a = independence_score(f, pts).min_eigenvalue
            b = independence_score(f2, pts2).min_eigenvalue
            assert b == pytest.approx(a, rel=1e-9)

    def test_refinement_stability(self):
        rng = np.random.default_rng(7)
        for f in (Gaussian(), OneSidedExpDecay()):
            pts = random_points(rng)
            a = independence_score(f, pts, 16, 2**13).min_eigenvalue
            b = independence_score(f, pts, 16, 2**14).min_eigenvalue
            assert abs(a - b) <= 0.01 * abs(b)

    def test_half_line_positive(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            s = independence_score(HalfLine(profile="gauss"), random_points(rng))
            assert s.min_eigenvalue > 0 and not s.dependent


class TestResidual:
    def test_true_null_vector(self):
        f = TwoPlusCos()
        pts = counterexample(0.3)
        n = independence_score(f, pts).null_vector
        c = -n[1:] / n[0]
        t = np.linspace(-5, 5, 101)
        assert np.max(dependence_residual(f, pts, c, t)) <= 1e-9

    def test_zero_coeffs(self):
        f = Gaussian()
        assert dependence_residual(f, [(0, 0), (1, 1)], [0.0], 0.3) == pytest.approx(f(0.3))

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), min_size=3, max_size=3), st.floats(-2, 2))
    def test_generic_positive(self, c, t):
        r = dependence_residual(Gaussian(), [(0.5, 1.0), (1.0, 2 ** 0.5), (-0.7, 0.3)], c, t)
        assert r >= 0
