from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from circlegerm.enumeration import enumerate_classes
from circlegerm.errors import InfeasibleTupleError
from circlegerm.feasibility import abs_degree
from circlegerm.realization import (
    RealizationSpec,
    bump,
    cap_l,
    eval_fA,
    min_samples,
    realization_marks,
    sample_realization,
    smooth_step,
    verify_realization,
)
from circlegerm.tuples import AstTuple, HashTuple, canonical_runs, equivalent, star_indices

TWO_PI = 2 * math.pi

SMALL_CLASSES = [c for n in (2, 4, 6) for m in range(0, 11, 2) for c in enumerate_classes(n, m).classes]


def _k_oracle(x: float) -> float:
    f = lambda s: math.exp(-1 / (s - 1) ** 2 - 1 / (s + 1) ** 2)
    total, _ = integrate.quad(f, -1, 1, epsabs=1e-14, epsrel=1e-14)
    part, _ = integrate.quad(f, -1, x, epsabs=1e-14, epsrel=1e-14)
    return part / total


class TestCap:
    def test_linear_branches(self):
        assert cap_l(-2.0) == -2.0
        assert cap_l(3.0) == -3.0

    def test_apex(self):
        assert cap_l(0.0) == pytest.approx(0.0, abs=1e-15)
        h = 1e-5
        assert abs((cap_l(h) - cap_l(-h)) / (2 * h)) < 1e-8

    def test_unique_maximum(self):
        x = np.linspace(-1.5, 1.5, 30001)
        y = cap_l(x)
        assert np.argmax(y) == 15000
        d = np.diff(y)
        assert np.all(d[:14999] > 0) and np.all(d[15001:] < 0)

    def test_bump_support(self):
        assert bump(np.array([-1.0, 1.0, 2.0])).tolist() == [0.0, 0.0, 0.0]
        assert float(bump(0.0)) == pytest.approx(math.exp(-2))

    @pytest.mark.parametrize("x", [-0.99, -0.5, -0.1234, 0.0, 0.3, 0.77, 0.999])
    def test_smooth_step_matches_adaptive_quadrature(self, x):
        assert float(smooth_step(x)) == pytest.approx(_k_oracle(x), abs=1e-12)

    def test_smooth_step_ends(self):
        assert float(smooth_step(-1.0)) == 0.0
        assert float(smooth_step(1.0)) == pytest.approx(1.0, abs=1e-13)
        assert float(smooth_step(0.0)) == pytest.approx(0.5, abs=1e-13)


class TestRealizationSpec:
    def test_partial_sums(self):
        spec = RealizationSpec.from_hash((1, 2, 1, 0))
        assert spec.X == (2, 5, 7, 8)
        assert spec.Y == (2, -1, 1, 0)
        assert spec.X[-1] == spec.m + spec.n
        assert spec.Y[-1] % spec.n == 0

    def test_infeasible(self):
        with pytest.raises(InfeasibleTupleError):
            RealizationSpec.from_hash((1, 1))

    def test_extremum_at_singular_parameter(self):
        spec = RealizationSpec.from_hash((0, 2))
        t0 = float(spec.singular_params()[0])
        h = 1e-4
        left, mid, right = eval_fA(spec, np.array([t0 - h, t0, t0 + h]))
        assert mid > left and mid > right


@pytest.mark.parametrize("runs", SMALL_CLASSES)
def test_wrap_consistency(runs):
    spec = RealizationSpec.from_hash(runs)
    a = eval_fA(spec, 0.0)
    b = eval_fA(spec, TWO_PI - 1e-12)
    assert abs(math.remainder(a - b, TWO_PI)) < 1e-9


@pytest.mark.parametrize("runs", SMALL_CLASSES)
def test_smoothness_at_piece_boundaries(runs):
    spec = RealizationSpec.from_hash(runs)
    count = 10_000
    t = np.arange(count) * (TWO_PI / count)
    f = eval_fA(spec, t)
    edges = [u for X in spec.X for u in (X - 0.5, X + 0.5)]
    worst = 0.0
    for u in edges:
        b = TWO_PI * (u - 0.5) / spec.X[-1]
        i = int(np.searchsorted(t, b))
        for j in (i - 1, i, i + 1):
            idx = np.array([j - 1, j, j + 1])
            tt = idx * (TWO_PI / count)
            v = eval_fA(spec, tt)
            worst = max(worst, abs((v[2] - v[1]) - (v[1] - v[0])))
    assert worst <= 1e-6
    assert np.all(np.isfinite(f))


@pytest.mark.parametrize("runs", SMALL_CLASSES)
def test_extremum_count(runs):
    spec = RealizationSpec.from_hash(runs)
    count = 10_000
    f = eval_fA(spec, np.arange(count + 1) * (TWO_PI / count))
    d = np.sign(np.diff(f))
    d = d[d != 0]  # a sample can land exactly on an apex
    changes = int(np.sum(d != np.roll(d, 1)))
    assert changes == spec.n


class TestSampling:
    @pytest.mark.parametrize("runs, count, winding", [((0, 2), 1024, 1), ((1, 2, 1, 0), 2048, 0), ((0, 0), 512, 0)])
    def test_winding(self, runs, count, winding):
        sampled = sample_realization(RealizationSpec.from_hash(runs), count)
        assert abs(sampled.winding) == winding
        assert np.all(np.diff(sampled.t) > 0)
        assert np.all((sampled.values >= 0) & (sampled.values < TWO_PI))

    def test_undersampling(self):
        spec = RealizationSpec.from_hash((0, 2))
        assert min_samples(spec) == 256
        with pytest.raises(ValueError):
            sample_realization(spec, 255)


class TestVerify:
    def test_fold_pair(self):
        assert equivalent(verify_realization((0, 2)), AstTuple.parse("pssp"))

    def test_four_folds(self):
        word = verify_realization((2, 0, 2, 0))
        assert word.n_singular == 4 and word.n_regular == 4

    def test_two_folds(self):
        assert verify_realization((0, 0)) == AstTuple.parse("ss")


@pytest.mark.parametrize("runs", SMALL_CLASSES)
def test_round_trip(runs):
    spec = RealizationSpec.from_hash(runs)
    marks = realization_marks(spec)
    word = verify_realization(spec)
    assert equivalent(word, marks.word())
    assert abs(marks.winding) == abs_degree(HashTuple(runs))


@pytest.mark.parametrize("runs", SMALL_CLASSES)
def test_starred_labels_agree_with_extraction(runs):
    marks = realization_marks(RealizationSpec.from_hash(runs))
    assert str(star_indices(marks.word())) == str(marks.starred())


@settings(max_examples=60)
@given(st.sampled_from(SMALL_CLASSES), st.integers(0, 7), st.booleans())
def test_round_trip_any_representative(runs, shift, flip):
    k = shift % len(runs)
    moved = runs[k:] + runs[:k]
    if flip:
        moved = moved[::-1]
    word = verify_realization(moved)
    assert canonical_runs(moved) == runs
    assert equivalent(word, verify_realization(runs))
