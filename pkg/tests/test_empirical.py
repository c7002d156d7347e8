import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from resilience_roc.empirical import (StepFunction, TwoSampleData, combined_knots,
                                      dominance_check, ecdf, empirical_roc,
                                      empirical_roc_arrays, empirical_roc_on_grid,
                                      loglog_diagnostics, loglog_series, pooled_ecdf, roc_area,
                                      rojo_pair)
from resilience_roc.errors import DegenerateSeries, InvalidDataError
from resilience_roc.estimators import mw_auc

from conftest import random_fixture

samples = st.lists(st.integers(-5, 5).map(float), min_size=1, max_size=15)


def test_ecdf_examples():
    assert ecdf([1, 2, 3])(2) == pytest.approx(2 / 3)
    assert ecdf([1, 1, 2])(1) == pytest.approx(2 / 3)
    f = ecdf([5])
    assert f(4.9) == 0.0 and f(5) == 1.0
    assert ecdf([1, 1, 2]).knots.tolist() == [1.0, 2.0]


def test_ecdf_empty():
    with pytest.raises(InvalidDataError):
        ecdf([])


def test_two_sample_validation():
    with pytest.raises(InvalidDataError):
        TwoSampleData([], [1.0])
    with pytest.raises(InvalidDataError):
        TwoSampleData([1.0, math.nan], [1.0])


def test_pooled_ecdf_examples(fixture_data):
    p = pooled_ecdf(fixture_data)
    assert p(2.5) == 0.5
    assert pooled_ecdf(TwoSampleData([1.0], [2.0]))(1.5) == 0.5


@given(samples, samples)
def test_pooled_is_ecdf_of_concatenation(x, y):
    data = TwoSampleData(x, y)
    knots = combined_knots(data)
    np.testing.assert_allclose(pooled_ecdf(data)(knots), ecdf(x + y)(knots), atol=1e-15)


def test_pooled_identical_samples():
    data = TwoSampleData([1.0, 2.0, 2.0], [1.0, 2.0, 2.0])
    k = combined_knots(data)
    np.testing.assert_allclose(pooled_ecdf(data)(k), ecdf(data.x)(k))


def test_rojo_pair_examples(fixture_data, reversed_data):
    pair = rojo_pair(fixture_data)
    assert pair.f0mn(1.5) == 0.5 and pair.fmn(1.5) == 0.0
    pair = rojo_pair(reversed_data)
    assert pair.f0mn(1.5) == 0.25 and pair.fmn(1.5) == 0.25


@given(samples, samples)
def test_rojo_ordering_invariant(x, y):
    data = TwoSampleData(x, y)
    pair = rojo_pair(data)
    k = combined_knots(data)
    f0, p, f = pair.f0mn(k), pair.pmn(k), pair.fmn(k)
    assert np.all(f0 >= p) and np.all(p >= f)
    np.testing.assert_array_equal(f0, np.maximum(ecdf(x)(k), p))
    np.testing.assert_array_equal(f, np.minimum(ecdf(y)(k), p))


@given(samples, samples)
def test_rojo_leaves_ordered_data_unchanged(x, y):
    data = TwoSampleData(x, y)
    k = combined_knots(data)
    f0, fn = ecdf(x)(k), ecdf(y)(k)
    if np.all(f0 >= fn):
        pair = rojo_pair(data)
        np.testing.assert_allclose(pair.f0mn(k), f0, atol=1e-15)
        np.testing.assert_allclose(pair.fmn(k), fn, atol=1e-15)


def test_rojo_identical_samples():
    data = TwoSampleData([1.0, 2.0], [1.0, 2.0])
    pair = rojo_pair(data)
    k = combined_knots(data)
    np.testing.assert_array_equal(pair.f0mn(k), pair.fmn(k))
    np.testing.assert_array_equal(pair.f0mn(k), pair.pmn(k))


def test_empirical_roc_examples(fixture_data):
    pts = empirical_roc(fixture_data)
    assert pts[0] == (1.0, 1.0) and pts[-1] == (0.0, 0.0)
    assert (0.5, 0.5) in pts
    sep = empirical_roc(TwoSampleData([1.0, 2.0], [3.0, 4.0]))
    assert (0.0, 1.0) in sep


def test_empirical_roc_identical_hugs_diagonal():
    x = np.arange(10.0)
    pts = np.array(empirical_roc(TwoSampleData(x, x)))
    assert np.all(np.abs(pts[:, 0] - pts[:, 1]) <= 1 / 10 + 1e-15)


def test_empirical_roc_staircase_steps():
    rng = np.random.default_rng(3)
    data = TwoSampleData(rng.normal(size=7), rng.normal(size=5))
    fpr, tpr = empirical_roc_arrays(data)
    assert np.all(np.diff(fpr) <= 0) and np.all(np.diff(tpr) <= 0)
    # untied data: every step moves one observation of one group
    steps = np.abs(np.diff(fpr)) * 7 + np.abs(np.diff(tpr)) * 5
    np.testing.assert_allclose(steps, 1.0)


def test_empirical_roc_area_equals_midrank_mw(rng):
    for _ in range(100):
        data = random_fixture(rng, ties=bool(rng.integers(2)))
        fpr, tpr = empirical_roc_arrays(data)
        assert abs(roc_area(fpr, tpr) - mw_auc(data).tau) < 1e-12


def test_empirical_roc_on_grid(fixture_data):
    t = np.linspace(0, 1, 1001)
    r = empirical_roc_on_grid(fixture_data, t)
    assert r[0] == 0.0 and r[-1] == 1.0
    assert np.all(np.diff(r) >= 0)
    # staircase vertices (1,1), (0.5,1), (0.5,0.5), (0,0.5), (0,0)
    assert r[500] == 1.0 and r[499] == 0.5 and r[1] == 0.5


def test_loglog_examples():
    f = StepFunction([1.0, 2.0], [math.exp(-1), 1.0])
    with pytest.raises(DegenerateSeries):
        loglog_series(f)
    s = loglog_series(ecdf([1, 2, 3, 4]))
    assert len(s.points) == 3
    np.testing.assert_allclose(s.value, np.log(-np.log([0.25, 0.5, 0.75])))
    g = StepFunction([1.0, 2.0, 3.0], [0.2, math.exp(-1), 1.0])
    assert loglog_series(g).value[1] == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("theta", [0.5, 2.0, 3.7])
def test_loglog_power_shift(theta):
    knots = np.arange(1.0, 9.0)
    base = np.array([0.05, 0.1, 0.2, 0.35, 0.5, 0.7, 0.9, 1.0])
    a = loglog_series(StepFunction(knots, base))
    b = loglog_series(StepFunction(knots, base**theta))
    np.testing.assert_allclose(b.value - a.value, math.log(theta), atol=1e-12)


def test_dominance_examples(fixture_data, reversed_data):
    rep = dominance_check(fixture_data)
    assert rep.fraction_satisfied == 1.0 and rep.max_violation == 0.0
    rep = dominance_check(reversed_data)
    assert rep.max_violation == 0.5
    same = TwoSampleData([1.0, 2.0], [1.0, 2.0])
    assert dominance_check(same).fraction_satisfied == 1.0


def test_loglog_diagnostics_identical_samples():
    x = np.arange(20.0)
    diag = loglog_diagnostics(TwoSampleData(x, x))
    assert diag.constancy_score == pytest.approx(0.0, abs=1e-12)
    assert diag.mean_difference == pytest.approx(0.0, abs=1e-12)


def test_loglog_diagnostics_resilience_data():
    # F0 uniform, F = F0**3: log-log curves differ by log 3. The ECDF error is
    # strongly correlated across knots, so size n for a ~0.008 sd on the centre.
    rng = np.random.default_rng(11)
    u, v = rng.random(30_000), rng.random(30_000)
    diag = loglog_diagnostics(TwoSampleData(u, v ** (1 / 3)))
    t = np.asarray(diag.difference_t)
    centre = (t > 0.5) & (t < 0.95)
    assert np.median(diag.difference[centre]) == pytest.approx(math.log(3), abs=0.04)
