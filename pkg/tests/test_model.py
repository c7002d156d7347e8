import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resilience_roc import model
from resilience_roc.errors import DomainError, InfiniteTheta


def simpson(f, a, b, panels):
    # composite Simpson, panels must be even
    x = np.linspace(a, b, panels + 1)
    y = f(x)
    h = (b - a) / panels
    return h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum())


# ---- roc_value -------------------------------------------------------------

@pytest.mark.parametrize("theta,t,expected", [
    (1.0, 0.3, 0.3), (2.0, 0.5, 0.75), (2.0, 0.0, 0.0), (2.0, 1.0, 1.0),
])
def test_roc_value_examples(theta, t, expected):
    assert model.roc_value(theta, t) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("theta,t", [(0.0, 0.5), (-1.0, 0.5), (2.0, -0.1), (2.0, 1.1)])
def test_roc_value_domain(theta, t):
    with pytest.raises(DomainError):
        model.roc_value(theta, t)


@given(st.floats(1e-3, 50), st.floats(1e-3, 50),
       st.lists(st.floats(0, 1), min_size=2, max_size=20))
def test_roc_value_bounded_and_monotone(theta_a, theta_b, ts):
    ts = np.sort(np.array(ts))
    lo, hi = sorted((theta_a, theta_b))
    r_lo, r_hi = model.roc_value(lo, ts), model.roc_value(hi, ts)
    assert np.all((r_lo >= 0) & (r_lo <= 1))
    assert np.all(np.diff(r_lo) >= -1e-15)
    assert np.all(r_hi >= r_lo - 1e-15)


# ---- AUC -------------------------------------------------------------------

@pytest.mark.parametrize("theta,expected", [(2, 0.6667), (4, 0.8), (6, 0.8571)])
def test_auc_published_values(theta, expected):
    assert model.auc_from_theta(theta) == pytest.approx(expected, abs=5e-5)


def test_auc_chance():
    assert model.auc_from_theta(1.0) == 0.5


@pytest.mark.parametrize("theta", [1, 1.5, 2, 4, 6, 10])
def test_auc_matches_simpson_quadrature(theta):
    area = simpson(lambda t: model.roc_value(theta, t), 0.0, 1.0, 10_000)
    assert abs(area - model.auc_from_theta(theta)) < 1e-8


@pytest.mark.parametrize("tau,expected", [(0.5, 1.0), (0.8, 4.0), (0.75, 3.0)])
def test_theta_from_auc(tau, expected):
    assert model.theta_from_auc(tau) == pytest.approx(expected, rel=1e-14)


def test_theta_from_auc_errors():
    with pytest.raises(DomainError):
        model.theta_from_auc(0.0)
    with pytest.raises(InfiniteTheta):
        model.theta_from_auc(1.0)


@given(st.floats(1e-3, 1e3))
def test_auc_round_trip(theta):
    back = model.theta_from_auc(model.auc_from_theta(theta))
    assert abs(back - theta) <= 1e-12 * theta


# ---- Youden ----------------------------------------------------------------

@pytest.mark.parametrize("theta,expected", [(2, 0.25), (4, 0.4725), (6, 0.5824)])
def test_youden_published_values(theta, expected):
    assert model.youden_from_theta(theta) == pytest.approx(expected, abs=5e-5)


def test_youden_at_one_and_near_one():
    assert model.youden_from_theta(1.0) == 0.0
    # continuous from the right
    assert 0 < model.youden_from_theta(1 + 1e-6) < 1e-5
    with pytest.raises(DomainError):
        model.youden_from_theta(0.9)


@pytest.mark.parametrize("theta", [1.5, 2, 4, 6])
def test_youden_matches_grid_maximum(theta):
    t = np.linspace(0, 1, 100_001)
    brute = np.max(model.roc_value(theta, t) - t)
    assert abs(model.youden_from_theta(theta) - brute) < 1e-6


def test_cutpoint_theta_two():
    fpr, tpr = model.optimal_cutpoint(2.0)
    assert fpr == pytest.approx(0.5, abs=1e-15)
    assert tpr == pytest.approx(0.75, abs=1e-15)
    grid = np.round(np.arange(1001) * 0.001, 3)
    assert grid[np.argmax(model.roc_value(2.0, grid) - grid)] == 0.5


@pytest.mark.parametrize("theta", [1.2, 2, 4, 6, 25])
def test_cutpoint_consistent_with_youden(theta):
    fpr, tpr = model.optimal_cutpoint(theta)
    assert tpr - fpr == pytest.approx(model.youden_from_theta(theta), abs=1e-14)
    assert model.roc_value(theta, fpr) == pytest.approx(tpr, abs=1e-14)


def test_cutpoint_theta_four_published():
    fpr, tpr = model.optimal_cutpoint(4.0)
    assert abs((tpr - fpr) - 0.4725) < 5e-5


def test_cutpoint_needs_theta_above_one():
    with pytest.raises(DomainError):
        model.optimal_cutpoint(1.0)


@pytest.mark.parametrize("theta", [1.0001, 1.5, 2, 4, 6])
def test_youden_derivative_finite_difference(theta):
    h = 1e-6
    fd = (model.youden_from_theta(theta + h) - model.youden_from_theta(theta - h)) / (2 * h)
    assert model.youden_derivative(theta) == pytest.approx(fd, rel=1e-6)


def test_youden_derivative_limit_at_one():
    assert model.youden_derivative(1.0) == pytest.approx(math.exp(-1), rel=1e-12)


# ---- asymptotic variances ----------------------------------------------------

def test_sigma2_theta_examples():
    assert model.sigma2_theta(2, 0.5) == pytest.approx(2 * (2 * 9 / 4) + 2 * (4 * 9 / 5))
    assert model.sigma2_theta(2, 0.5) == pytest.approx(23.4)
    assert model.sigma2_theta(1, 0.5) == pytest.approx(16 / 3)


def test_sigma2_tau_examples():
    assert model.sigma2_tau(1, 0.5) == pytest.approx(1 / 3)
    assert model.sigma2_tau(2, 0.5) == pytest.approx(23.4 / 81)


@given(st.floats(1e-3, 100), st.floats(0.01, 0.99))
def test_delta_method_identity(theta, p):
    lhs = model.sigma2_tau(theta, p) * (1 + theta) ** 4
    assert lhs == pytest.approx(model.sigma2_theta(theta, p), rel=1e-13)


@pytest.mark.parametrize("bad", [0.0, 1.0, -0.2])
def test_sigma2_rejects_bad_proportion(bad):
    with pytest.raises(DomainError):
        model.sigma2_theta(2, bad)


@pytest.mark.parametrize("theta", [1.0, 2.0, 4.0])
def test_projection_variances_by_monte_carlo(theta):
    """sigma2_10 = Cov(I(X<Y), I(X'<Y)) and sigma2_01 = Cov(I(X<Y), I(X<Y')),
    with F0 uniform and Y = U**(1/theta)."""
    rng = np.random.default_rng(7)
    k = 400_000
    x, x2 = rng.random(k), rng.random(k)
    y, y2 = rng.random(k) ** (1 / theta), rng.random(k) ** (1 / theta)
    tau = theta / (1 + theta)
    for prod, target in (((x < y) & (x2 < y), model.sigma2_10(theta)),
                         ((x < y) & (x < y2), model.sigma2_01(theta))):
        est = prod.mean() - tau**2
        se = prod.std() / math.sqrt(k)
        assert abs(est - target) < 3 * se
