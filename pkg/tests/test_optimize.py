import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dipplan.economy import ModelConfig, PlanParams, project_model_economy
from dipplan.optimize import golden_section, grid, loss, optimize_c


@pytest.fixture(scope="module")
def model():
    cfg = ModelConfig()
    return cfg.economy(), cfg.params()


@pytest.fixture(scope="module")
def optimum(model):
    return optimize_c(*model)


def test_zero_contribution_loss_is_full_gap(model):
    e, params = model
    expected = sum(abs(1 - e.income[t] / e.gdp[t]) for t in range(1, params.T + 1))
    assert loss(0.0, e, params) == pytest.approx(expected, rel=1e-12)
    assert expected > 0


def test_loss_ignores_params_c(model):
    e, params = model
    assert loss(0.05, e, params) == loss(0.05, e, params.with_c(0.9))


def test_singular_schedule_scores_infinity(model):
    e, params = model
    assert loss(0.15, e, params) == math.inf


def test_optimum_beats_neighbours_and_grid(model, optimum):
    e, params = model
    c_star, curve = optimum
    l_star = loss(c_star, e, params)
    assert loss(c_star - 0.02, e, params) > l_star
    assert loss(c_star + 0.02, e, params) > l_star
    assert np.all(l_star <= curve.loss)


def test_unimodal_around_optimum(model, optimum):
    e, params = model
    c_star, _ = optimum
    cs = np.linspace(c_star - 0.001, c_star + 0.001, 41)
    ls = np.array([loss(c, e, params) for c in cs])
    k = int(np.argmin(ls))
    assert 0 < k < len(cs) - 1
    assert np.all(np.diff(ls[: k + 1]) < 0)
    assert np.all(np.diff(ls[k:]) > 0)


def test_curve_shape(optimum):
    _, curve = optimum
    assert len(curve.c) == 201
    assert np.all(np.diff(curve.c) > 0)
    assert np.all(curve.loss >= 0)
    assert curve.points[0] == (0.0, curve.loss[0])


def test_loss_continuous_where_finite(model, optimum):
    """No jumps between neighbouring grid points below the singular region.

    The loss falls by about 0.107 per 0.001 step from c = 0, so 0.2 flags a jump.
    """
    _, curve = optimum
    c_star, _ = optimum
    region = curve.c <= c_star + 0.01
    assert np.all(np.isfinite(curve.loss[region]))
    assert np.max(np.abs(np.diff(curve.loss[region]))) < 0.2


def test_single_point_grid(model):
    c, curve = optimize_c(*model, c_min=0.05, c_max=0.05, c_step=0.001)
    assert c == 0.05
    assert list(curve.c) == [0.05]


@pytest.mark.parametrize("bad", [dict(c_step=0.0), dict(c_min=0.1, c_max=0.05), dict(c_max=1.0), dict(c_min=-0.1)])
def test_empty_or_invalid_grid_rejected(model, bad):
    with pytest.raises(ValueError):
        optimize_c(*model, **bad)


def test_grid_points():
    np.testing.assert_allclose(grid(0.0, 0.2, 0.001)[[0, 87, -1]], [0.0, 0.087, 0.2])
    assert len(grid(0.0, 0.2, 0.001)) == 201


def test_deterministic(model):
    a = optimize_c(*model)
    b = optimize_c(*model)
    assert a[0] == b[0]
    assert np.array_equal(a[1].loss, b[1].loss)


@given(st.floats(-5, 5), st.floats(0.01, 3))
def test_golden_section_on_parabola(center, width):
    x = golden_section(lambda v: (v - center) ** 2, center - width, center + 0.7 * width, tol=1e-8)
    assert abs(x - center) < 1e-7


def test_golden_section_on_v_shape():
    x = golden_section(lambda v: abs(v - 0.0716), 0.07, 0.073, tol=1e-9)
    assert x == pytest.approx(0.0716, abs=1e-9)


def test_optimum_small_term_economy():
    e = project_model_economy(0.012, 0.006, 10)
    params = PlanParams(c=0.0, T=10, d=0.023, s=0.06)
    c, curve = optimize_c(e, params, 0.0, 0.1, 0.001)
    assert loss(c, e, params) <= np.min(curve.loss)
