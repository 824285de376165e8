import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from dipplan.economy import EconomyPath, ModelConfig, PlanParams, project_model_economy
from dipplan.schedule import (
    SingularScheduleError,
    alpha,
    implied_holdings,
    payout_from_alpha,
    solve_schedule,
)
from oracles import schedule_by_bisection


def test_implied_holdings_examples():
    assert implied_holdings(1.2, 1.0, 0.5, 0.0) == pytest.approx(0.4, abs=1e-15)
    assert implied_holdings(1.0, 1.0, 0.3, 0.02) == 0.0
    assert implied_holdings(1.024, 1.012, 0.977, 0.023) == pytest.approx(0.012, abs=1e-15)


def test_implied_holdings_singular():
    with pytest.raises(SingularScheduleError):
        implied_holdings(1.2, 1.0, -0.02, 0.02)


def test_alpha_examples():
    # gap_t = 0.1, gap_next = 0.2
    assert alpha(1.1, 1.0, 1.2, 1.0, 1.0, 0.0, 0.0, 0.0) == pytest.approx(2.0, abs=1e-12)
    assert alpha(1.1, 1.0, 1.0, 1.0, 0.7, 0.0, 0.05, 0.01) == 0.0
    assert alpha(1.1, 1.0, 1.11, 1.0, 1.0, 0.0, 0.1, 0.0) == pytest.approx(1.0, abs=1e-12)


def test_alpha_zero_gap_names_year():
    with pytest.raises(SingularScheduleError) as err:
        alpha(1.0, 1.0, 1.2, 1.0, 1.0, 0.05, 0.05, 0.02, year=7)
    assert err.value.year == 7
    assert "year 7" in str(err.value)


def test_payout_from_alpha_examples():
    assert payout_from_alpha(0.0, 0.37) == 1.0
    assert payout_from_alpha(1.0, 0.0) == 0.5
    assert payout_from_alpha(2.0, 0.5) == 0.0
    with pytest.raises(SingularScheduleError):
        payout_from_alpha(-1.0, 0.02)


def test_single_year_term():
    e = project_model_economy(0.012, 0.006, 1)
    sched, trace = solve_schedule(e, PlanParams(c=0.08, T=1, d=0.023, s=0.06))
    assert list(sched.raw) == [1.0]
    assert len(trace.alpha) == 0


def test_boundary_and_clamp_on_model():
    cfg = ModelConfig()
    sched, trace = solve_schedule(cfg.economy(), cfg.params(0.07))
    assert sched.raw[-1] == 1.0
    assert len(sched.raw) == 45 and len(trace.alpha) == 44
    np.testing.assert_array_equal(sched.clamped, np.clip(sched.raw, 0.0, 1.0))
    assert np.all(np.isfinite(trace.alpha))


def test_zero_gap_economy_is_singular():
    e = project_model_economy(0.0, 0.0, 10)
    with pytest.raises(SingularScheduleError) as err:
        solve_schedule(e, PlanParams(c=0.05, T=10, d=0.02, s=0.05))
    assert err.value.year == 9


def test_schedule_toy_economy_matches_bisection():
    e = project_model_economy(0.012, 0.006, 5)
    for s in (1.088 / 1.026 - 1, 0.062):
        params = PlanParams(c=0.01, T=5, d=0.023, s=s)
        sched, _ = solve_schedule(e, params)
        expected = schedule_by_bisection(e.income, e.gdp, params.c, s, params.d)
        np.testing.assert_allclose(sched.raw, expected, rtol=0, atol=1e-9)


@st.composite
def toy_problem(draw):
    T = draw(st.integers(2, 8))
    i = draw(st.floats(0.0, 0.03))
    g_extra = draw(st.floats(0.002, 0.03))
    c = draw(st.floats(0.0, 0.15))
    s = draw(st.floats(0.0, 0.1))
    d = draw(st.floats(0.0, 0.05))
    return project_model_economy(i + g_extra, i, T), PlanParams(c=c, T=T, d=d, s=s)


@settings(max_examples=200, deadline=None)
@given(toy_problem())
def test_oracle_equivalence(problem):
    e, params = problem
    try:
        expected = schedule_by_bisection(e.income, e.gdp, params.c, params.s, params.d)
    except ValueError:
        assume(False)
    sched, _ = solve_schedule(e, params)
    np.testing.assert_allclose(sched.raw, expected, rtol=0, atol=1e-9)


@settings(max_examples=200, deadline=None)
@given(toy_problem())
def test_consistency_identity(problem):
    """Holdings implied by consecutive nonnegative payouts obey the forward law."""
    e, params = problem
    try:
        sched, _ = solve_schedule(e, params)
    except SingularScheduleError:
        assume(False)
    I, G, p = e.income, e.gdp, sched.raw
    c, s, d = params.c, params.s, params.d
    for t in range(1, params.T):
        pt, pn = p[t - 1], p[t]
        if pt < 0 or pn < 0:
            continue
        H_t = (G[t] - I[t]) / (pt + d)
        H_n = (G[t + 1] - I[t + 1]) / (pn + d)
        assert (H_t * (1 - pt) + c * I[t]) * (1 + s) == pytest.approx(H_n, rel=1e-12)


def test_recursion_uses_raw_next_payout():
    # big contribution pushes early payouts negative; the recursion must not clamp them
    I = np.array([1.0, 1.0, 1.0, 1.0])
    G = np.array([1.0, 1.01, 1.02, 1.03])
    e = EconomyPath(base_year=0, income=I, gdp=G)
    params = PlanParams(c=0.0, T=3, d=0.02, s=0.5)
    sched, _ = solve_schedule(e, params)
    p3 = 1.0
    a2 = ((G[3] - I[3]) / ((p3 + 0.02) * 1.5)) / (G[2] - I[2])
    p2 = (1 - 0.02 * a2) / (1 + a2)
    a1 = ((G[2] - I[2]) / ((p2 + 0.02) * 1.5)) / (G[1] - I[1])
    p1 = (1 - 0.02 * a1) / (1 + a1)
    np.testing.assert_allclose(sched.raw, [p1, p2, p3], rtol=1e-14)


def test_payout_below_minus_d_raises_with_year():
    I = np.array([1.0, 1.0, 1.0, 1.0])
    G = np.array([1.0, 1.01, 1.02, 1.03])
    e = EconomyPath(base_year=0, income=I, gdp=G)
    # contributions so large that year 2 needs p_2 < -d, leaving year 1 singular
    with pytest.raises(SingularScheduleError) as err:
        solve_schedule(e, PlanParams(c=0.5, T=3, d=0.01, s=0.0))
    assert err.value.year == 1
