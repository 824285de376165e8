"""Search for the contribution rate that makes total income track GDP."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .economy import EconomyPath, MarketPath, PlanParams
from .schedule import SingularScheduleError, solve_schedule
from .simulate import simulate

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class LossCurve:
    c: np.ndarray
    loss: np.ndarray

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.c.tolist(), self.loss.tolist()))


def loss(c: float, economy: EconomyPath, params: PlanParams) -> float:
    """Sum over plan years of ``|1 - total income / GDP|``; ``inf`` for singular schedules.

    ``params.c`` is ignored in favour of ``c``.
    """
    p = params.with_c(c)
    try:
        schedule, _ = solve_schedule(economy, p)
    except SingularScheduleError:
        return math.inf
    market = MarketPath.constant(p.s, p.d, economy.n_years)
    result = simulate(economy, market, schedule, p)
    return float(np.sum(np.abs(1.0 - result.total_income[1:] / economy.gdp[1:])))


def grid(c_min: float, c_max: float, step: float) -> np.ndarray:
    if not step > 0:
        raise ValueError(f"grid step must be positive, got {step}")
    if not (0.0 <= c_min <= c_max < 1.0):
        raise ValueError(f"need 0 <= c_min <= c_max < 1, got [{c_min}, {c_max}]")
    n = int(math.floor((c_max - c_min) / step + 1e-9)) + 1
    return c_min + step * np.arange(n)


def golden_section(f, a: float, b: float, tol: float = 1e-6) -> float:
    """Minimize a unimodal ``f`` on ``[a, b]`` until the bracket is narrower than ``tol``."""
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)
    return 0.5 * (a + b)


def optimize_c(
    economy: EconomyPath,
    params: PlanParams,
    c_min: float = 0.0,
    c_max: float = 0.2,
    c_step: float = 0.001,
    tol: float = 1e-6,
) -> tuple[float, LossCurve]:
    """Grid scan over ``c`` followed by golden-section refinement around the best point.

    Ties on the grid go to the smaller ``c``.  The refined value is only kept
    if it does at least as well as the best grid point.
    """
    cs = grid(c_min, c_max, c_step)
    losses = np.array([loss(c, economy, params) for c in cs])
    if not np.any(np.isfinite(losses)):
        raise SingularScheduleError("every grid point produced a singular schedule")
    best = int(np.argmin(losses))
    c_best, l_best = float(cs[best]), float(losses[best])

    lo = max(c_min, c_best - c_step)
    hi = min(c_max, c_best + c_step)
    if hi > lo:
        c_ref = golden_section(lambda c: loss(c, economy, params), lo, hi, tol)
        if loss(c_ref, economy, params) <= l_best:
            c_best = c_ref
    cs.setflags(write=False)
    losses.setflags(write=False)
    return c_best, LossCurve(c=cs, loss=losses)
