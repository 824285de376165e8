"""Backward recursion for the payout schedule.

Starting from full liquidation in the final year, each earlier payout
fraction is chosen so that the holdings needed to lift total income to GDP
in year ``t`` grow, after payout and contribution, into the holdings needed
in year ``t + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .economy import EconomyPath, PayoutSchedule, PlanParams


class SingularScheduleError(ArithmeticError):
    """The recursion hit a zero divisor; ``year`` is the plan year involved."""

    def __init__(self, message: str, year: int | None = None):
        super().__init__(message)
        self.year = year


@dataclass(frozen=True)
class AlphaTrace:
    """Intermediate ratios for plan years ``1..T-1`` (entry ``k`` is year ``k + 1``)."""

    alpha: np.ndarray


def implied_holdings(G_t: float, I_t: float, p_t: float, d: float) -> float:
    """Holdings that make ``I_t + (p_t + d) * H_t`` equal ``G_t``."""
    denom = p_t + d
    if denom == 0.0:
        raise SingularScheduleError("p_t + d = 0: schedule is singular")
    return (G_t - I_t) / denom


def alpha(G_t, I_t, G_next, I_next, p_next, c, s, d, year: int | None = None) -> float:
    """Ratio ``(1 - p_t) / (p_t + d)`` implied by next year's holdings."""
    gap = G_t - I_t
    if gap == 0.0:
        where = f" in year {year}" if year is not None else ""
        raise SingularScheduleError(f"zero income gap G_t = I_t{where}", year)
    denom = p_next + d
    if denom <= 0.0:
        where = f" after year {year}" if year is not None else ""
        raise SingularScheduleError(f"p_(t+1) + d = {denom:g} <= 0{where}", year)
    if s <= -1.0:
        raise ValueError("s must exceed -1")
    return ((G_next - I_next) / (denom * (1.0 + s)) - c * I_t) / gap


def payout_from_alpha(alpha_t: float, d: float, year: int | None = None) -> float:
    """Invert ``alpha = (1 - p) / (p + d)``. Unclamped."""
    if alpha_t == -1.0:
        where = f" in year {year}" if year is not None else ""
        raise SingularScheduleError(f"alpha = -1{where}", year)
    return (1.0 - d * alpha_t) / (1.0 + alpha_t)


def solve_schedule(economy: EconomyPath, params: PlanParams) -> tuple[PayoutSchedule, AlphaTrace]:
    """Solve ``p_T..p_1`` backwards from ``p_T = 1``.

    The recursion always consumes the raw (unclamped) next-year payout.
    """
    T = params.T
    if economy.n_years < T:
        raise ValueError(f"economy covers {economy.n_years} plan years, schedule needs {T}")
    I, G = economy.income, economy.gdp
    c, s, d = params.c, params.s, params.d

    raw = np.empty(T)
    alphas = np.empty(T - 1)
    raw[T - 1] = 1.0
    for t in range(T - 1, 0, -1):
        a = alpha(G[t], I[t], G[t + 1], I[t + 1], raw[t], c, s, d, year=t)
        alphas[t - 1] = a
        raw[t - 1] = payout_from_alpha(a, d, year=t)
    alphas.setflags(write=False)
    return PayoutSchedule(raw=raw), AlphaTrace(alpha=alphas)
