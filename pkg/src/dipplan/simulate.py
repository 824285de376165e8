"""Forward simulation of holdings, income and funds flow."""

from __future__ import annotations

import numpy as np

from .economy import EconomyPath, MarketPath, PayoutSchedule, PlanParams, SimulationResult


def step_holdings(H_t: float, p_hat_t: float, c: float, I_t: float, s_t: float) -> float:
    """Holdings next year: pay out ``p_hat_t`` of ``H_t``, add ``c * I_t``, grow by ``s_t``."""
    if H_t < 0:
        raise ValueError(f"holdings must be nonnegative, got {H_t}")
    if not 0.0 <= p_hat_t <= 1.0:
        raise ValueError(f"clamped payout must lie in [0, 1], got {p_hat_t}")
    if s_t <= -1.0:
        raise ValueError(f"growth must exceed -1, got {s_t}")
    return (H_t * (1.0 - p_hat_t) + c * I_t) * (1.0 + s_t)


def simulate(
    economy: EconomyPath,
    market: MarketPath,
    schedule: PayoutSchedule,
    params: PlanParams,
) -> SimulationResult:
    """Run the plan from empty holdings over every plan year the economy covers.

    The base year contributes ``c * I_0`` and pays nothing.  In plan year ``t``
    payouts are taken from beginning-of-year holdings, then the year's
    contribution is added and the balance grows by the next year's return.
    No contribution is made in the final year of the term, which is fully
    liquidated.  If the economy is shorter than the term (historical replay),
    the run stops early and the remaining balance is reported as ``residual``.
    """
    n = economy.n_years
    T = params.T
    if schedule.T != T:
        raise ValueError(f"schedule covers {schedule.T} years, plan term is {T}")
    if n > T:
        raise ValueError(f"economy covers {n} plan years, more than the term {T}")
    if len(market) != n:
        raise ValueError(f"market path covers {len(market)} years, economy covers {n}")

    I = economy.income
    c = params.c
    p_hat = np.concatenate(([0.0], schedule.clamped[:n]))
    div = np.concatenate(([0.0], market.div_yield))
    growth = market.growth

    inflow = c * I
    if n == T:
        inflow[T] = 0.0
    holdings = np.zeros(n + 1)
    for t in range(n):
        holdings[t + 1] = step_holdings(holdings[t], p_hat[t], c, I[t], growth[t])

    principal = p_hat * holdings
    dividends = div * holdings
    total = I + principal + dividends
    residual = float(holdings[n] * (1.0 - p_hat[n]) + inflow[n])

    for arr in (holdings, total, inflow, principal, dividends):
        arr.setflags(write=False)
    return SimulationResult(
        holdings=holdings,
        total_income=total,
        inflow=inflow,
        principal_out=principal,
        dividend_out=dividends,
        residual=residual,
    )


def pay_raise_comparator(economy: EconomyPath, c: float) -> np.ndarray:
    """Income if the contribution were paid as a flat raise: ``I_t * (1 + c)``."""
    return economy.income * (1.0 + c)


def aggregate_holdings(mean_holdings_per_worker: float, workforce: float) -> float:
    if mean_holdings_per_worker < 0 or workforce < 0:
        raise ValueError("inputs must be nonnegative")
    return mean_holdings_per_worker * workforce


def ramp_length(result: SimulationResult, economy: EconomyPath, tol: float = 0.01) -> int:
    """Leading plan years before ``|total income / GDP - 1| < tol`` holds for good."""
    dev = np.abs(result.total_income[1:] / economy.gdp[1:] - 1.0)
    bad = np.nonzero(dev >= tol)[0]
    return int(bad[-1] + 1) if len(bad) else 0


def comparator_crossover(result: SimulationResult, economy: EconomyPath, c: float) -> int:
    """First plan year from which plan income beats the flat raise every year (0 if never)."""
    ahead = result.total_income[1:] > pay_raise_comparator(economy, c)[1:]
    behind = np.nonzero(~ahead)[0]
    if len(behind) == 0:
        return 1
    first = int(behind[-1] + 2)
    return first if first <= economy.n_years else 0


def flow_crossover(result: SimulationResult) -> int:
    """Number of leading plan years in which inflow exceeds outflow."""
    net = result.inflow[1:] - result.outflow[1:]
    below = np.nonzero(net <= 0)[0]
    return int(below[0]) if len(below) else len(net)


def mean_holdings_in_income(result: SimulationResult, economy: EconomyPath) -> float:
    """Average over plan years of holdings measured in that year's median income."""
    return float(np.mean(result.holdings[1:] / economy.income[1:]))
