"""Domain types, the model economy and real-dollar deflation.

Time indexing used throughout the package: ``t = 0`` is the base year, at
which income and GDP are both normalized to 1; plan years run ``t = 1..T``.
Per-year market data and payout schedules are stored for plan years only,
so entry ``k`` of those arrays belongs to year ``t = k + 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

REAL_RATE_MODES = ("ratio", "subtract")


def _frozen(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PlanParams:
    """Plan knobs: contribution ``c``, term ``T``, dividend rate ``d``, real growth ``s``."""

    c: float
    T: int
    d: float
    s: float

    def __post_init__(self):
        if not 0.0 <= self.c < 1.0:
            raise ValueError(f"contribution c must lie in [0, 1), got {self.c}")
        if int(self.T) != self.T or self.T < 1:
            raise ValueError(f"term T must be an integer >= 1, got {self.T}")
        if not 0.0 <= self.d < 1.0:
            raise ValueError(f"dividend rate d must lie in [0, 1), got {self.d}")
        if not (math.isfinite(self.s) and self.s > -1.0):
            raise ValueError(f"real growth s must be finite and > -1, got {self.s}")

    def with_c(self, c: float) -> "PlanParams":
        return PlanParams(c=c, T=self.T, d=self.d, s=self.s)


@dataclass(frozen=True)
class EconomyPath:
    """Normalized real median income and household GDP for ``t = 0..n``."""

    base_year: int
    income: np.ndarray
    gdp: np.ndarray

    def __post_init__(self):
        income = _frozen(self.income, "income")
        gdp = _frozen(self.gdp, "gdp")
        if len(income) != len(gdp):
            raise ValueError("income and gdp must have equal length")
        if len(income) < 2:
            raise ValueError("economy must span at least the base year and one plan year")
        if np.any(income <= 0) or np.any(gdp <= 0):
            raise ValueError("income and gdp entries must be positive")
        object.__setattr__(self, "income", income)
        object.__setattr__(self, "gdp", gdp)

    @property
    def n_years(self) -> int:
        """Number of plan years covered (excluding the base year)."""
        return len(self.income) - 1

    @property
    def years(self) -> np.ndarray:
        return self.base_year + np.arange(len(self.income))


@dataclass(frozen=True)
class MarketPath:
    """Real stock growth and dividend yield for plan years ``1..n``.

    ``growth[k]`` is the real return earned over year ``k + 1``; it compounds
    holdings carried from year ``k`` into year ``k + 1``.
    """

    growth: np.ndarray
    div_yield: np.ndarray

    def __post_init__(self):
        growth = _frozen(self.growth, "growth")
        div = _frozen(self.div_yield, "div_yield")
        if len(growth) != len(div):
            raise ValueError("growth and div_yield must have equal length")
        if np.any(growth <= -1.0):
            raise ValueError("real growth must exceed -1")
        if np.any(div < 0) or np.any(div >= 1):
            raise ValueError("dividend yield must lie in [0, 1)")
        object.__setattr__(self, "growth", growth)
        object.__setattr__(self, "div_yield", div)

    def __len__(self) -> int:
        return len(self.growth)

    @classmethod
    def constant(cls, s: float, d: float, n_years: int) -> "MarketPath":
        return cls(growth=np.full(n_years, s), div_yield=np.full(n_years, d))


@dataclass(frozen=True)
class PayoutSchedule:
    """Raw and clamped payout fractions; entry ``k`` is plan year ``k + 1``."""

    raw: np.ndarray
    clamped: np.ndarray = field(default=None)

    def __post_init__(self):
        raw = _frozen(self.raw, "raw")
        if len(raw) == 0:
            raise ValueError("schedule must cover at least one year")
        if self.clamped is None:
            clamped = np.clip(raw, 0.0, 1.0)
            clamped.setflags(write=False)
        else:
            clamped = _frozen(self.clamped, "clamped")
        object.__setattr__(self, "raw", raw)
        object.__setattr__(self, "clamped", clamped)

    @property
    def T(self) -> int:
        return len(self.raw)


@dataclass(frozen=True)
class SimulationResult:
    """Per-year plan state for ``t = 0..n``.

    ``residual`` is what stays invested after the last simulated year's payouts
    and contribution; it is exactly zero when the full term was simulated.
    """

    holdings: np.ndarray
    total_income: np.ndarray
    inflow: np.ndarray
    principal_out: np.ndarray
    dividend_out: np.ndarray
    residual: float

    @property
    def outflow(self) -> np.ndarray:
        return self.principal_out + self.dividend_out


def real_stock_growth(nominal: float, inflation: float, mode: str = "ratio") -> float:
    """Convert a nominal stock CAGR to a real rate.

    ``ratio`` gives (1 + nominal) / (1 + inflation) - 1; ``subtract`` gives
    nominal - inflation.
    """
    if mode == "ratio":
        return (1.0 + nominal) / (1.0 + inflation) - 1.0
    if mode == "subtract":
        return nominal - inflation
    raise ValueError(f"unknown real-rate mode {mode!r}; expected one of {REAL_RATE_MODES}")


def project_model_economy(gdp_cagr: float, income_cagr: float, T: int, base_year: int = 0) -> EconomyPath:
    """Constant-growth economy with ``G_t = (1+gdp_cagr)^t`` and ``I_t = (1+income_cagr)^t``."""
    for name, rate in (("gdp_cagr", gdp_cagr), ("income_cagr", income_cagr)):
        if not math.isfinite(rate) or rate <= -1.0:
            raise ValueError(f"{name} must be finite and > -1, got {rate}")
    if int(T) != T or T < 1:
        raise ValueError(f"T must be an integer >= 1, got {T}")
    t = np.arange(T + 1)
    return EconomyPath(
        base_year=base_year,
        income=(1.0 + income_cagr) ** t,
        gdp=(1.0 + gdp_cagr) ** t,
    )


def deflate(nominal: Sequence[float], cpi: Sequence[float], base_year_index: int) -> np.ndarray:
    """Express ``nominal`` in base-period dollars: ``nominal[t] * cpi[base] / cpi[t]``."""
    nominal = np.asarray(nominal, dtype=float)
    cpi = np.asarray(cpi, dtype=float)
    if nominal.shape != cpi.shape or nominal.ndim != 1:
        raise ValueError("nominal and cpi must be 1-d sequences of equal length")
    if np.any(~np.isfinite(cpi)) or np.any(cpi <= 0):
        raise ValueError("cpi entries must be finite and positive")
    if not 0 <= base_year_index < len(cpi):
        raise IndexError(f"base index {base_year_index} out of range for {len(cpi)} entries")
    return nominal * (cpi[base_year_index] / cpi)


@dataclass(frozen=True)
class ModelConfig:
    """The model-economy parameter block; defaults are the 1985-2020 averages."""

    term: int = 45
    gdp_cagr: float = 0.012
    income_cagr: float = 0.006
    inflation: float = 0.026
    sp500_cagr: float = 0.088
    dividend_yield: float = 0.023
    real_rate_mode: str = "ratio"
    base_year: int = 1984

    @property
    def real_growth(self) -> float:
        return real_stock_growth(self.sp500_cagr, self.inflation, self.real_rate_mode)

    def economy(self) -> EconomyPath:
        return project_model_economy(self.gdp_cagr, self.income_cagr, self.term, self.base_year)

    def market(self) -> MarketPath:
        return MarketPath.constant(self.real_growth, self.dividend_yield, self.term)

    def params(self, c: float = 0.0) -> PlanParams:
        return PlanParams(c=c, T=self.term, d=self.dividend_yield, s=self.real_growth)
