"""Deferred Investment Payroll plan engine: schedule solver, simulator, optimizer and backtest."""

from .economy import (
    EconomyPath,
    MarketPath,
    ModelConfig,
    PayoutSchedule,
    PlanParams,
    SimulationResult,
    deflate,
    project_model_economy,
    real_stock_growth,
)
from .ingest import AnnualSeries, build_historical_paths, load_series
from .optimize import LossCurve, loss, optimize_c
from .schedule import AlphaTrace, SingularScheduleError, solve_schedule
from .simulate import aggregate_holdings, pay_raise_comparator, simulate

__all__ = [
    "AlphaTrace",
    "AnnualSeries",
    "EconomyPath",
    "LossCurve",
    "MarketPath",
    "ModelConfig",
    "PayoutSchedule",
    "PlanParams",
    "SimulationResult",
    "SingularScheduleError",
    "aggregate_holdings",
    "build_historical_paths",
    "deflate",
    "load_series",
    "loss",
    "optimize_c",
    "pay_raise_comparator",
    "project_model_economy",
    "real_stock_growth",
    "simulate",
    "solve_schedule",
]
