"""Command-line front end: ``dip solve|optimize|simulate|backtest|sweep``.

Every command writes plot-ready tables to ``--out-dir`` as CSV (default) or
JSON (``--output json``).  Floats are written with 12 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .economy import REAL_RATE_MODES, ModelConfig
from .ingest import DataError, build_historical_paths, load_data_dir
from .optimize import loss, optimize_c
from .schedule import solve_schedule
from .simulate import (
    comparator_crossover,
    flow_crossover,
    mean_holdings_in_income,
    pay_raise_comparator,
    ramp_length,
    simulate,
)

SIG_DIGITS = 12


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return f"{float(x):.{SIG_DIGITS}g}"


def _json_value(x):
    if isinstance(x, (int, np.integer, str, bool)):
        return x if not isinstance(x, np.integer) else int(x)
    x = float(x)
    return float(fmt(x)) if math.isfinite(x) else None


class Table:
    """Column-ordered table that serializes identically to CSV and JSON."""

    def __init__(self, columns: list[str], rows: list[list]):
        self.columns = columns
        self.rows = rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([fmt(v) for v in row])
        return buf.getvalue()

    def records(self) -> list[dict]:
        return [{k: _json_value(v) for k, v in zip(self.columns, row)} for row in self.rows]


def read_table(path) -> tuple[list[str], list[list[str]]]:
    """Read back a table written by this module (header plus string cells)."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def _write(out_dir: Path, name: str, text: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    path.write_text(text, encoding="utf-8")
    return path


def _write_json(out_dir: Path, name: str, payload: dict) -> str:
    text = json.dumps(payload, indent=2, allow_nan=False) + "\n"
    _write(out_dir, name, text)
    return text


# ---------------------------------------------------------------- arguments


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _ints(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def _modes(text: str) -> list[str]:
    modes = [m.strip() for m in text.split(",") if m.strip()]
    for m in modes:
        if m not in REAL_RATE_MODES:
            raise argparse.ArgumentTypeError(f"invalid real-rate mode {m!r}")
    return modes


def _add_model_flags(p: argparse.ArgumentParser, multi: bool = False) -> None:
    d = ModelConfig()
    fl = _floats if multi else float
    wrap = (lambda v: [v]) if multi else (lambda v: v)
    p.add_argument("--term", type=_ints if multi else int, default=wrap(d.term), help="plan term T in years")
    p.add_argument("--gdp-cagr", type=fl, default=wrap(d.gdp_cagr))
    p.add_argument("--income-cagr", type=fl, default=wrap(d.income_cagr))
    p.add_argument("--inflation", type=fl, default=wrap(d.inflation))
    p.add_argument("--sp500-cagr", type=fl, default=wrap(d.sp500_cagr), help="nominal index CAGR")
    p.add_argument("--dividend-yield", type=fl, default=wrap(d.dividend_yield))
    if multi:
        p.add_argument("--real-rate-mode", type=_modes, default=[d.real_rate_mode])
    else:
        p.add_argument("--real-rate-mode", choices=REAL_RATE_MODES, default=d.real_rate_mode)
    p.add_argument("--base-year", type=int, default=d.base_year)
    p.add_argument("--c-min", type=float, default=0.0)
    p.add_argument("--c-max", type=float, default=0.2)
    p.add_argument("--c-step", type=float, default=0.001)
    p.add_argument("--output", choices=("csv", "json"), default="csv")
    p.add_argument("--out-dir", type=Path, default=Path("out"))


def _add_contribution(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--contribution", type=float, default=None,
        help="contribution rate c; optimized on the model economy when omitted",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dip", description="Deferred Investment Payroll plan engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve the payout schedule")
    _add_model_flags(p)
    _add_contribution(p)

    p = sub.add_parser("optimize", help="find the contribution rate minimizing the tracking loss")
    _add_model_flags(p)

    p = sub.add_parser("simulate", help="simulate the model economy")
    _add_model_flags(p)
    _add_contribution(p)

    p = sub.add_parser("backtest", help="replay the model schedule on historical data")
    _add_model_flags(p)
    _add_contribution(p)
    p.add_argument("--data-dir", type=Path, required=True)
    p.add_argument("--end-year", type=int, default=None, help="last year to replay (default: last year in the data)")

    p = sub.add_parser("sweep", help="optimize over a grid of scenarios")
    _add_model_flags(p, multi=True)
    return parser


def _config(args) -> ModelConfig:
    return ModelConfig(
        term=args.term,
        gdp_cagr=args.gdp_cagr,
        income_cagr=args.income_cagr,
        inflation=args.inflation,
        sp500_cagr=args.sp500_cagr,
        dividend_yield=args.dividend_yield,
        real_rate_mode=args.real_rate_mode,
        base_year=args.base_year,
    )


def _contribution(args, cfg: ModelConfig) -> float:
    if getattr(args, "contribution", None) is not None:
        return args.contribution
    c, _ = optimize_c(cfg.economy(), cfg.params(), args.c_min, args.c_max, args.c_step)
    return c


# ----------------------------------------------------------------- commands


def cmd_solve(args) -> int:
    cfg = _config(args)
    c = _contribution(args, cfg)
    schedule, trace = solve_schedule(cfg.economy(), cfg.params(c))
    alphas = list(trace.alpha) + [""]
    rows = [
        [cfg.base_year + t, t, schedule.raw[t - 1], schedule.clamped[t - 1], alphas[t - 1]]
        for t in range(1, cfg.term + 1)
    ]
    table = Table(["year", "t", "raw", "clamped", "alpha"], rows)
    if args.output == "json":
        recs = table.records()
        for r in recs:
            if r["alpha"] == "":
                r["alpha"] = None
        print(_write_json(args.out_dir, "schedule.json", {"c": _json_value(c), "schedule": recs}), end="")
    else:
        _write(args.out_dir, "schedule.csv", table.to_csv())
        print(fmt(c))
    return 0


def optimize_report(cfg: ModelConfig, c_min: float, c_max: float, c_step: float) -> tuple[Table, Table]:
    economy, params = cfg.economy(), cfg.params()
    c_star, curve = optimize_c(economy, params, c_min, c_max, c_step)
    report = Table(
        ["c_star", "loss", "real_rate_mode", "real_growth"],
        [[c_star, loss(c_star, economy, params), cfg.real_rate_mode, cfg.real_growth]],
    )
    return report, Table(["c", "loss"], [[c, l] for c, l in zip(curve.c, curve.loss)])


def cmd_optimize(args) -> int:
    report, curve = optimize_report(_config(args), args.c_min, args.c_max, args.c_step)
    if args.output == "json":
        payload = dict(report.records()[0])
        payload["loss_curve"] = curve.records()
        print(_write_json(args.out_dir, "optimize.json", payload), end="")
    else:
        _write(args.out_dir, "optimize.csv", report.to_csv())
        _write(args.out_dir, "loss_curve.csv", curve.to_csv())
        print(fmt(report.rows[0][0]))
    return 0


def _tables(economy, result, c) -> tuple[Table, Table]:
    years = economy.years
    raise_ = pay_raise_comparator(economy, c)
    impact = Table(
        ["year", "gdp", "income", "total_income", "pay_raise"],
        [[years[t], economy.gdp[t], economy.income[t], result.total_income[t], raise_[t]]
         for t in range(len(years))],
    )
    flows = Table(
        ["year", "inflow", "principal_out", "dividend_out", "holdings"],
        [[years[t], result.inflow[t], result.principal_out[t], result.dividend_out[t], result.holdings[t]]
         for t in range(len(years))],
    )
    return impact, flows


def _emit_run(args, impact: Table, flows: Table, summary: dict) -> None:
    if args.output == "json":
        payload = {
            "summary": {k: _json_value(v) for k, v in summary.items()},
            "impact": impact.records(),
            "flows": flows.records(),
        }
        print(_write_json(args.out_dir, f"{args.command}.json", payload), end="")
    else:
        _write(args.out_dir, "impact.csv", impact.to_csv())
        _write(args.out_dir, "flows.csv", flows.to_csv())
        for k, v in summary.items():
            print(f"{k}={fmt(v)}")


def cmd_simulate(args) -> int:
    cfg = _config(args)
    c = _contribution(args, cfg)
    params = cfg.params(c)
    economy = cfg.economy()
    schedule, _ = solve_schedule(economy, params)
    result = simulate(economy, cfg.market(), schedule, params)
    impact, flows = _tables(economy, result, c)
    summary = {
        "c": c,
        "loss": loss(c, economy, params),
        "ramp_length": ramp_length(result, economy),
        "comparator_crossover": comparator_crossover(result, economy, c),
        "flow_crossover": flow_crossover(result),
        "mean_holdings": mean_holdings_in_income(result, economy),
        "residual": result.residual,
    }
    _emit_run(args, impact, flows, summary)
    return 0


def cmd_backtest(args) -> int:
    cfg = _config(args)
    data = load_data_dir(args.data_dir)
    end = args.end_year
    if end is None:
        end = min(s.years[-1] for s in data.values())
    economy, market = build_historical_paths(
        data["cpi"], data["sp500"], data["div_yield"], data["income"], data["gdp"],
        start_year=cfg.base_year + 1, end_year=end, base_year=cfg.base_year,
    )
    if economy.n_years > cfg.term:
        raise ValueError(f"window {cfg.base_year + 1}-{end} is longer than the plan term {cfg.term}")
    c = _contribution(args, cfg)
    params = cfg.params(c)
    # the schedule comes from the model economy and is replayed unchanged
    schedule, _ = solve_schedule(cfg.economy(), params)
    result = simulate(economy, market, schedule, params)
    impact, flows = _tables(economy, result, c)
    summary = {
        "c": c,
        "start_year": cfg.base_year + 1,
        "end_year": end,
        "flow_crossover": flow_crossover(result),
        "mean_holdings": mean_holdings_in_income(result, economy),
        "terminal_holdings": result.residual,
    }
    _emit_run(args, impact, flows, summary)
    return 0


SWEEP_COLUMNS = [
    "term", "gdp_cagr", "income_cagr", "inflation", "sp500_cagr", "dividend_yield",
    "real_rate_mode", "c_star", "loss", "ramp_length", "flow_crossover", "mean_holdings",
]


def sweep_rows(configs, c_min, c_max, c_step) -> list[list]:
    rows = []
    for cfg in configs:
        economy = cfg.economy()
        c_star, _ = optimize_c(economy, cfg.params(), c_min, c_max, c_step)
        params = cfg.params(c_star)
        schedule, _ = solve_schedule(economy, params)
        result = simulate(economy, cfg.market(), schedule, params)
        rows.append([
            cfg.term, cfg.gdp_cagr, cfg.income_cagr, cfg.inflation, cfg.sp500_cagr,
            cfg.dividend_yield, cfg.real_rate_mode, c_star, loss(c_star, economy, cfg.params()),
            ramp_length(result, economy), flow_crossover(result), mean_holdings_in_income(result, economy),
        ])
    return rows


def cmd_sweep(args) -> int:
    base = ModelConfig(base_year=args.base_year)
    configs = [
        replace(base, term=T, gdp_cagr=g, income_cagr=i, inflation=inf, sp500_cagr=sp,
                dividend_yield=dy, real_rate_mode=mode)
        for T, g, i, inf, sp, dy, mode in itertools.product(
            args.term, args.gdp_cagr, args.income_cagr, args.inflation,
            args.sp500_cagr, args.dividend_yield, args.real_rate_mode,
        )
    ]
    table = Table(SWEEP_COLUMNS, sweep_rows(configs, args.c_min, args.c_max, args.c_step))
    if args.output == "json":
        print(_write_json(args.out_dir, "sweep.json", {"scenarios": table.records()}), end="")
    else:
        text = table.to_csv()
        _write(args.out_dir, "sweep.csv", text)
        print(text, end="")
    return 0


COMMANDS = {
    "solve": cmd_solve,
    "optimize": cmd_optimize,
    "simulate": cmd_simulate,
    "backtest": cmd_backtest,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (DataError, ValueError, ArithmeticError, OSError) as exc:
        print(f"dip {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
