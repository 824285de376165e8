"""Write a synthetic 1984-2020 dataset in the backtest input format.

The series are random walks around the model's average rates; use them to
exercise ``dip backtest`` when real data is not at hand.

    python scripts/make_synthetic_history.py out/synthetic --seed 1
    dip backtest --data-dir out/synthetic --out-dir out/backtest
"""

import argparse
from pathlib import Path

import numpy as np


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out_dir", type=Path)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--start", type=int, default=1984)
    ap.add_argument("--end", type=int, default=2020)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    years = np.arange(args.start, args.end + 1)
    n = len(years)

    def walk(x0, mu, sigma):
        return x0 * np.cumprod(np.r_[1.0, 1 + rng.normal(mu, sigma, n - 1).clip(-0.5)])

    series = {
        "cpi": walk(100.0, 0.026, 0.01),
        "sp500": walk(167.0, 0.088, 0.16),
        "income": walk(22000.0, 0.032, 0.015),
        "gdp": walk(47000.0, 0.038, 0.015),
        "dividend_yield": rng.uniform(0.012, 0.045, n),
    }
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for name, vals in series.items():
        lines = ["year,value"] + [f"{y},{v:.10g}" for y, v in zip(years, vals)]
        (args.out_dir / f"{name}.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(series)} series for {args.start}-{args.end} to {args.out_dir}")


if __name__ == "__main__":
    main()
