"""Optimize and simulate the model economy under both real-rate readings.

Also scans the assumed nominal index CAGR to show which real growth rate
would put the optimum near 8.7%.

    python scripts/reproduce_model.py
"""

import numpy as np

from dipplan.economy import ModelConfig
from dipplan.optimize import loss, optimize_c
from dipplan.schedule import solve_schedule
from dipplan.simulate import (
    comparator_crossover,
    flow_crossover,
    mean_holdings_in_income,
    simulate,
)


def run(cfg):
    economy = cfg.economy()
    c, curve = optimize_c(economy, cfg.params())
    params = cfg.params(c)
    sched, _ = solve_schedule(economy, params)
    res = simulate(economy, cfg.market(), sched, params)
    return dict(
        s=cfg.real_growth,
        c=c,
        loss=loss(c, economy, params),
        flow=flow_crossover(res),
        cmp=comparator_crossover(res, economy, c),
        mean_h=mean_holdings_in_income(res, economy),
        singular_from=float(curve.c[~np.isfinite(curve.loss)].min()) if not np.isfinite(curve.loss).all() else None,
        neg_payouts=int(np.sum(sched.raw < 0)),
    )


def show(label, r):
    print(
        f"{label:<28} s={r['s']:.5f} c*={r['c']:.5f} loss={r['loss']:.2e} "
        f"inflow>outflow years={r['flow']} beats raise from t={r['cmp']} "
        f"mean H/I={r['mean_h']:.3f} singular from c={r['singular_from']:.3f}"
    )


if __name__ == "__main__":
    for mode in ("ratio", "subtract"):
        show(f"mode={mode}", run(ModelConfig(real_rate_mode=mode)))
    print()
    for cagr in (0.088, 0.080, 0.075, 0.070, 0.065, 0.060):
        show(f"ratio, sp500 CAGR={cagr:.3f}", run(ModelConfig(sp500_cagr=cagr)))
