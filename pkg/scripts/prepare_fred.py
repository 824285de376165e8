"""Convert a FRED-style download (``DATE,VALUE`` or ``observation_date,<ID>``)
to the engine's annual ``year,value`` format by averaging within each year.

Suggested FRED series: CPIAUCSL (CPI-U), MEHOINUSA646N (nominal median
household income), GDP and TTLHH (GDP per household = GDP / households,
combine them yourself).  S&P 500 year-end closes and dividend yields come
from other sources; for a year-end close pass ``--how last``.

    python scripts/prepare_fred.py CPIAUCSL.csv data/cpi.csv
"""

import argparse
import csv
from collections import defaultdict
from statistics import fmean


def convert(src, dst, how="mean", scale=1.0):
    by_year = defaultdict(list)
    with open(src, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        next(reader)
        for row in reader:
            if len(row) < 2 or row[1].strip() in ("", "."):
                continue
            by_year[int(row[0][:4])].append(float(row[1]) * scale)
    with open(dst, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["year", "value"])
        for year in sorted(by_year):
            vals = by_year[year]
            w.writerow([year, f"{(fmean(vals) if how == 'mean' else vals[-1]):.10g}"])


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("src")
    ap.add_argument("dst")
    ap.add_argument("--how", choices=("mean", "last"), default="mean")
    ap.add_argument("--scale", type=float, default=1.0, help="e.g. 0.01 for yields quoted in percent")
    args = ap.parse_args()
    convert(args.src, args.dst, args.how, args.scale)
