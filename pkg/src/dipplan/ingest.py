"""Annual CSV series and their assembly into historical real-dollar paths.

Every input file has the header ``year,value`` and one row per calendar year.
Dividend yields are decimal fractions.  CPI is whatever annual convention the
user supplies (annual average is assumed in the docs); index levels are
year-end closes.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .economy import EconomyPath, MarketPath, deflate

SERIES_FILES = {
    "cpi": "cpi.csv",
    "sp500": "sp500.csv",
    "div_yield": "dividend_yield.csv",
    "income": "income.csv",
    "gdp": "gdp.csv",
}


class DataError(ValueError):
    pass


class MissingFileError(DataError, FileNotFoundError):
    pass


class MalformedRowError(DataError):
    def __init__(self, message: str, line: int):
        super().__init__(message)
        self.line = line


class GapError(DataError):
    def __init__(self, message: str, missing: list[int]):
        super().__init__(message)
        self.missing = missing


class DuplicateYearError(DataError):
    def __init__(self, message: str, year: int):
        super().__init__(message)
        self.year = year


class CoverageError(DataError):
    def __init__(self, message: str, missing: dict[str, list[int]]):
        super().__init__(message)
        self.missing = missing


@dataclass(frozen=True)
class AnnualSeries:
    name: str
    years: tuple[int, ...]
    values: tuple[float, ...]

    @property
    def rows(self) -> list[tuple[int, float]]:
        return list(zip(self.years, self.values))

    def __len__(self) -> int:
        return len(self.years)

    def window(self, start: int, end: int) -> np.ndarray:
        """Values for ``start..end`` inclusive; the series must cover the span."""
        i = self.years.index(start)
        return np.array(self.values[i : i + end - start + 1])


def load_series(path, expected_name: str) -> AnnualSeries:
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(f"{expected_name}: file not found: {path}")
    years: list[int] = []
    values: list[float] = []
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["year", "value"]:
            raise MalformedRowError(f"{path}:1: expected header 'year,value', got {header!r}", 1)
        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 2:
                raise MalformedRowError(f"{path}:{line}: expected 2 fields, got {len(row)}", line)
            try:
                year = int(row[0])
                value = float(row[1])
            except ValueError:
                raise MalformedRowError(f"{path}:{line}: cannot parse {row!r}", line) from None
            if not math.isfinite(value):
                raise MalformedRowError(f"{path}:{line}: non-finite value {row[1]!r}", line)
            if years and year == years[-1]:
                raise DuplicateYearError(f"{path}:{line}: duplicate year {year}", year)
            if years and year < years[-1]:
                if year in years:
                    raise DuplicateYearError(f"{path}:{line}: duplicate year {year}", year)
                raise MalformedRowError(f"{path}:{line}: year {year} out of order", line)
            if years and year > years[-1] + 1:
                missing = list(range(years[-1] + 1, year))
                raise GapError(f"{path}:{line}: missing years {', '.join(map(str, missing))}", missing)
            years.append(year)
            values.append(value)
    if not years:
        raise DataError(f"{path}: no data rows")
    return AnnualSeries(name=expected_name, years=tuple(years), values=tuple(values))


def load_data_dir(data_dir) -> dict[str, AnnualSeries]:
    data_dir = Path(data_dir)
    return {name: load_series(data_dir / fname, name) for name, fname in SERIES_FILES.items()}


def build_historical_paths(
    cpi: AnnualSeries,
    sp500: AnnualSeries,
    div_yield: AnnualSeries,
    income: AnnualSeries,
    gdp: AnnualSeries,
    start_year: int,
    end_year: int,
    base_year: int,
) -> tuple[EconomyPath, MarketPath]:
    """Real, base-normalized economy and real market returns for ``start_year..end_year``.

    The window must begin the year after ``base_year``; plan year 1 is ``start_year``.
    """
    if start_year != base_year + 1:
        raise ValueError(f"window must start the year after the base year ({base_year + 1}), got {start_year}")
    if end_year < start_year:
        raise ValueError(f"empty window {start_year}-{end_year}")

    series = {"cpi": cpi, "sp500": sp500, "div_yield": div_yield, "income": income, "gdp": gdp}
    need = {
        name: range(start_year if name == "div_yield" else base_year, end_year + 1)
        for name in series
    }
    missing = {
        s.name: [y for y in need[key] if y not in s.years] for key, s in series.items()
    }
    missing = {k: v for k, v in missing.items() if v}
    if missing:
        detail = "; ".join(f"{k}: {_span(v)}" for k, v in missing.items())
        raise CoverageError(f"series do not cover {base_year}-{end_year}: {detail}", missing)

    cpi_v = cpi.window(base_year, end_year)
    sp_v = sp500.window(base_year, end_year)
    inc_v = income.window(base_year, end_year)
    gdp_v = gdp.window(base_year, end_year)
    for s, v in ((cpi, cpi_v), (sp500, sp_v), (income, inc_v), (gdp, gdp_v)):
        if np.any(v <= 0):
            raise DataError(f"{s.name}: values must be positive")

    real_inc = deflate(inc_v, cpi_v, 0)
    real_gdp = deflate(gdp_v, cpi_v, 0)
    economy = EconomyPath(base_year=base_year, income=real_inc / real_inc[0], gdp=real_gdp / real_gdp[0])

    growth = (sp_v[1:] / sp_v[:-1]) * (cpi_v[:-1] / cpi_v[1:]) - 1.0
    market = MarketPath(growth=growth, div_yield=div_yield.window(start_year, end_year))
    return economy, market


def _span(years: list[int]) -> str:
    if len(years) > 6:
        return f"{years[0]}..{years[-1]} ({len(years)} years)"
    return ", ".join(map(str, years))
