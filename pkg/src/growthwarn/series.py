"""Loading and validating annual time series (e.g. constant-dollar GDP)."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import SeriesError

MIN_POINTS = 5


def _frozen_array(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Calendar-year indexed values of a growing quantity.

    Construction does not enforce the invariants (strictly increasing years,
    positive values, at least five points); use :func:`validate_series` to
    check them. :func:`load_series` only ever returns valid series.
    """

    name: str
    unit: str
    years: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        years = _frozen_array(self.years)
        values = _frozen_array(self.values)
        if years.shape != values.shape or years.ndim != 1:
            raise SeriesError("years and values must be 1-d arrays of equal length")
        object.__setattr__(self, "years", years)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.years)

    def __eq__(self, other):
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return (
            self.name == other.name
            and self.unit == other.unit
            and np.array_equal(self.years, other.years)
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.years.tolist(), self.values.tolist()))

    def value_at(self, year: float) -> float:
        idx = np.flatnonzero(self.years == year)
        if idx.size == 0:
            raise KeyError(year)
        return float(self.values[idx[0]])

    def window(self, first: float | None = None, last: float | None = None) -> "TimeSeries":
        """Sub-series with ``first <= year <= last`` (either bound optional)."""
        mask = np.ones(len(self.years), dtype=bool)
        if first is not None:
            mask &= self.years >= first
        if last is not None:
            mask &= self.years <= last
        return TimeSeries(self.name, self.unit, self.years[mask], self.values[mask])

    def peak_index(self) -> int:
        """Index of the maximum value (first occurrence)."""
        return int(np.argmax(self.values))


@dataclass(frozen=True)
class Issue:
    row: int
    kind: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    """Result of :func:`validate_series`.

    ``issues`` are invariant violations; ``warnings`` (gap years) never
    affect ``ok``.
    """

    issues: tuple[Issue, ...] = ()
    warnings: tuple[Issue, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.issues


def validate_series(series: TimeSeries) -> ValidationReport:
    issues = []
    warnings = []
    years, values = series.years, series.values
    if len(years) < MIN_POINTS:
        issues.append(Issue(-1, "too_few_points", f"{len(years)} points, need at least {MIN_POINTS}"))
    for i, (y, v) in enumerate(zip(years, values)):
        if not (math.isfinite(y) and math.isfinite(v)):
            issues.append(Issue(i, "non_finite", f"non-finite entry ({y}, {v})"))
            continue
        if v <= 0:
            issues.append(Issue(i, "non_positive", f"value {v!r} at year {y!r} is not positive"))
    for i in range(1, len(years)):
        step = years[i] - years[i - 1]
        if step == 0:
            issues.append(Issue(i, "duplicate_year", f"year {years[i]!r} repeated"))
        elif step < 0:
            issues.append(Issue(i, "unsorted", f"year {years[i]!r} follows {years[i - 1]!r}"))
        elif step > 1 and float(years[i]).is_integer() and float(years[i - 1]).is_integer():
            warnings.append(Issue(i, "gap", f"{int(step) - 1} missing year(s) before {years[i]:g}"))
    return ValidationReport(tuple(issues), tuple(warnings))


def _data_lines(text: str):
    """Yield (line_number, line) skipping blank and '#' comment lines."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, line


def _parse_number(raw: str, what: str, lineno: int) -> float:
    try:
        x = float(raw)
    except (TypeError, ValueError):
        raise SeriesError(f"non-numeric {what} {raw!r}", row=lineno) from None
    if not math.isfinite(x):
        raise SeriesError(f"non-finite {what} {raw!r}", row=lineno)
    return x


def load_series(
    path,
    year_col: str = "year",
    value_col: str = "value",
    unit: str = "billions of 2005 USD",
    scale: float = 1.0,
    name: str | None = None,
) -> TimeSeries:
    """Read a CSV file into a validated :class:`TimeSeries`.

    Rows are sorted by year, values multiplied by ``scale``. Raises
    :class:`SeriesError` (with the offending file line where applicable)
    for a missing file, malformed CSV, non-numeric cells, duplicate years,
    non-positive values or fewer than five rows.
    """
    path = Path(path)
    if not path.is_file():
        raise SeriesError(f"file not found: {path}")
    text = path.read_text(encoding="utf-8-sig")
    lines = list(_data_lines(text))
    if not lines:
        raise SeriesError(f"{path}: no header row")

    header_lineno, header_line = lines[0]
    try:
        header = next(csv.reader([header_line]))
    except csv.Error as exc:
        raise SeriesError(f"malformed header: {exc}", row=header_lineno) from None
    header = [h.strip() for h in header]
    for col in (year_col, value_col):
        if col not in header:
            raise SeriesError(f"column {col!r} not in header {header}", row=header_lineno)
    iy, iv = header.index(year_col), header.index(value_col)

    rows = []
    reader = csv.reader(io.StringIO("\n".join(line for _, line in lines[1:])), strict=True)
    linenos = [n for n, _ in lines[1:]]
    try:
        for lineno, cells in zip(linenos, reader):
            if len(cells) != len(header):
                raise SeriesError(f"expected {len(header)} fields, got {len(cells)}", row=lineno)
            year = _parse_number(cells[iy].strip(), "year", lineno)
            value = _parse_number(cells[iv].strip(), "value", lineno) * scale
            if not value > 0:
                raise SeriesError(f"non-positive value {value!r} after scaling", row=lineno)
            rows.append((year, value, lineno))
    except csv.Error as exc:
        raise SeriesError(f"malformed CSV: {exc}") from None

    rows.sort(key=lambda r: r[0])
    for prev, cur in zip(rows, rows[1:]):
        if cur[0] == prev[0]:
            raise SeriesError(f"duplicate year {cur[0]:g} (also on line {prev[2]})", row=cur[2])
    if len(rows) < MIN_POINTS:
        raise SeriesError(f"too few points: {len(rows)} rows, need at least {MIN_POINTS}")

    return TimeSeries(
        name=name if name is not None else path.stem,
        unit=unit,
        years=[r[0] for r in rows],
        values=[r[1] for r in rows],
    )


def write_series(series: TimeSeries, path, year_col: str = "year", value_col: str = "value") -> None:
    """Write a series as CSV using round-trip float formatting."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([year_col, value_col])
        for y, v in series.points:
            writer.writerow([repr(y), repr(v)])


def bundled_greece_path() -> Path:
    """Path of the bundled Greece GDP snapshot (billions of 2005 USD, 1960-2014)."""
    return Path(str(resources.files("growthwarn") / "data" / "greece_gdp.csv"))
