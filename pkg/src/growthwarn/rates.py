"""Empirical growth rate R = (1/S) dS/dt and its (size, rate) phase plane."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from .errors import GrowthError
from .series import TimeSeries


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class RateSeries:
    """Growth rate per year (1/year), tagged with how it was estimated.

    ``method`` is ``"direct"`` or ``"refined"``; refined series carry the
    polynomial ``degree``.
    """

    method: str
    years: np.ndarray
    rates: np.ndarray
    degree: int | None = None

    def __post_init__(self):
        if self.method not in ("direct", "refined"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.method == "refined" and (self.degree is None or self.degree < 1):
            raise ValueError("refined rates need degree >= 1")
        years, rates = _frozen(self.years), _frozen(self.rates)
        if years.shape != rates.shape:
            raise ValueError("years and rates differ in length")
        if np.any(np.diff(years) <= 0):
            raise ValueError("rate years must be strictly increasing")
        object.__setattr__(self, "years", years)
        object.__setattr__(self, "rates", rates)

    def __len__(self):
        return len(self.years)

    @property
    def label(self) -> str:
        return "direct" if self.method == "direct" else f"refined(deg={self.degree})"

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.years.tolist(), self.rates.tolist()))

    def window(self, first=None, last=None) -> "RateSeries":
        mask = np.ones(len(self.years), dtype=bool)
        if first is not None:
            mask &= self.years >= first
        if last is not None:
            mask &= self.years <= last
        return RateSeries(self.method, self.years[mask], self.rates[mask], self.degree)


@dataclass(frozen=True, eq=False)
class PhaseSeries:
    """(size, rate) pairs ordered by year; the loop in this plane is the point."""

    years: np.ndarray
    sizes: np.ndarray
    rates: np.ndarray

    def __post_init__(self):
        for name in ("years", "sizes", "rates"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        if not (self.years.shape == self.sizes.shape == self.rates.shape):
            raise ValueError("phase arrays differ in length")

    def __len__(self):
        return len(self.years)

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.sizes.tolist(), self.rates.tolist()))

    def window(self, first=None, last=None) -> "PhaseSeries":
        mask = np.ones(len(self.years), dtype=bool)
        if first is not None:
            mask &= self.years >= first
        if last is not None:
            mask &= self.years <= last
        return PhaseSeries(self.years[mask], self.sizes[mask], self.rates[mask])

    def slice(self, start: int, stop: int) -> "PhaseSeries":
        return PhaseSeries(self.years[start:stop], self.sizes[start:stop], self.rates[start:stop])


def direct_growth_rate(series: TimeSeries) -> RateSeries:
    """Finite-difference growth rate of ``ln S``.

    Interior points use the central difference over the actual year span
    (so gaps are fine); the two endpoints use one-sided differences.
    """
    t = series.years
    if len(t) < 3:
        raise GrowthError(f"direct growth rate needs at least 3 points, got {len(t)}")
    log_s = np.log(series.values)
    r = np.empty_like(log_s)
    r[1:-1] = (log_s[2:] - log_s[:-2]) / (t[2:] - t[:-2])
    r[0] = (log_s[1] - log_s[0]) / (t[1] - t[0])
    r[-1] = (log_s[-1] - log_s[-2]) / (t[-1] - t[-2])
    return RateSeries("direct", t, r)


def log_polynomial(series: TimeSeries, degree: int) -> Polynomial:
    """Least-squares polynomial fit of ``ln S`` against year.

    The fit runs in years mapped onto [-1, 1], which keeps degree ~6 fits
    over half a century well conditioned.
    """
    if degree < 1:
        raise GrowthError(f"degree must be >= 1, got {degree}")
    if len(series) < degree + 2:
        raise GrowthError(
            f"degree {degree} needs at least {degree + 2} points, series has {len(series)}"
        )
    return Polynomial.fit(series.years, np.log(series.values), degree)


def refined_growth_rate(series: TimeSeries, degree: int) -> RateSeries:
    """Growth rate from the analytic derivative of a global log-polynomial fit."""
    poly = log_polynomial(series, degree)
    rates = poly.deriv()(series.years)
    return RateSeries("refined", series.years, rates, degree=degree)


def phase_series(series: TimeSeries, rates: RateSeries) -> PhaseSeries:
    if len(series) != len(rates) or not np.array_equal(series.years, rates.years):
        raise GrowthError("series and rates cover different years")
    return PhaseSeries(series.years, series.values, rates.rates)


@dataclass(frozen=True)
class RateCycle:
    """Fall-minimum-rise summary of a rate curve.

    Fold ratios are ``None`` when the minimum rate is not positive.
    """

    max_before_min: float
    min: float
    max_after_min: float
    fold_decrease: float | None
    fold_increase: float | None
    year_of_min: float
    index_of_min: int

    @property
    def interior_minimum(self) -> bool:
        return self.max_before_min > self.min and self.max_after_min > self.min


def rate_cycle_stats(rates: RateSeries) -> RateCycle:
    r = rates.rates
    if len(r) == 0:
        raise GrowthError("empty rate series")
    i = int(np.argmin(r))
    lo = float(r[i])
    before = float(r[: i + 1].max())
    after = float(r[i:].max())
    if lo > 0:
        fold_dec, fold_inc = before / lo, after / lo
    else:
        fold_dec = fold_inc = None
    return RateCycle(
        max_before_min=before,
        min=lo,
        max_after_min=after,
        fold_decrease=fold_dec,
        fold_increase=fold_inc,
        year_of_min=float(rates.years[i]),
        index_of_min=i,
    )


def sign_changes(values) -> int:
    """Number of sign changes in a sequence, ignoring exact zeros."""
    signs = [math.copysign(1.0, v) for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)
