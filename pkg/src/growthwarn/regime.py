"""Linear growth-rate laws R = a + b*x, two-segment breakpoint search and
regime classification (logistic / exponential / pseudo-hyperbolic)."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import FitError
from .rates import PhaseSeries, RateSeries

# A slope whose total effect across the fitted range is below this (1/year)
# is numerically zero.
FLAT_RATE_TOL = 1e-9


@dataclass(frozen=True)
class LinearRateModel:
    """Least-squares line ``rate = a + b * x``.

    For size regressions ``a`` is in 1/year and ``b`` in 1/(year * size
    unit). For time regressions ``b`` is in 1/year**2 and ``a`` is the rate
    at ``origin``.
    """

    a: float
    b: float
    a_stderr: float
    b_stderr: float
    r_squared: float
    window: tuple[float, float]
    n_points: int
    x_span: float
    sse: float
    regressor: str = "size"
    origin: float = 0.0

    def predict(self, x):
        return self.a + self.b * (np.asarray(x, dtype=float) - self.origin)


def _ols(x: np.ndarray, y: np.ndarray):
    """Centred simple regression. Returns (a, b, se_a, se_b, r2, sse)."""
    n = len(x)
    xm, ym = x.mean(), y.mean()
    dx, dy = x - xm, y - ym
    sxx = float(dx @ dx)
    if sxx == 0.0 or not np.isfinite(sxx):
        raise FitError("degenerate design: all regressor values identical")
    b = float(dx @ dy) / sxx
    a = float(ym - b * xm)
    resid = dy - b * dx
    sse = float(resid @ resid)
    sst = float(dy @ dy)
    s2 = sse / (n - 2) if n > 2 else 0.0
    se_b = math.sqrt(s2 / sxx)
    se_a = math.sqrt(s2 * (1.0 / n + xm * xm / sxx))
    if sst > 0:
        r2 = min(1.0, max(0.0, 1.0 - sse / sst))
    else:
        r2 = 1.0
    return a, b, se_a, se_b, r2, sse


def _select(years, window):
    if window is None:
        return np.ones(len(years), dtype=bool)
    first, last = window
    return (years >= first) & (years <= last)


def _fit(x, y, years, regressor, origin=0.0) -> LinearRateModel:
    n = len(x)
    if n < 3:
        raise FitError(f"need at least 3 points in the fit window, got {n}")
    a, b, se_a, se_b, r2, sse = _ols(x - origin, y)
    return LinearRateModel(
        a=a,
        b=b,
        a_stderr=se_a,
        b_stderr=se_b,
        r_squared=r2,
        window=(float(years[0]), float(years[-1])),
        n_points=n,
        x_span=float(x.max() - x.min()),
        sse=sse,
        regressor=regressor,
        origin=origin,
    )


def fit_linear_rate_on_size(phase: PhaseSeries, window=None) -> LinearRateModel:
    """OLS of rate on size over the phase points whose year lies in ``window``
    (inclusive ``(first, last)``; ``None`` means all points)."""
    m = _select(phase.years, window)
    return _fit(phase.sizes[m], phase.rates[m], phase.years[m], "size")


def fit_linear_rate_on_time(rates: RateSeries, window=None, origin=None) -> LinearRateModel:
    """OLS of rate on calendar year; the intercept is reported at ``origin``
    (default: first year in the window)."""
    m = _select(rates.years, window)
    years = rates.years[m]
    if origin is None:
        origin = float(years[0]) if len(years) else 0.0
    return _fit(years, rates.rates[m], years, "time", origin=float(origin))


@dataclass(frozen=True)
class SegmentSplit:
    breakpoint_year: float
    descending: LinearRateModel
    ascending: LinearRateModel
    total_sse: float


def detect_segments(phase: PhaseSeries, min_segment: int = 3) -> SegmentSplit:
    """Best two-line split of the phase points, by exhaustive sweep.

    Candidate ``k`` puts points ``[0, k)`` in the first segment and
    ``[k, n)`` in the second; ``breakpoint_year`` is the first year of the
    second segment. SSE values equal up to rounding are treated as ties and
    resolved toward the earlier breakpoint.
    """
    if min_segment < 3:
        raise FitError("min_segment must be at least 3")
    n = len(phase)
    if n < 2 * min_segment:
        raise FitError(f"need at least {2 * min_segment} phase points, got {n}")

    candidates = []
    for k in range(min_segment, n - min_segment + 1):
        try:
            left = fit_linear_rate_on_size(phase.slice(0, k))
            right = fit_linear_rate_on_size(phase.slice(k, n))
        except FitError:
            continue
        candidates.append((left.sse + right.sse, k, left, right))
    if not candidates:
        raise FitError("no admissible breakpoint (degenerate sizes on every split)")

    tol = 1e-12 * float(np.sum(phase.rates**2))
    best_sse = min(c[0] for c in candidates)
    sse, k, left, right = next(c for c in candidates if c[0] <= best_sse + tol)
    return SegmentSplit(
        breakpoint_year=float(phase.years[k]), descending=left, ascending=right, total_sse=sse
    )


class RegimeKind(str, enum.Enum):
    LOGISTIC = "logistic"
    EXPONENTIAL = "exponential"
    PSEUDO_HYPERBOLIC = "pseudo_hyperbolic"


@dataclass(frozen=True)
class RegimeClass:
    kind: RegimeKind
    confidence_note: str


def classify_regime(model: LinearRateModel, significance: float = 2.0) -> RegimeClass:
    """Sign of the slope, counted only when it clears ``significance``
    standard errors (and is not numerically flat)."""
    b, se = model.b, model.b_stderr
    band = f"b = {b:.4g} +/- {significance:g} x {se:.3g}"
    if abs(b) * model.x_span < FLAT_RATE_TOL:
        return RegimeClass(RegimeKind.EXPONENTIAL, f"{band}; slope numerically flat")
    if b + significance * se < 0:
        return RegimeClass(RegimeKind.LOGISTIC, f"{band}; rate falls with size")
    if b - significance * se > 0:
        return RegimeClass(RegimeKind.PSEUDO_HYPERBOLIC, f"{band}; rate rises with size")
    return RegimeClass(RegimeKind.EXPONENTIAL, f"{band}; slope not significant")
