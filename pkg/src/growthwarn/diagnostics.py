"""Early-warning assessment: runs the rate / phase / regime / trajectory
pipeline on one series and turns the result into flags and a narrative."""

from __future__ import annotations

import math
from collections import namedtuple
from dataclasses import dataclass, field

import numpy as np

from .errors import GrowthError
from .rates import (
    PhaseSeries,
    RateCycle,
    RateSeries,
    direct_growth_rate,
    phase_series,
    rate_cycle_stats,
    refined_growth_rate,
    sign_changes,
)
from .regime import (
    LinearRateModel,
    RegimeClass,
    RegimeKind,
    classify_regime,
    detect_segments,
    fit_linear_rate_on_size,
)
from .series import TimeSeries
from .trajectory import TrajectoryModel, anchor_trajectory, logistic_asymptote, singularity_time

DEFAULT_DEGREE = 3
MIN_SEGMENT = 3
LINEAR_ASCENT_R2 = 0.8
REVERSAL_MIN_POINTS = 2
INSTABILITY_HALF_WIDTH = 3

RATE_DECLINE_TOO_FAST = "RATE_DECLINE_TOO_FAST"
RATE_FLOOR_BREACH = "RATE_FLOOR_BREACH"
REGIME_FLIP = "REGIME_FLIP"
LINEAR_ASCENT = "LINEAR_ASCENT"
SINGULARITY_PROXIMITY = "SINGULARITY_PROXIMITY"
REVERSAL_LOOP = "REVERSAL_LOOP"
FLAG_ORDER = (
    RATE_DECLINE_TOO_FAST,
    RATE_FLOOR_BREACH,
    REGIME_FLIP,
    LINEAR_ASCENT,
    SINGULARITY_PROXIMITY,
    REVERSAL_LOOP,
)


@dataclass(frozen=True)
class WarningThresholds:
    """Alarm levels. All are judgement calls, not estimates.

    fold_decrease_alarm: peak-to-trough rate ratio counted as "too fast".
    singularity_horizon_years: how close (after the last observation) a
        singularity must be to count as imminent.
    min_rate_floor: refined growth rate (1/year) below which the trough is
        "intolerably low".
    significance: slope must clear this many standard errors to count.
    min_ascent_span: an ascending trend must cover at least this fraction of
        the analysed size range; shorter "ascents" are edge artefacts of the
        smoothing polynomial.
    """

    fold_decrease_alarm: float = 5.0
    singularity_horizon_years: float = 15.0
    min_rate_floor: float = 0.005
    significance: float = 2.0
    min_ascent_span: float = 0.25

    def __post_init__(self):
        for name, value in vars(self).items():
            if not value > 0:
                raise ValueError(f"threshold {name} must be positive, got {value!r}")


@dataclass(frozen=True)
class RegimeFit:
    regime: RegimeClass
    model: LinearRateModel


@dataclass(frozen=True, eq=False)
class WarningReport:
    series_name: str
    unit: str
    degree: int
    last_year: float
    peak_year: float
    breakpoint_year: float | None
    descending: RegimeFit
    ascending: RegimeFit | None
    asymptote: float | None
    singularity_year: float | None
    years_to_singularity_at_data_end: float | None
    rate_cycle: RateCycle
    reversal_points: int
    flags: tuple[str, ...]
    narrative: str
    # pipeline intermediates, kept for CSV/plot output
    first_segment: LinearRateModel = field(repr=False)
    second_segment: LinearRateModel = field(repr=False)
    full_rates: RateSeries = field(repr=False)
    direct_rates: RateSeries = field(repr=False)
    analysed_phase: PhaseSeries = field(repr=False)
    post_peak_phase: PhaseSeries = field(repr=False)
    ascending_trajectory: TrajectoryModel | None = field(default=None, repr=False)
    logistic_trajectory: TrajectoryModel | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        def fit(rf):
            if rf is None:
                return None
            m = rf.model
            return {
                "a": m.a,
                "b": m.b,
                "a_stderr": m.a_stderr,
                "b_stderr": m.b_stderr,
                "r2": m.r_squared,
                "window": [m.window[0], m.window[1]],
                "n_points": m.n_points,
            }

        rc = self.rate_cycle
        return {
            "series": self.series_name,
            "unit": self.unit,
            "degree": self.degree,
            "breakpoint_year": self.breakpoint_year,
            "descending_fit": fit(self.descending),
            "ascending_fit": fit(self.ascending),
            "regimes": {
                "descending": self.descending.regime.kind.value,
                "ascending": self.ascending.regime.kind.value if self.ascending else None,
            },
            "asymptote": self.asymptote,
            "singularity_year": self.singularity_year,
            "years_to_singularity_at_data_end": self.years_to_singularity_at_data_end,
            "rate_cycle": {
                "fold_decrease": rc.fold_decrease,
                "fold_increase": rc.fold_increase,
                "min": rc.min,
                "year_of_min": rc.year_of_min,
            },
            "reversal_points": self.reversal_points,
            "flags": list(self.flags),
            "narrative": self.narrative,
        }


def _parse_window(spec) -> tuple[float, float]:
    first, last = spec
    return float(first), float(last)


def early_warning_report(
    series: TimeSeries,
    degree: int = DEFAULT_DEGREE,
    thresholds: WarningThresholds | None = None,
    segments=None,
) -> WarningReport:
    """Full assessment of one series.

    The regime analysis uses the span up to the series maximum (the
    pre-collapse span): the refined rate is re-estimated on that span alone
    so the later collapse cannot bend the smoothing polynomial, and its two
    endpoint years are left out of the fits. ``segments`` optionally gives
    explicit ``((first, last), (first, last))`` year windows instead of the
    automatic breakpoint search.
    """
    th = thresholds or WarningThresholds()
    full = refined_growth_rate(series, degree)
    direct = direct_growth_rate(series)

    peak = series.peak_index()
    pre = series.window(last=series.years[peak])
    if len(pre) < max(degree + 2, 2 * MIN_SEGMENT + 2):
        raise GrowthError(
            f"only {len(pre)} points up to the series maximum; too few for degree {degree}"
        )
    pre_rates = refined_growth_rate(pre, degree)
    pre_phase = phase_series(pre, pre_rates)
    analysed = pre_phase.slice(1, len(pre_phase) - 1)

    if segments is None:
        split = detect_segments(analysed, MIN_SEGMENT)
        desc_model, asc_model = split.descending, split.ascending
        breakpoint_year = split.breakpoint_year
    else:
        w1, w2 = (_parse_window(w) for w in segments)
        desc_model = fit_linear_rate_on_size(pre_phase, w1)
        asc_model = fit_linear_rate_on_size(pre_phase, w2)
        breakpoint_year = w2[0]

    desc_regime = classify_regime(desc_model, th.significance)
    asc_regime = classify_regime(asc_model, th.significance)
    size_range = float(analysed.sizes.max() - analysed.sizes.min())
    ascent_fraction = asc_model.x_span / size_range if size_range > 0 else 0.0

    notes = []
    ascending = None
    if asc_regime.kind is RegimeKind.EXPONENTIAL:
        ascending = RegimeFit(asc_regime, asc_model)
    elif asc_regime.kind is RegimeKind.PSEUDO_HYPERBOLIC:
        if ascent_fraction >= th.min_ascent_span:
            ascending = RegimeFit(asc_regime, asc_model)
        else:
            notes.append(
                f"A rising rate after {breakpoint_year:g} spans only {ascent_fraction:.1%} of the "
                "size range and is treated as a smoothing edge effect."
            )
    descending = RegimeFit(desc_regime, desc_model)
    turnaround = ascending is not None and ascending.regime.kind is RegimeKind.PSEUDO_HYPERBOLIC

    asymptote = None
    logistic_traj = None
    if desc_regime.kind is RegimeKind.LOGISTIC and desc_model.a > 0:
        asymptote = logistic_asymptote(desc_model)
        logistic_traj = anchor_trajectory(
            desc_model, (series.years[0], series.values[0]), "logistic", series.unit
        )

    last_year = float(series.years[-1])
    peak_year = float(series.years[peak])
    sing_year = None
    to_sing = None
    asc_traj = None
    if turnaround:
        asc_traj = anchor_trajectory(
            asc_model, (peak_year, float(series.values[peak])), "pseudo-hyperbolic", series.unit
        )
        sing_year = singularity_time(asc_traj)
        if sing_year is not None:
            to_sing = sing_year - last_year

    cycle = rate_cycle_stats(pre_rates)

    post_idx = np.arange(peak + 1, len(series))
    post_phase = PhaseSeries(series.years[post_idx], series.values[post_idx], full.rates[post_idx])
    reversal = 0
    if turnaround and len(post_phase):
        # a loop only exists relative to a rising trend
        reversal = int(np.sum(post_phase.rates < asc_model.predict(post_phase.sizes)))

    flags = []
    # Decline speed and trough depth describe a fall-trough-rise cycle; a rate
    # that only falls is the logistic approach to a limit, not a warning.
    if turnaround and cycle.fold_decrease is not None and cycle.fold_decrease >= th.fold_decrease_alarm:
        flags.append(RATE_DECLINE_TOO_FAST)
    if turnaround and cycle.min < th.min_rate_floor:
        flags.append(RATE_FLOOR_BREACH)
    if desc_regime.kind is RegimeKind.LOGISTIC and turnaround:
        flags.append(REGIME_FLIP)
    if turnaround and asc_model.r_squared >= LINEAR_ASCENT_R2:
        flags.append(LINEAR_ASCENT)
    if to_sing is not None and to_sing <= th.singularity_horizon_years:
        flags.append(SINGULARITY_PROXIMITY)
    if reversal >= REVERSAL_MIN_POINTS:
        flags.append(REVERSAL_LOOP)

    instability = _instability_note(direct, cycle)
    narrative = _narrative(
        series, degree, descending, ascending, breakpoint_year, asymptote, sing_year,
        to_sing, cycle, reversal, flags, notes, instability,
    )
    return WarningReport(
        series_name=series.name,
        unit=series.unit,
        degree=degree,
        last_year=last_year,
        peak_year=peak_year,
        breakpoint_year=breakpoint_year,
        descending=descending,
        ascending=ascending,
        asymptote=asymptote,
        singularity_year=sing_year,
        years_to_singularity_at_data_end=to_sing,
        rate_cycle=cycle,
        reversal_points=reversal,
        flags=tuple(flags),
        narrative=narrative,
        first_segment=desc_model,
        second_segment=asc_model,
        full_rates=full,
        direct_rates=direct,
        analysed_phase=analysed,
        post_peak_phase=post_phase,
        ascending_trajectory=asc_traj,
        logistic_trajectory=logistic_traj,
    )


def _instability_note(direct: RateSeries, cycle: RateCycle) -> str:
    y0 = cycle.year_of_min
    near = direct.window(y0 - INSTABILITY_HALF_WIDTH, y0 + INSTABILITY_HALF_WIDTH)
    if len(near) < 3:
        return ""
    flips = sign_changes(np.diff(near.rates))
    return (
        f"Around the rate minimum ({y0:g} +/- {INSTABILITY_HALF_WIDTH}) the direct rate changes "
        f"direction {flips} time(s)."
    )


def _fmt(x, spec=".4g"):
    return "n/a" if x is None else format(x, spec)


def _line(m) -> str:
    sign = "-" if m.b < 0 else "+"
    return f"{m.a:.4g} {sign} {abs(m.b):.4g} S"


def _narrative(series, degree, descending, ascending, breakpoint_year, asymptote, sing_year,
               to_sing, cycle, reversal, flags, notes, instability) -> str:
    d = descending.model
    parts = [
        f"{series.name}: {len(series)} observations {series.years[0]:g}-{series.years[-1]:g} "
        f"({series.unit}); refined rate from a degree-{degree} log-polynomial.",
        f"Early trend ({d.window[0]:g}-{d.window[1]:g}): R = {_line(d)}, "
        f"r2 = {d.r_squared:.3f}, regime {descending.regime.kind.value}"
        + (f", limit {asymptote:.4g}." if asymptote is not None else "."),
    ]
    if ascending is not None:
        m = ascending.model
        parts.append(
            f"Later trend ({m.window[0]:g}-{m.window[1]:g}, break at {breakpoint_year:g}): "
            f"R = {_line(m)}, r2 = {m.r_squared:.3f}, regime {ascending.regime.kind.value}."
        )
    else:
        parts.append("No rising trend in the growth rate.")
    parts.append(
        f"Rate fell from {cycle.max_before_min:.4g} to {cycle.min:.4g} in {cycle.year_of_min:g} "
        f"(x{_fmt(cycle.fold_decrease, '.3g')}), then rose to {cycle.max_after_min:.4g} "
        f"(x{_fmt(cycle.fold_increase, '.3g')})."
    )
    if sing_year is not None:
        parts.append(
            f"Continuing the later trend, S diverges in {sing_year:.2f}, "
            f"{to_sing:.1f} years after the last observation."
        )
    if reversal:
        parts.append(f"{reversal} post-peak point(s) lie below the rising trend.")
    if instability:
        parts.append(instability)
    parts.extend(notes)
    parts.append("Flags: " + (", ".join(flags) if flags else "none") + ".")
    return " ".join(parts)


ForecastRow = namedtuple("ForecastRow", "year size label")

PSEUDO_LABEL = "pseudo_hyperbolic"
DIVERGED_LABEL = "pseudo_hyperbolic_singularity"
EXPONENTIAL_LABEL = "exponential"


def forecast_scenarios(
    series: TimeSeries,
    ascending: TrajectoryModel,
    horizon_years: float,
    contrast_rate: float | None = None,
    degree: int = DEFAULT_DEGREE,
) -> list[ForecastRow]:
    """Yearly projections from the ascending trajectory's anchor.

    The pseudo-hyperbolic rows stop before the singularity, which is then
    marked by one row of size ``inf``. The exponential contrast grows at
    ``contrast_rate`` or, if omitted, at the refined rate observed at the
    anchor year.
    """
    if not horizon_years > 0:
        raise GrowthError("horizon must be positive")
    t0 = ascending.t_ref
    grid = t0 + np.arange(1, int(math.floor(horizon_years + 1e-9)) + 1, dtype=float)
    ts = singularity_time(ascending)

    rows = []
    for year in grid:
        if ts is not None and year >= ts:
            rows.append(ForecastRow(ts, math.inf, DIVERGED_LABEL))
            break
        rows.append(ForecastRow(float(year), float(ascending(year)), PSEUDO_LABEL))

    if contrast_rate is None:
        upto = series.window(last=t0)
        contrast_rate = float(refined_growth_rate(upto, degree).rates[-1])
    for year in grid:
        rows.append(
            ForecastRow(float(year), ascending.s_ref * math.exp(contrast_rate * (year - t0)), EXPONENTIAL_LABEL)
        )
    return rows
