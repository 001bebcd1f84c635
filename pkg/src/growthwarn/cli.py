"""Command line: ``growthwarn {rates,phase,report}``.

Every subcommand writes its CSV/JSON outputs first and SVG figures last,
so a plotting failure never leaves a half-written data file behind.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .diagnostics import (
    DEFAULT_DEGREE,
    WarningThresholds,
    early_warning_report,
    forecast_scenarios,
)
from .errors import GrowthError
from .rates import direct_growth_rate, refined_growth_rate
from .series import bundled_greece_path, load_series
from .svg import Chart


@dataclass
class RunConfig:
    input: Path
    year_col: str = "year"
    value_col: str = "value"
    scale: float = 1.0
    unit: str = "billions of 2005 USD"
    name: str | None = None
    degree: int = DEFAULT_DEGREE
    segments: tuple | None = None  # None means automatic breakpoint search
    thresholds: WarningThresholds = field(default_factory=WarningThresholds)
    out_dir: Path = Path("out")
    plots: bool = True
    forecast_horizon: float = 10.0

    def __post_init__(self):
        if self.degree < 1:
            raise GrowthError("degree must be >= 1")


def parse_segments(text: str):
    """``"auto"`` -> None; ``"1960:1987,1988:2007"`` -> ((1960, 1987), (1988, 2007))."""
    if text is None or text.strip().lower() == "auto":
        return None
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise GrowthError(f"--segments needs two ranges, got {text!r}")
    windows = []
    for p in parts:
        try:
            lo, hi = (float(x) for x in p.split(":"))
        except ValueError:
            raise GrowthError(f"bad year range {p!r}; expected FIRST:LAST") from None
        if hi < lo:
            raise GrowthError(f"empty year range {p!r}")
        windows.append((lo, hi))
    return tuple(windows)


def _fmt(x) -> str:
    return repr(float(x))


def _write_csv(path: Path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _load(cfg: RunConfig):
    return load_series(
        cfg.input, year_col=cfg.year_col, value_col=cfg.value_col,
        unit=cfg.unit, scale=cfg.scale, name=cfg.name,
    )


def _report(cfg: RunConfig, series):
    return early_warning_report(series, cfg.degree, cfg.thresholds, cfg.segments)


def _fit_json(m):
    return {
        "a": m.a, "b": m.b, "a_stderr": m.a_stderr, "b_stderr": m.b_stderr,
        "r2": m.r_squared, "window": list(m.window), "n_points": m.n_points,
    }


def cmd_rates(cfg: RunConfig) -> int:
    series = _load(cfg)
    direct = direct_growth_rate(series)
    refined = refined_growth_rate(series, cfg.degree)
    pre = series.window(last=series.years[series.peak_index()])
    pre_refined = refined_growth_rate(pre, cfg.degree) if len(pre) >= cfg.degree + 2 else None
    pre_col = dict(zip(pre.years.tolist(), pre_refined.rates.tolist())) if pre_refined else {}

    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    _write_csv(
        cfg.out_dir / "rates.csv",
        ["year", "direct_rate", "refined_rate", "refined_pre_peak_rate"],
        [
            (_fmt(y), _fmt(d), _fmt(r), _fmt(pre_col[y]) if y in pre_col else "")
            for y, d, r in zip(series.years.tolist(), direct.rates, refined.rates)
        ],
    )
    if cfg.plots:
        chart = Chart(f"Growth rate: {series.name}", "year", "growth rate (1/year)")
        chart.points(series.years, direct.rates, label="R (direct)", color="#888888")
        chart.line(series.years, refined.rates, label=f"R (refined, degree {cfg.degree}, all years)",
                   color="#d62728", dash="6,3")
        if pre_refined is not None:
            chart.line(pre.years, pre_refined.rates, label="R (refined, up to peak)", color="#1f77b4")
        chart.save(cfg.out_dir / "fig_rates.svg")
    return 0


def cmd_phase(cfg: RunConfig) -> int:
    series = _load(cfg)
    rep = _report(cfg, series)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    ph, post = rep.analysed_phase, rep.post_peak_phase
    w1, w2 = rep.first_segment.window, rep.second_segment.window
    rows = []
    for y, s, r in zip(ph.years, ph.sizes, ph.rates):
        seg = "first" if w1[0] <= y <= w1[1] else "second" if w2[0] <= y <= w2[1] else "unfitted"
        rows.append((_fmt(y), _fmt(s), _fmt(r), seg))
    for y, s, r in zip(post.years, post.sizes, post.rates):
        rows.append((_fmt(y), _fmt(s), _fmt(r), "post_peak"))
    _write_csv(cfg.out_dir / "phase.csv", ["year", "size", "rate", "segment"], rows)
    fits = {
        "breakpoint_year": rep.breakpoint_year,
        "first": _fit_json(rep.first_segment),
        "second": _fit_json(rep.second_segment),
    }
    (cfg.out_dir / "phase_fits.json").write_text(json.dumps(fits, indent=2) + "\n", encoding="utf-8")

    if cfg.plots:
        chart = Chart(f"Growth rate vs size: {series.name}", f"size ({series.unit})", "refined growth rate (1/year)")
        chart.line(ph.sizes, ph.rates, color="#bbbbbb", width=1.0)
        chart.points(ph.sizes, ph.rates, label="refined R up to peak", color="#1f77b4")
        if len(post):
            chart.points(post.sizes, post.rates, label="after peak", color="#ff7f0e")
        for m, label, color in (
            (rep.first_segment, "first trend", "#2ca02c"),
            (rep.second_segment, "second trend", "#d62728"),
        ):
            sel = ph.window(*m.window)
            xs = np.array([sel.sizes.min(), sel.sizes.max()])
            chart.line(xs, m.predict(xs), label=f"{label}: b = {m.b:.3g}", color=color)
        if rep.breakpoint_year in set(ph.years.tolist()):
            chart.vline(float(ph.sizes[ph.years == rep.breakpoint_year][0]), label=f"break {rep.breakpoint_year:g}")
        chart.save(cfg.out_dir / "fig_phase.svg")
    return 0


def cmd_report(cfg: RunConfig) -> int:
    series = _load(cfg)
    rep = _report(cfg, series)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    payload = json.dumps(rep.to_dict(), indent=2, allow_nan=False) + "\n"
    (cfg.out_dir / "report.json").write_text(payload, encoding="utf-8")

    if rep.ascending_trajectory is not None:
        rows = forecast_scenarios(series, rep.ascending_trajectory, cfg.forecast_horizon, degree=cfg.degree)
        _write_csv(
            cfg.out_dir / "forecast.csv",
            ["year", "size", "scenario"],
            [(_fmt(r.year), "inf" if math.isinf(r.size) else _fmt(r.size), r.label) for r in rows],
        )

    if cfg.plots:
        _trajectory_figure(rep, series).save(cfg.out_dir / "fig_trajectory.svg")
    return 0


def _trajectory_figure(rep, series) -> Chart:
    y0, y1 = float(series.years[0]), float(series.years[-1])
    top = 1.6 * float(series.values.max())
    chart = Chart(f"Trajectories: {series.name}", "year", series.unit)
    chart.points(series.years, series.values, label="data", color="#333333", radius=2.5)
    if rep.logistic_trajectory is not None:
        grid = np.linspace(y0, y1 + 10, 400)
        chart.line(grid, rep.logistic_trajectory(grid), label=f"logistic (limit {rep.asymptote:.4g})", color="#2ca02c")
    if rep.ascending_trajectory is not None:
        traj = rep.ascending_trajectory
        start = rep.second_segment.window[0]
        end = rep.singularity_year if rep.singularity_year is not None else y1 + 10
        grid = np.linspace(start, end, 600)[:-1]
        vals = traj(grid)
        vals = np.where((vals > 0) & (vals <= top), vals, np.nan)
        chart.line(grid, vals, label="pseudo-hyperbolic", color="#d62728")
        if rep.singularity_year is not None:
            chart.vline(rep.singularity_year, label=f"singularity {rep.singularity_year:.1f}", color="#d62728")
    chart.ylim = (0.0, top)
    return chart


COMMANDS = {"rates": cmd_rates, "phase": cmd_phase, "report": cmd_report}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="growthwarn", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", type=Path, default=None,
                        help="CSV file (default: bundled Greece GDP snapshot)")
    common.add_argument("--year-col", default="year")
    common.add_argument("--value-col", default="value")
    common.add_argument("--scale", type=float, default=1.0, help="multiply values by this factor")
    common.add_argument("--unit", default="billions of 2005 USD")
    common.add_argument("--name", default=None, help="series name (default: file stem)")
    common.add_argument("--degree", type=int, default=DEFAULT_DEGREE, help="log-polynomial degree")
    common.add_argument("--segments", default="auto", help='"auto" or "FIRST:LAST,FIRST:LAST"')
    common.add_argument("--out-dir", type=Path, default=Path("out"))
    common.add_argument("--no-plots", action="store_true")
    d = WarningThresholds()
    common.add_argument("--fold-alarm", type=float, default=d.fold_decrease_alarm)
    common.add_argument("--horizon", type=float, default=d.singularity_horizon_years)
    common.add_argument("--rate-floor", type=float, default=d.min_rate_floor)
    common.add_argument("--significance", type=float, default=d.significance)
    common.add_argument("--min-ascent-span", type=float, default=d.min_ascent_span)
    common.add_argument("--forecast-horizon", type=float, default=10.0)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("rates", parents=[common], help="direct and refined growth rates (rates.csv, fig_rates.svg)")
    sub.add_parser("phase", parents=[common], help="rate vs size with two fitted trends (phase.csv, fig_phase.svg)")
    sub.add_parser("report", parents=[common], help="early-warning report (report.json, fig_trajectory.svg)")
    return parser


def config_from_args(args) -> RunConfig:
    return RunConfig(
        input=args.input if args.input is not None else bundled_greece_path(),
        year_col=args.year_col,
        value_col=args.value_col,
        scale=args.scale,
        unit=args.unit,
        name=args.name if args.name is not None else ("Greece" if args.input is None else None),
        degree=args.degree,
        segments=parse_segments(args.segments),
        thresholds=WarningThresholds(
            fold_decrease_alarm=args.fold_alarm,
            singularity_horizon_years=args.horizon,
            min_rate_floor=args.rate_floor,
            significance=args.significance,
            min_ascent_span=args.min_ascent_span,
        ),
        out_dir=args.out_dir,
        plots=not args.no_plots,
        forecast_horizon=args.forecast_horizon,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        return COMMANDS[args.command](cfg)
    except (GrowthError, ValueError, OSError) as exc:
        print(f"growthwarn {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
