"""Full pipeline on the bundled Greece snapshot; prints the headline numbers.

    python scripts/run_greece.py [--degree 3] [--segments 1961:1987,1988:2006]
"""

import argparse

from growthwarn import (
    RateLaw,
    anchor_trajectory,
    bundled_greece_path,
    early_warning_report,
    load_series,
    logistic_asymptote,
    singularity_time,
)
from growthwarn.cli import parse_segments

PUBLISHED_DESC = RateLaw(1.553e-1, -9.112e-4)
PUBLISHED_ASC = RateLaw(-6.424e-2, 4.839e-4)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--degree", type=int, default=3)
    ap.add_argument("--segments", default="auto")
    args = ap.parse_args()

    series = load_series(bundled_greece_path(), name="Greece")
    rep = early_warning_report(series, args.degree, segments=parse_segments(args.segments))
    s60, s07 = series.value_at(1960), series.value_at(2007)
    print(f"S(1960) = {s60:.2f}  S(2007) = {s07:.2f}  ratio {s07 / s60:.2f}")
    print(f"breakpoint {rep.breakpoint_year:g}")
    for label, fit in (("descending", rep.descending), ("ascending", rep.ascending)):
        if fit is None:
            print(f"{label:>10}: none")
            continue
        m = fit.model
        print(f"{label:>10}: a = {m.a:+.5f} ± {m.a_stderr:.5f}  b = {m.b:+.4e} ± {m.b_stderr:.1e}  "
              f"r2 = {m.r_squared:.3f}  {m.window[0]:g}-{m.window[1]:g}  -> {fit.regime.kind.value}")
    if rep.asymptote is not None:
        print(f"asymptote {rep.asymptote:.2f} (published constants {logistic_asymptote(PUBLISHED_DESC):.2f})")
    ts_pub = singularity_time(anchor_trajectory(PUBLISHED_ASC, (2007, 271.0)))
    ts = f"{rep.singularity_year:.2f}" if rep.singularity_year is not None else "none"
    print(f"singularity {ts} (published constants at (2007, 271): {ts_pub:.2f})")
    c = rep.rate_cycle
    print(f"rate cycle: fold decrease {c.fold_decrease:.2f}, fold increase {c.fold_increase}, minimum {c.year_of_min:g}")
    print(f"reversal points {rep.reversal_points}")
    print("flags:", ", ".join(rep.flags) or "none")
    print()
    print(rep.narrative)


if __name__ == "__main__":
    main()
