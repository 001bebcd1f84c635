"""Sensitivity of the Greece report to the log-polynomial degree.

    python scripts/degree_sweep.py [--max-degree 8]
"""

import argparse

from growthwarn import bundled_greece_path, early_warning_report, load_series


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-degree", type=int, default=8)
    args = ap.parse_args()
    series = load_series(bundled_greece_path(), name="Greece")
    print(f"{'deg':>3} {'break':>5} {'a_desc':>8} {'b_desc':>10} {'a_asc':>8} {'b_asc':>10} "
          f"{'r2_asc':>6} {'t_s':>8} {'fold-':>6} {'fold+':>6}  flags")
    for d in range(1, args.max_degree + 1):
        try:
            rep = early_warning_report(series, d)
        except ValueError as exc:
            print(f"{d:>3} error: {exc}")
            continue
        de, asc = rep.first_segment, rep.second_segment
        ts = f"{rep.singularity_year:8.2f}" if rep.singularity_year is not None else f"{'-':>8}"
        c = rep.rate_cycle
        fi = f"{c.fold_increase:6.2f}" if c.fold_increase is not None else f"{'-':>6}"
        print(f"{d:>3} {rep.breakpoint_year:5g} {de.a:8.4f} {de.b:10.3e} {asc.a:8.4f} {asc.b:10.3e} "
              f"{asc.r_squared:6.3f} {ts} {c.fold_decrease:6.2f} {fi}  {' '.join(rep.flags)}")


if __name__ == "__main__":
    main()
