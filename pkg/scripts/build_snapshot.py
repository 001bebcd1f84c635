"""Regenerate src/growthwarn/data/greece_gdp.csv.

Source: World Bank GDP (constant 2000 US$) for Greece as shipped in the R
package dslabs (``gapminder`` table), read through the ``rdatasets`` wheel.
That table ends in 2011; 2012-2014 are extended with World Bank annual real
growth rates. Values are rebased to constant 2005 US$ with a single factor.

    pip install rdatasets
    python scripts/build_snapshot.py
"""

from pathlib import Path

import rdatasets

# Greece nominal GDP in 2005 (current US$, WDI) divided by the 2005 value of
# the constant-2000 series (151.65e9).
REBASE_2000_TO_2005 = 1.634
# WDI real GDP growth, % per year (series ends 2011 in the source table).
EXTENSION_GROWTH = {2012: -7.3, 2013: -3.2, 2014: 0.7}

OUT = Path(__file__).resolve().parents[1] / "src" / "growthwarn" / "data" / "greece_gdp.csv"


def main():
    df = rdatasets.data("dslabs", "gapminder")
    g = df[(df.country == "Greece") & df.gdp.notna()].sort_values("year")
    rows = [(int(y), v * REBASE_2000_TO_2005 / 1e9) for y, v in zip(g.year, g.gdp)]
    for year, pct in sorted(EXTENSION_GROWTH.items()):
        assert rows[-1][0] == year - 1
        rows.append((year, rows[-1][1] * (1 + pct / 100)))

    header = [
        "# Greece GDP, billions of constant 2005 US$, 1960-2014.",
        "# 1960-2011: World Bank NY.GDP.MKTP.KD (constant 2000 US$) via R dslabs::gapminder,",
        f"#   rebased to 2005 US$ by x{REBASE_2000_TO_2005}.",
        "# 2012-2014: extended from 2011 with WDI real growth rates "
        + ", ".join(f"{y}: {p:+.1f}%" for y, p in EXTENSION_GROWTH.items()) + ".",
        "# Regenerate with scripts/build_snapshot.py.",
        "year,value",
    ]
    body = [f"{y},{v:.6f}" for y, v in rows]
    OUT.write_text("\n".join(header + body) + "\n", encoding="utf-8")
    print(f"wrote {len(rows)} rows to {OUT}")


if __name__ == "__main__":
    main()
