import csv
import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from growthwarn.cli import main, parse_segments
from growthwarn.errors import GrowthError
from growthwarn import RateLaw, anchor_trajectory, eval_trajectory
from conftest import DESC


def write_csv(path, years, values):
    with open(path, "w") as fh:
        fh.write("year,value\n")
        for y, v in zip(years, values):
            fh.write(f"{int(y)},{float(v)!r}\n")
    return path


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_rates_bundled(tmp_path):
    assert main(["rates", "--out-dir", str(tmp_path)]) == 0
    rows = read_rows(tmp_path / "rates.csv")
    assert [int(float(r["year"])) for r in rows] == list(range(1960, 2015))
    ET.parse(tmp_path / "fig_rates.svg")


def test_rates_exponential_constant(tmp_path):
    t = np.arange(1990, 2020)
    src = write_csv(tmp_path / "e.csv", t, 10 * np.exp(0.03 * (t - 1990)))
    assert main(["rates", "--input", str(src), "--out-dir", str(tmp_path), "--no-plots"]) == 0
    rows = read_rows(tmp_path / "rates.csv")
    for r in rows:
        assert float(r["direct_rate"]) == pytest.approx(0.03, abs=1e-9)
        assert float(r["refined_rate"]) == pytest.approx(0.03, abs=1e-9)
    assert not (tmp_path / "fig_rates.svg").exists()


def test_too_few_points_fails(tmp_path, capsys):
    src = write_csv(tmp_path / "short.csv", [2000, 2001], [1.0, 2.0])
    assert main(["rates", "--input", str(src), "--out-dir", str(tmp_path)]) != 0
    assert "too few" in capsys.readouterr().err


def test_missing_file_fails(tmp_path, capsys):
    assert main(["report", "--input", str(tmp_path / "nope.csv"), "--out-dir", str(tmp_path)]) == 1
    assert "error" in capsys.readouterr().err


def test_phase_bundled(tmp_path):
    assert main(["phase", "--out-dir", str(tmp_path)]) == 0
    fits = json.loads((tmp_path / "phase_fits.json").read_text())
    assert fits["first"]["b"] < 0 < fits["second"]["b"]
    segs = {r["segment"] for r in read_rows(tmp_path / "phase.csv")}
    assert {"first", "second", "post_peak"} <= segs
    ET.parse(tmp_path / "fig_phase.svg")


def _ode_series(a_of_s, s0, years):
    # integrate dS/dt = S * R(S) finely so the refined rate traces R(S)
    s, out, t = s0, [], years[0]
    for y in years:
        while t < y - 1e-12:
            h = min(0.001, y - t)
            s += h * s * a_of_s(s)
            t += h
        out.append(s)
    return np.array(out)


def test_phase_v_shape_breakpoint(tmp_path):
    years = np.arange(1950, 1990)
    rate = lambda s: 0.12 - 0.001 * s if s < 60 else 0.06 + 0.0004 * (s - 60)
    vals = _ode_series(rate, 10.0, years)
    assert vals[-1] < 1e4
    src = write_csv(tmp_path / "v.csv", years, vals)
    assert main(["phase", "--input", str(src), "--out-dir", str(tmp_path), "--no-plots", "--degree", "6"]) == 0
    fits = json.loads((tmp_path / "phase_fits.json").read_text())
    junction = years[np.argmax(vals >= 60)]
    assert abs(fits["breakpoint_year"] - junction) <= 3
    assert fits["first"]["b"] < 0 < fits["second"]["b"]


def test_phase_single_line_collinear(tmp_path):
    years = np.arange(1960, 2000)
    vals = eval_trajectory(anchor_trajectory(RateLaw(0.05, 0.0), (1960, 20.0)), years).values
    src = write_csv(tmp_path / "line.csv", years, vals)
    assert main(["phase", "--input", str(src), "--out-dir", str(tmp_path), "--no-plots"]) == 0
    fits = json.loads((tmp_path / "phase_fits.json").read_text())
    for seg in ("first", "second"):
        assert fits[seg]["a"] == pytest.approx(0.05, abs=1e-9)
        assert fits[seg]["b"] == pytest.approx(0.0, abs=1e-9)


def test_report_bundled_deterministic(tmp_path):
    d1, d2 = tmp_path / "r1", tmp_path / "r2"
    args = ["report", "--forecast-horizon", "15", "--out-dir"]
    assert main(args + [str(d1)]) == 0
    assert main(args + [str(d2)]) == 0
    b1, b2 = (d1 / "report.json").read_bytes(), (d2 / "report.json").read_bytes()
    assert b1 == b2
    rep = json.loads(b1)
    assert 2017 <= rep["singularity_year"] <= 2019
    assert rep["asymptote"] == pytest.approx(170, abs=25)
    assert "REGIME_FLIP" in rep["flags"]
    rows = read_rows(d1 / "forecast.csv")
    assert any(r["scenario"] == "pseudo_hyperbolic_singularity" and r["size"] == "inf" for r in rows)
    ET.parse(d1 / "fig_trajectory.svg")


def test_report_logistic_null_singularity(tmp_path):
    years = np.arange(1960, 2015)
    vals = eval_trajectory(anchor_trajectory(DESC, (1960, 44.7)), years).values
    src = write_csv(tmp_path / "logi.csv", years, vals)
    assert main(["report", "--input", str(src), "--out-dir", str(tmp_path)]) == 0
    text = (tmp_path / "report.json").read_text()
    assert '"singularity_year": null' in text
    assert json.loads(text)["flags"] == []
    assert not (tmp_path / "forecast.csv").exists()
    ET.parse(tmp_path / "fig_trajectory.svg")


def test_explicit_segments(tmp_path):
    assert main(["phase", "--segments", "1961:1987,1988:2006", "--out-dir", str(tmp_path), "--no-plots"]) == 0
    fits = json.loads((tmp_path / "phase_fits.json").read_text())
    assert fits["first"]["window"] == [1961, 1987]
    assert fits["second"]["window"] == [1988, 2006]


def test_parse_segments():
    assert parse_segments("auto") is None
    assert parse_segments("1960:1987, 1988:2007") == ((1960, 1987), (1988, 2007))
    for bad in ("1960:1987", "1960-1987,1988:2007", "1990:1980,1991:2000"):
        with pytest.raises(GrowthError):
            parse_segments(bad)
