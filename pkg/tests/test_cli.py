import csv
import io
import math
import re

import numpy as np
import pytest

from kzspectra.adaptive import AdaptiveSpec, smooth_with_cis
from kzspectra.cli import main, read_series
from kzspectra.kzft import raw_periodogram
from kzspectra.plotting import plot_document, render_plot
from kzspectra.simulation import NoiseSpec, SignalSpec, generate_series


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def table(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_bounds_parzen(capsys):
    rc, out, _ = run(capsys, "bounds", "--window", "parzen", "--n", "5000", "--gap-rad", "3.14159265")
    assert rc == 0
    row = table(out)[0]
    assert float(row["lower_M"]) == pytest.approx(3.7, abs=1e-6)
    assert float(row["upper_M"]) == pytest.approx(3083.33, abs=0.01)
    assert row["feasible"] == "1"


def test_bounds_all_windows_with_cycle_gap(capsys):
    rc, out, _ = run(capsys, "bounds", "--n", "5000", "--gap", "0.02")
    rows = table(out)
    assert rc == 0 and len(rows) == 5
    assert float(rows[0]["delta_lambda"]) == pytest.approx(0.125664, abs=1e-6)


def test_pvalue(capsys):
    rc, out, _ = run(capsys, "pvalue", "--f1", "1.0", "--f2", "1.0", "--nu", "2")
    row = table(out)[0]
    assert float(row["greater"]) == pytest.approx(0.63212, abs=1e-5)
    assert float(row["less"]) == pytest.approx(0.36788, abs=1e-5)


def test_compare_ci_small(capsys, tmp_path):
    svg = tmp_path / "fig.svg"
    rc, out, _ = run(capsys, "compare-ci", "--n", "1000", "--pos", "0.01", "--plot", str(svg))
    rows = table(out)
    assert [int(r["window"]) for r in rows if r["series"] == "dynamic"] == [3, 5, 7, 9]
    assert len(rows) == 4 + 15
    assert svg.read_text().lstrip().startswith("<?xml")


def test_errors_give_nonzero_exit(capsys):
    rc, out, err = run(capsys, "bounds", "--n", "5000", "--gap-rad", "4")
    assert rc == 1
    assert err.count("\n") == 1 and "error" in err


def test_simulate_roundtrip(capsys, tmp_path):
    path = tmp_path / "y.csv"
    rc, _, _ = run(capsys, "simulate", "--n", "2000", "--freq", "0.2", "--amp", "3", "--noise", "4", "--seed", "5",
                   "--out", str(path))
    assert rc == 0
    y = read_series(str(path))
    mem = generate_series(2000, [SignalSpec(0.2, 3)], NoiseSpec(4, 5))
    np.testing.assert_array_equal(y.values, mem.values)

    rc, out, _ = run(capsys, "periodogram", str(path), "--m", "100")
    rows = table(out)
    raw = raw_periodogram(mem, 100, 1)
    np.testing.assert_array_equal([float(r["ordinate"]) for r in rows], raw.ordinates)
    np.testing.assert_array_equal([float(r["frequency"]) for r in rows], raw.frequencies)


def test_output_is_byte_stable(capsys, tmp_path):
    path = tmp_path / "y.csv"
    run(capsys, "simulate", "--n", "1000", "--freq", "0.1", "--amp", "2", "--seed", "1", "--out", str(path))
    outs = [run(capsys, "smooth", str(path), "--m", "100")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    header = outs[0].splitlines()[0]
    assert header == "frequency,ordinate,ci_lower,ci_upper,half_width,realized_length,floor_flag"


def test_read_series_variants(tmp_path):
    one = tmp_path / "one.csv"
    one.write_text("1.5\n2.5\n3.5\n")
    assert read_series(str(one)).values.tolist() == [1.5, 2.5, 3.5]
    two = tmp_path / "two.csv"
    two.write_text("index,value\n1,4\n2,5\n")
    assert read_series(str(two)).values.tolist() == [4, 5]
    with pytest.raises(ValueError):
        read_series(str(two), no_header=True)
    nan = tmp_path / "nan.csv"
    nan.write_text("1\nnan\n3\n")
    with pytest.raises(ValueError, match="index 1"):
        read_series(str(nan))


def test_summary_and_static_and_protocol(capsys, tmp_path):
    path = tmp_path / "y.csv"
    run(capsys, "simulate", "--n", "5000", "--freq", "0.4", "--amp", "8", "--freq", "0.38", "--amp", "4",
        "--seed", "3", "--out", str(path))
    rc, out, _ = run(capsys, "summary", str(path), "--top", "2", "--digits", "3")
    rows = table(out)
    assert rc == 0
    assert [r["frequency"] for r in rows] == ["0.4", "0.38"]
    assert rows[0]["period"] == "2.5"

    svg = tmp_path / "static.svg"
    rc, out, _ = run(capsys, "static", str(path), "--window", "bartlett", "--truncation-m", "100", "--plot", str(svg))
    rows = table(out)
    widths = {round(float(r["ci_upper"]) - float(r["ci_lower"]), 12) for r in rows}
    assert rc == 0 and len(widths) == 1 and svg.exists()

    rc, out, err = run(capsys, "protocol", str(path), "--window", "parzen")
    rows = table(out)
    assert rc == 0 and len(rows) == 2
    assert "fallback=0" in err
    assert rows[0]["estimator"].startswith("parzen:")


def test_plot_document_and_svg(tmp_path):
    y = generate_series(5000, [SignalSpec(0.444, 3.58)], NoiseSpec(16, 0))
    sp = smooth_with_cis(raw_periodogram(y, 500), AdaptiveSpec())
    doc = plot_document(sp)
    assert doc.shift == pytest.approx(np.mean(sp.ordinates))
    np.testing.assert_allclose(doc.upper - doc.center, sp.ci_upper - sp.ordinates, atol=1e-12)
    assert doc.ylim == (pytest.approx(doc.lower.min() - 1), pytest.approx(doc.upper.max() + 1))
    assert doc.xlabel == "Frequency" and doc.ylabel == ""
    # the band is widest on the signal (neighbouring bins may tie)
    i = sp.grid.nearest_index(0.444)
    assert sp.ci_widths[i] == sp.ci_widths.max()
    assert sp.ci_widths[i] > np.median(sp.ci_widths)

    path = tmp_path / "p.svg"
    render_plot(sp, path)
    text = path.read_text()
    for colour in ("#000000", "#0000ff", "#ff0000"):
        assert colour in text


def test_plot_constant_is_flat():
    from kzspectra.core import FrequencyGrid, RawPeriodogram

    raw = RawPeriodogram(FrequencyGrid.for_window(40), np.full(21, 2.0), 40, 1)
    doc = plot_document(smooth_with_cis(raw, AdaptiveSpec()))
    np.testing.assert_allclose(doc.center, 0, atol=1e-12)
