"""Command-line entry point.

Every subcommand writes a comma-separated table (one header row, floats with
17 significant digits) to ``--out`` or stdout.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import warnings
from typing import Iterable, List, Sequence

from kzspectra.adaptive import AdaptiveSpec, smooth_with_cis, summary_top
from kzspectra.bounds import ci_comparison_curves, truncation_bounds
from kzspectra.core import FrequencyGrid, TimeSeries, to_radian
from kzspectra.inference import p_value_greater, p_value_less
from kzspectra.kzft import raw_periodogram
from kzspectra.protocol import run_two_step
from kzspectra.simulation import NoiseSpec, SignalSpec, generate_series
from kzspectra.static import ALL_KINDS, StaticWindowSpec, WindowKind, static_smoothed_log_periodogram

WINDOW_CHOICES = ["rectangular", "hamming", "hanning", "bartlett", "parzen"]


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(int(x))
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def write_table(header: Sequence[str], rows: Iterable[Sequence], out) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    text = buf.getvalue()
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def read_series(path: str, no_header: bool = False) -> TimeSeries:
    """CSV with one column (value) or two (index, value); header optional."""
    fh = sys.stdin if path == "-" else open(path, newline="")
    try:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    finally:
        if fh is not sys.stdin:
            fh.close()
    if not rows:
        raise ValueError(f"{path}: no data rows")
    if not no_header:
        try:
            float(rows[0][-1])
        except ValueError:
            rows = rows[1:]
    values = []
    for lineno, r in enumerate(rows, start=1):
        if len(r) not in (1, 2):
            raise ValueError(f"{path}: row {lineno} has {len(r)} columns, expected 1 or 2")
        values.append(float(r[-1]))
    return TimeSeries(values)


def _adaptive(args) -> AdaptiveSpec:
    return AdaptiveSpec(
        method=args.method,
        smooth_level=args.smooth_level,
        alpha=args.alpha,
        log_scale=not args.linear,
        min_window=args.min_window,
        df_convention=args.df_convention,
    )


def _smoothed_rows(sp):
    for i in range(len(sp.grid)):
        yield (
            float(sp.frequencies[i]),
            float(sp.ordinates[i]),
            float(sp.ci_lower[i]),
            float(sp.ci_upper[i]),
            int(sp.half_widths[i]),
            int(sp.realized_lengths[i]),
            bool(sp.floor_flags[i]),
        )


SMOOTH_HEADER = ["frequency", "ordinate", "ci_lower", "ci_upper", "half_width", "realized_length", "floor_flag"]


def cmd_simulate(args):
    freqs = args.freq or []
    amps = args.amp or []
    if len(freqs) != len(amps):
        raise ValueError("--freq and --amp must be given the same number of times")
    phases = args.phase or [0.0] * len(freqs)
    if len(phases) != len(freqs):
        raise ValueError("--phase must be given once per signal")
    signals = [SignalSpec(f, a, p) for f, a, p in zip(freqs, amps, phases)]
    y = generate_series(args.n, signals, NoiseSpec(args.noise, args.seed, args.noise_kind))
    write_table(["index", "value"], ((t + 1, float(v)) for t, v in enumerate(y.values)), args.out)


def cmd_periodogram(args):
    raw = raw_periodogram(read_series(args.input, args.no_header), args.m, args.k)
    write_table(["frequency", "ordinate"], zip(map(float, raw.frequencies), map(float, raw.ordinates)), args.out)


def cmd_smooth(args):
    raw = raw_periodogram(read_series(args.input, args.no_header), args.m, args.k)
    sp = smooth_with_cis(raw, _adaptive(args))
    write_table(SMOOTH_HEADER, _smoothed_rows(sp), args.out)
    if args.plot:
        from kzspectra.plotting import render_plot

        render_plot(sp, args.plot)


def cmd_static(args):
    y = read_series(args.input, args.no_header)
    spec = StaticWindowSpec(args.window, args.truncation_m)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        sp = static_smoothed_log_periodogram(y, spec, FrequencyGrid.for_window(args.m), args.alpha)
    if sp.floor_count:
        print(f"warning: {sp.floor_count} nonpositive lag-window estimates floored", file=sys.stderr)
    write_table(SMOOTH_HEADER, _smoothed_rows(sp), args.out)
    if args.plot:
        from kzspectra.plotting import render_plot

        render_plot(sp, args.plot)


def cmd_summary(args):
    raw = raw_periodogram(read_series(args.input, args.no_header), args.m, args.k)
    sp = smooth_with_cis(raw, _adaptive(args))
    peaks = summary_top(sp, digits=args.digits, top=args.top)
    # rounded values are printed as-is rather than re-expanded to 17 digits
    show = (lambda v: "" if v is None else f"{v:.{args.digits}g}") if args.digits else (lambda v: v)
    write_table(
        ["frequency", "period", "ordinate", "ci_lower", "ci_upper"],
        ([show(v) for v in (p.frequency, p.period, p.ordinate, p.ci_lower, p.ci_upper)] for p in peaks),
        args.out,
    )


def _gap(args) -> float:
    if args.gap_rad is not None:
        return args.gap_rad
    if args.gap is not None:
        return to_radian(args.gap)
    return math.pi


def cmd_bounds(args):
    kinds = [WindowKind.parse(args.window)] if args.window else list(ALL_KINDS)
    gap = _gap(args)
    rows = []
    for kind in kinds:
        r = truncation_bounds(kind, args.n, gap)
        rows.append((kind.value, r.n, r.delta_lambda, r.lower_M, r.upper_M, r.feasible, r.M_min, r.M_median, r.M_max))
    write_table(["window", "n", "delta_lambda", "lower_M", "upper_M", "feasible", "M_min", "M_median", "M_max"], rows, args.out)


def cmd_compare_ci(args):
    rows = ci_comparison_curves(args.n, args.pos, args.alpha)
    write_table(["series", "level", "window", "dof", "width"], ((r.series, r.level, r.window, r.dof, r.width) for r in rows), args.out)
    if args.plot:
        from kzspectra.plotting import render_ci_comparison

        render_ci_comparison(rows, args.plot, title=f"n = {args.n}, PoS = {args.pos:g}")


def cmd_pvalue(args):
    write_table(["greater", "less"], [(p_value_greater(args.f1, args.f2, args.nu), p_value_less(args.f1, args.f2, args.nu))], args.out)


def cmd_protocol(args):
    y = read_series(args.input, args.no_header)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        rep = run_two_step(y, _adaptive(args), args.m, args.k, args.window, args.alpha, args.top)
    chosen = f"{rep.chosen[0].value}:{rep.chosen[1]}" if rep.chosen else "dynamic"
    rows = []
    for d, s in zip(rep.detected, rep.strengths):
        rows.append((
            s.frequency, d.ordinate, d.ci_lower, d.ci_upper, chosen, s.amplitude,
            s.log_ordinate, s.log_ci[0], s.log_ci[1], s.amplitude_ci[0], s.amplitude_ci[1], rep.fallback_used,
        ))
    print(f"min_gap_rad={rep.min_gap:.17g} fallback={int(rep.fallback_used)} chosen={chosen}", file=sys.stderr)
    write_table(
        ["frequency", "dynamic_ordinate", "dynamic_ci_lower", "dynamic_ci_upper", "estimator", "amplitude",
         "log_ordinate", "log_ci_lower", "log_ci_upper", "amplitude_ci_lower", "amplitude_ci_upper", "fallback"],
        rows,
        args.out,
    )
    if args.plot:
        from kzspectra.plotting import render_plot

        render_plot(rep.static if rep.static is not None else rep.dynamic, args.plot)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kzspectra", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common_out(p):
        p.add_argument("--out", default=None, help="output CSV path (default stdout)")

    def series_in(p):
        p.add_argument("input", help="CSV series file, or - for stdin")
        p.add_argument("--no-header", action="store_true", help="first row is data")

    def kz(p):
        p.add_argument("--m", type=int, default=500, help="KZFT window width")
        p.add_argument("--k", type=int, default=1, help="KZFT iterations")

    def adaptive(p):
        p.add_argument("--method", type=str.upper, choices=["DZ", "NZ"], default="DZ")
        p.add_argument("--smooth-level", type=float, default=0.05)
        p.add_argument("--alpha", type=float, default=0.05)
        p.add_argument("--linear", action="store_true", help="smooth raw ordinates instead of logs")
        p.add_argument("--min-window", type=int, choices=[1, 3], default=1)
        p.add_argument("--df-convention", choices=["realized", "nominal"], default="realized")

    p = sub.add_parser("simulate", help="sinusoids plus seeded noise")
    p.add_argument("--n", type=int, default=5000)
    p.add_argument("--freq", type=float, action="append", help="signal frequency (repeatable)")
    p.add_argument("--amp", type=float, action="append", help="signal amplitude (repeatable)")
    p.add_argument("--phase", type=float, action="append", help="signal phase in radians (repeatable)")
    p.add_argument("--noise", type=float, default=16.0, help="noise amplitude")
    p.add_argument("--noise-kind", choices=["uniform", "normal"], default="uniform")
    p.add_argument("--seed", type=int, default=0)
    common_out(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("periodogram", help="raw KZ periodogram")
    series_in(p); kz(p); common_out(p)
    p.set_defaults(func=cmd_periodogram)

    p = sub.add_parser("smooth", help="DZ/NZ smoothed log-periodogram with CIs")
    series_in(p); kz(p); adaptive(p); common_out(p)
    p.add_argument("--plot", default=None, help="SVG output path")
    p.set_defaults(func=cmd_smooth)

    p = sub.add_parser("static", help="lag-window log-periodogram with CIs")
    series_in(p)
    p.add_argument("--m", type=int, default=500, help="grid is j/m, j = 0..m/2")
    p.add_argument("--window", choices=WINDOW_CHOICES, default="parzen")
    p.add_argument("--truncation-m", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--plot", default=None, help="SVG output path")
    common_out(p)
    p.set_defaults(func=cmd_static)

    p = sub.add_parser("summary", help="top peaks of the smoothed periodogram")
    series_in(p); kz(p); adaptive(p); common_out(p)
    p.add_argument("--top", type=int, default=5)
    p.add_argument("--digits", type=int, default=None)
    p.set_defaults(func=cmd_summary)

    p = sub.add_parser("bounds", help="truncation-point bounds per static window")
    p.add_argument("--window", choices=WINDOW_CHOICES, default=None)
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--gap-rad", type=float, default=None, help="closest peak gap, radians")
    g.add_argument("--gap", type=float, default=None, help="closest peak gap, cycles per sample")
    common_out(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("compare-ci", help="dynamic vs static CI widths")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pos", type=float, required=True, help="proportion of smoothness")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--plot", default=None, help="SVG output path")
    common_out(p)
    p.set_defaults(func=cmd_compare_ci)

    p = sub.add_parser("pvalue", help="p-values comparing two smoothed ordinates")
    p.add_argument("--f1", type=float, required=True)
    p.add_argument("--f2", type=float, required=True)
    p.add_argument("--nu", type=float, required=True)
    common_out(p)
    p.set_defaults(func=cmd_pvalue)

    p = sub.add_parser("protocol", help="detect with dynamic smoothing, size with a static window")
    series_in(p); kz(p); adaptive(p); common_out(p)
    p.add_argument("--window", choices=WINDOW_CHOICES, default="parzen")
    p.add_argument("--top", type=int, default=2)
    p.add_argument("--plot", default=None, help="SVG output path")
    p.set_defaults(func=cmd_protocol)
    return parser


def main(argv: List[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (ValueError, OSError) as exc:
        print(f"kzspectra {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
