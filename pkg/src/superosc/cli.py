"""Command-line front end.

Subcommands
-----------
approximate   fit a target on an interval, write FitResult JSON and a CSV
synthesize    build a spectrum with a prescribed local rate
analyze       local rates, cumulants and classification of a spectrum
energy        fractional energy on an interval against the rate bound
basis-dump    tabulate basis functions

Exit codes are 0 on success, 2 for configuration errors and 3 for
numerical failures. ``SUPEROSC_RCOND`` overrides the default rcond.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import approx, basis, energy, shift, spectrum
from .errors import (
    CoverageError,
    DegenerateSpectrumError,
    DomainError,
    InvalidBandError,
    InvalidIntervalError,
    NodeError,
    NumericalError,
)

__all__ = [
    "main",
    "build_parser",
    "JobConfig",
    "classify",
    "parse_target",
    "parse_complex",
    "dumps",
    "EXIT_CONFIG",
    "EXIT_NUMERICAL",
]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
CONTEXT_FACTOR = 6.0
RCOND_ENV = "SUPEROSC_RCOND"


class ConfigError(Exception):
    pass


class NumericalFailure(Exception):
    pass


@dataclass(frozen=True)
class JobConfig:
    """Validated settings for one ``approximate`` run."""

    geometry: str
    target: approx.TargetFunction
    interval: tuple[float, float]
    terms: int
    rcond: float
    sample_count: int
    output_path: str | None = None
    spacing: float | None = None

    def __post_init__(self):
        a, b = self.interval
        if not (math.isfinite(a) and math.isfinite(b) and a < b):
            raise ConfigError(f"interval [{a}, {b}] is not well ordered")
        if self.terms < 1:
            raise ConfigError("terms must be at least 1")
        if self.geometry == "periodic" and self.terms < 2:
            raise ConfigError("the periodic geometry needs at least 2 terms")
        if not 0 < self.rcond < 1:
            raise ConfigError("rcond must lie in (0, 1)")
        if self.sample_count < 2:
            raise ConfigError("sample_count must be at least 2")


# ---------------------------------------------------------------------------
# Formatting


def _fmt(x):
    x = float(x)
    if not math.isfinite(x):
        raise NumericalFailure("non-finite value in output")
    if x == 0:
        return "0.0"
    s = format(x, ".17g")
    return s if any(ch in s for ch in ".e") else s + ".0"


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) for v in seq):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + _encode(v, indent, level + 1) for v in seq) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj, indent=2):
    """JSON text with every float at 17 significant digits."""
    return _encode(obj, indent, 0) + "\n"


def _csv_text(header, columns):
    columns = [np.asarray(c, dtype=float) for c in columns]
    for c in columns:
        if not np.all(np.isfinite(c)):
            raise NumericalFailure("non-finite value in CSV output")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in zip(*columns):
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _complex_pair(z):
    z = complex(z)
    return [z.real, z.imag]


def _emit(args, payload, csv_text=None):
    text = dumps(payload)
    if args.output:
        with open(args.output + ".json", "w", encoding="utf-8") as fh:
            fh.write(text)
        if csv_text is not None:
            with open(args.output + ".csv", "w", encoding="utf-8") as fh:
                fh.write(csv_text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Parsing helpers


def parse_complex(text):
    """Parse ``3``, ``-2.5i``, ``0+10i`` or ``1-2j`` into a complex number."""
    s = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise ConfigError(f"cannot parse complex value {text!r}") from None


def _read_table(path):
    coords, values = [], []
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            for row in csv.reader(fh):
                if not row or row[0].lstrip().startswith("#"):
                    continue
                try:
                    nums = [float(v) for v in row]
                except ValueError:
                    if coords:
                        raise ConfigError(f"bad row {row!r} in {path}") from None
                    continue  # header
                if len(nums) not in (2, 3):
                    raise ConfigError(f"rows of {path} need 2 or 3 columns")
                coords.append(nums[0])
                values.append(complex(nums[1], nums[2] if len(nums) == 3 else 0.0))
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    try:
        return approx.TargetFunction.tabulated(coords, values)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


_TARGETS = {
    "cos": approx.TargetFunction.cosine,
    "exp": approx.TargetFunction.exponential,
    "cexp": approx.TargetFunction.complex_exponential,
    "step": approx.TargetFunction.unit_step,
    "radial-cos": approx.TargetFunction.radial_cosine,
    "radial-exp": approx.TargetFunction.radial_exponential,
}


def parse_target(text):
    """Target from ``cos:A``, ``exp:A``, ``cexp:S``, ``step:T0``,
    ``radial-cos:A``, ``radial-exp:A`` or ``table:PATH``."""
    name, sep, arg = text.partition(":")
    if not sep or not arg:
        raise ConfigError(f"target {text!r} is not of the form NAME:VALUE")
    if name == "table":
        return _read_table(arg)
    if name not in _TARGETS:
        raise ConfigError(f"unknown target {name!r}")
    try:
        value = float(arg)
    except ValueError:
        raise ConfigError(f"bad target parameter {arg!r}") from None
    if not math.isfinite(value):
        raise ConfigError("target parameter must be finite")
    return _TARGETS[name](value)


def _default_rcond():
    env = os.environ.get(RCOND_ENV)
    if env is None:
        return approx.DEFAULT_RCOND
    try:
        return float(env)
    except ValueError:
        raise ConfigError(f"{RCOND_ENV}={env!r} is not a number") from None


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from None


def _load_spectrum(path):
    d = _load_json(path)
    try:
        return spectrum.LegendreSpectrum.from_dict(d)
    except (KeyError, TypeError, ValueError, InvalidBandError) as exc:
        raise ConfigError(f"invalid spectrum in {path}: {exc}") from None


def _orders(tokens):
    out = []
    for tok in tokens:
        lo, sep, hi = tok.partition("..")
        try:
            out.extend(range(int(lo), int(hi) + 1) if sep else [int(lo)])
        except ValueError:
            raise ConfigError(f"bad order {tok!r}") from None
    if not out or min(out) < 0:
        raise ConfigError("orders must be nonnegative integers")
    return out


# ---------------------------------------------------------------------------
# Commands


def _context_grid(geometry, a, b, count):
    mid, half = 0.5 * (a + b), 0.5 * (b - a) * CONTEXT_FACTOR
    lo, hi = mid - half, mid + half
    if geometry == "radial" and lo <= 0:
        # keep rho = 0 out: radial targets are singular there
        lo = hi / (2 * count)
    return np.linspace(lo, hi, count)


def cmd_approximate(args):
    rcond = args.rcond if args.rcond is not None else _default_rcond()
    config = JobConfig(
        geometry=args.geometry,
        target=parse_target(args.target),
        interval=(args.interval[0], args.interval[1]),
        terms=args.terms,
        rcond=rcond,
        sample_count=args.sample_count,
        output_path=args.output,
        spacing=args.spacing,
    )
    a, b = config.interval
    if config.geometry == "line":
        fit = approx.approximate_line(config.target, a, b, config.terms, config.rcond)
    elif config.geometry == "periodic":
        fit = approx.approximate_periodic(
            config.target, a, b, config.terms - 1, config.spacing, config.rcond
        )
    else:
        if a < 0:
            raise ConfigError("radial interval must start at rho >= 0")
        fit = approx.approximate_radial(config.target, a, b, config.terms, config.rcond)
    x = _context_grid(config.geometry, a, b, config.sample_count)
    tgt = config.target(x)  # tabulated targets are held constant beyond their samples
    val = approx.fit_values(fit, x)
    table = _csv_text(
        ["t", "target_re", "target_im", "fit_re", "fit_im"],
        [x, tgt.real, tgt.imag, val.real, val.imag],
    )
    _emit(args, fit.to_dict(), table)


def cmd_synthesize(args):
    band = tuple(args.band) if args.band else None
    try:
        if args.everywhere is not None:
            if args.terms is None or args.terms < 1:
                raise ConfigError("--everywhere needs --terms >= 1")
            spec = spectrum.superoscillate_everywhere(args.everywhere, args.terms)
            if band is not None:
                spec = spectrum.LegendreSpectrum(spec.coefficients, band)
        else:
            if args.rate is None:
                raise ConfigError("give --rate or --everywhere")
            z = parse_complex(args.rate)
            tail = [parse_complex(v) for v in args.tail]
            spec = spectrum.prescribe_rate(z, tail, parse_complex(args.c0), band)
    except DegenerateSpectrumError as exc:
        raise ConfigError(str(exc)) from None
    lo, hi = args.interval
    if not lo < hi:
        raise ConfigError("interval is not well ordered")
    if args.sample_count < 2:
        raise ConfigError("sample_count must be at least 2")
    t = np.linspace(lo, hi, args.sample_count)
    g = spectrum.evaluate(spec, t)
    table = _csv_text(["t", "g_re", "g_im"], [t, g.real, g.imag])
    _emit(args, spec.to_dict(), table)


def classify(z):
    """Classification of a local rate against the unit band."""
    osc, grow = abs(z.imag) > 1, abs(z.real) > 1
    if osc and grow:
        return "superoscillating+supergrowing"
    if osc:
        return "superoscillating"
    if grow:
        return "supergrowing"
    return "sub-band"


def cmd_analyze(args):
    spec = _load_spectrum(args.spectrum)
    series = shift.series_from_spectrum(spec)
    points = []
    for t in args.at:
        z = shift.local_rate_at(shift.shift_coefficients(series, t, 2))
        points.append({"t": t, "rate": _complex_pair(z), "class": classify(z)})
    try:
        cums = spectrum.cumulants(spec, 4)
        cum_out = [_complex_pair(c) for c in cums]
    except DegenerateSpectrumError as exc:
        raise NumericalFailure(str(exc)) from None
    report = {"band": spec.to_dict()["band"], "cumulants": cum_out, "points": points}
    _emit(args, report)


def cmd_energy(args):
    spec = _load_spectrum(args.spectrum)
    t_i, t_f = args.interval
    if args.grid < 2:
        raise ConfigError("grid must be at least 2")
    rep = energy.energy_report(spec, t_i, t_f, args.grid, args.n_trunc)
    out = rep.to_dict()
    out["holds"] = bool(rep.holds)
    _emit(args, out)


_DEFAULT_RANGES = {
    "legendre": (-1.0, 1.0),
    "sph-bessel": (0.0, 20.0),
    "zernike": (0.0, 1.0),
    "bessel-j": (0.0, 20.0),
}


def cmd_basis_dump(args):
    orders = _orders(args.orders)
    if args.points:
        x = np.array(args.points, dtype=float)
    else:
        lo, hi = args.range if args.range else _DEFAULT_RANGES[args.family]
        if args.count < 1 or (args.count > 1 and not lo < hi):
            raise ConfigError("invalid grid")
        x = np.linspace(lo, hi, args.count)
    fam = args.family
    if fam == "legendre":
        cols, names = [basis.legendre(n, x) for n in orders], [f"P{n}" for n in orders]
    elif fam == "sph-bessel":
        table = basis.spherical_bessel_table(max(orders), x)
        cols, names = [table[n] for n in orders], [f"j{n}" for n in orders]
    elif fam == "zernike":
        if any(n % 2 for n in orders):
            raise ConfigError("zernike orders must be even")
        cols, names = [basis.zernike_radial(n, x) for n in orders], [f"R{n}" for n in orders]
    else:
        if np.any(x < 0):
            raise ConfigError("bessel-j needs x >= 0")
        cols, names = [basis.bessel_j(n, x) for n in orders], [f"J{n}" for n in orders]
    text = _csv_text(["x", *names], [x, *[np.broadcast_to(c, x.shape) for c in cols]])
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Entry point


def build_parser():
    p = argparse.ArgumentParser(prog="superosc", description="Superoscillation toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    ap = sub.add_parser("approximate", help="least-squares bandlimited fit")
    ap.add_argument("--geometry", choices=["line", "periodic", "radial"], default="line")
    ap.add_argument("--target", required=True)
    ap.add_argument("--interval", nargs=2, type=float, default=[-0.5, 0.5], metavar=("A", "B"))
    ap.add_argument("--terms", type=int, default=10)
    ap.add_argument("--rcond", type=float, default=None)
    ap.add_argument("--spacing", type=float, default=None,
                    help="periodic frequency denominator D in (1 - 2n/D) 2 pi; default N")
    ap.add_argument("--sample-count", type=int, default=601)
    ap.add_argument("-o", "--output", default=None, help="write OUTPUT.json and OUTPUT.csv")
    ap.set_defaults(func=cmd_approximate)

    sp = sub.add_parser("synthesize", help="spectrum with a prescribed local rate")
    sp.add_argument("--rate", default=None, help="complex rate, e.g. 0+10i")
    sp.add_argument("--tail", nargs="*", default=[], help="coefficients c_2, c_3, ...")
    sp.add_argument("--c0", default="1")
    sp.add_argument("--everywhere", type=float, default=None, metavar="S")
    sp.add_argument("--terms", type=int, default=None)
    sp.add_argument("--band", nargs=2, type=float, default=None, metavar=("WMIN", "WMAX"))
    sp.add_argument("--interval", nargs=2, type=float, default=[-10.0, 10.0], metavar=("A", "B"))
    sp.add_argument("--sample-count", type=int, default=401)
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(func=cmd_synthesize)

    an = sub.add_parser("analyze", help="local rates and cumulants")
    an.add_argument("spectrum")
    an.add_argument("--at", nargs="+", type=float, default=[0.0])
    an.add_argument("-o", "--output", default=None)
    an.set_defaults(func=cmd_analyze)

    en = sub.add_parser("energy", help="fractional energy and its bound")
    en.add_argument("spectrum")
    en.add_argument("--interval", nargs=2, type=float, required=True, metavar=("TI", "TF"))
    en.add_argument("--grid", type=int, default=200)
    en.add_argument("--n-trunc", type=int, default=None)
    en.add_argument("-o", "--output", default=None)
    en.set_defaults(func=cmd_energy)

    bd = sub.add_parser("basis-dump", help="tabulate basis functions")
    bd.add_argument("--family", choices=sorted(_DEFAULT_RANGES), required=True)
    bd.add_argument("--orders", nargs="+", default=["0..3"], help="integers or ranges like 0..3")
    bd.add_argument("--range", nargs=2, type=float, default=None, metavar=("LO", "HI"))
    bd.add_argument("--count", type=int, default=101)
    bd.add_argument("--points", nargs="+", type=float, default=None)
    bd.add_argument("-o", "--output", default=None)
    bd.set_defaults(func=cmd_basis_dump)
    return p


_CONFIG_ERRORS = (ConfigError, DomainError, InvalidIntervalError, InvalidBandError, CoverageError)
_NUMERICAL_ERRORS = (
    NumericalFailure, NodeError, NumericalError, DegenerateSpectrumError,
    np.linalg.LinAlgError, FloatingPointError, OverflowError,
)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except _CONFIG_ERRORS as exc:
        print(f"superosc: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _NUMERICAL_ERRORS as exc:
        print(f"superosc: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as exc:
        print(f"superosc: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
