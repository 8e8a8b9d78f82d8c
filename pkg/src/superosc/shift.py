"""Spherical Bessel expansions about an arbitrary origin.

A bandlimited ``g`` can be written as ``sqrt(2/pi) sum gamma_n(t') j_n(t - t')``
for any origin ``t'``. The coefficients in two frames are related through
the correlation functions ``I_{m,n}(t) = int j_m(s + t) j_n(s) ds``, which
are finite combinations of spherical Bessel functions. Those combinations
are derived once, exactly, and cached.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import basis
from .errors import NodeError
from .spectrum import LegendreSpectrum, moment

__all__ = [
    "BesselSeries",
    "correlation",
    "correlation_combination",
    "correlation_matrix",
    "series_from_spectrum",
    "spectrum_from_series",
    "evaluate_series",
    "shift_coefficients",
    "unshift_coefficients",
    "default_n_out",
    "local_rate_at",
    "check_recurrence",
    "derivative_series",
]

_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
NODE_THRESHOLD = 1e-14


@dataclass(frozen=True)
class BesselSeries:
    """Coefficients ``gamma_n`` of an expansion about ``origin``."""

    origin: float
    coefficients: np.ndarray

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=complex).ravel()
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "origin", float(self.origin))

    def __len__(self):
        return self.coefficients.size

    def to_dict(self):
        return {
            "band": None,
            "origin": self.origin,
            "coefficients": [[c.real, c.imag] for c in self.coefficients],
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d.get("origin", 0.0), [complex(re, im) for re, im in d["coefficients"]])


def series_from_spectrum(spectrum):
    """Origin-0 series with ``gamma_n = i^n c_n``."""
    n = np.arange(len(spectrum))
    return BesselSeries(0.0, (1j**n) * spectrum.coefficients)


def spectrum_from_series(series):
    if series.origin != 0:
        raise ValueError("only origin-0 series map onto a Legendre spectrum")
    n = np.arange(len(series))
    return LegendreSpectrum((-1j) ** n * series.coefficients)


def evaluate_series(series, t):
    t = np.asarray(t, dtype=float)
    table = basis.spherical_bessel_table(len(series) - 1, t - series.origin)
    out = _SQRT_2_OVER_PI * np.tensordot(series.coefficients, table, axes=1)
    return complex(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Correlation functions

_tables: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]] = {}
_tables_lock = threading.Lock()


def _derivative(combo):
    acc: dict[int, Fraction] = {}
    for k, c in combo.items():
        if k > 0:
            acc[k - 1] = acc.get(k - 1, 0) + c * Fraction(k, 2 * k + 1)
        acc[k + 1] = acc.get(k + 1, 0) - c * Fraction(k + 1, 2 * k + 1)
    return acc


def _build_column(m_max, n):
    # I_{m,n} / pi for m = 0..m_max at fixed n, by recurrence in m
    sign = (-1) ** n
    first = {n: Fraction(sign)}
    rows = [first]
    if m_max >= 1:
        rows.append({k: -c for k, c in _derivative(first).items()})
    for m in range(1, m_max):
        d = _derivative(rows[m])
        nxt: dict[int, Fraction] = {}
        for k, c in rows[m - 1].items():
            nxt[k] = nxt.get(k, 0) + Fraction(m, m + 1) * c
        for k, c in d.items():
            nxt[k] = nxt.get(k, 0) - Fraction(2 * m + 1, m + 1) * c
        rows.append(nxt)
    return [tuple(sorted((k, c) for k, c in r.items() if c != 0)) for r in rows]


def _canonical(m, n):
    # pairs with m <= n are built directly; I_{m,n}(t) = I_{n,m}(-t) otherwise
    key = (m, n) if m <= n else (n, m)
    with _tables_lock:
        combo = _tables.get(key)
        if combo is None:
            column = _build_column(key[0], key[1])
            for mm, c in enumerate(column):
                _tables.setdefault((mm, key[1]), c)
            combo = _tables[key]
    return combo


def correlation_combination(m, n):
    """``I_{m,n}(t) / pi`` as exact ``(k, coefficient)`` pairs over ``j_k(t)``."""
    if m < 0 or n < 0:
        raise ValueError("indices must be nonnegative")
    combo = _canonical(m, n)
    if m <= n:
        return combo
    return tuple((k, c if k % 2 == 0 else -c) for k, c in combo)


def _float_combination(m, n):
    combo = correlation_combination(m, n)
    return np.array([k for k, _ in combo], dtype=int), np.array([float(c) for _, c in combo])


def correlation(m, n, t):
    """``I_{m,n}(t) = int j_m(s + t) j_n(s) ds`` over the whole line."""
    ks, cs = _float_combination(m, n)
    table = basis.spherical_bessel_table(m + n, t)
    out = math.pi * np.tensordot(cs, table[ks], axes=1)
    return float(out) if np.ndim(out) == 0 else out


def correlation_matrix(P, N, t):
    """``I_{p,m}(t)`` for p < P and m < N at a single ``t``."""
    j = basis.spherical_bessel_table(P + N, float(t))
    out = np.empty((P, N))
    for p in range(P):
        for m in range(N):
            ks, cs = _float_combination(p, m)
            out[p, m] = cs @ j[ks]
    return math.pi * out


# ---------------------------------------------------------------------------
# Frame changes


def default_n_out(n_in):
    return 4 * n_in + 20


def shift_coefficients(series_at_zero, t_prime, n_out=None):
    """Coefficients about ``t_prime`` of a series given about the origin.

    Each output coefficient is an exact finite sum over the input.
    """
    if series_at_zero.origin != 0:
        raise ValueError("input series must be expanded about the origin")
    P = len(series_at_zero)
    n_out = default_n_out(P) if n_out is None else n_out
    I = correlation_matrix(P, n_out, t_prime)
    m = np.arange(n_out)
    gam = (2 * m + 1) / math.pi * (series_at_zero.coefficients @ I)
    return BesselSeries(t_prime, gam)


def unshift_coefficients(series_at_tprime, n_out=None):
    """Origin-0 coefficients of a series given about ``t'``.

    The defining sum runs over all input coefficients, so the result is
    only as good as the truncation of the input.
    """
    N = len(series_at_tprime)
    n_out = default_n_out(N) if n_out is None else n_out
    I = correlation_matrix(n_out, N, series_at_tprime.origin)
    p = np.arange(n_out)
    gam = (2 * p + 1) / math.pi * (I @ series_at_tprime.coefficients)
    return BesselSeries(0.0, gam)


def local_rate_at(series):
    """Logarithmic derivative ``g'/g`` at the series origin."""
    c = series.coefficients
    if abs(c[0]) < NODE_THRESHOLD:
        raise NodeError(f"g vanishes at t' = {series.origin}")
    c1 = c[1] if c.size > 1 else 0j
    return complex(c1 / (3 * c[0]))


def check_recurrence(gammas, t_prime, h=1e-4):
    """Largest violation of the frame-independence recurrence at ``t_prime``.

    Parameters
    ----------
    gammas : callable
        maps an origin to a :class:`BesselSeries` about that origin
    h : float
        central-difference step for the derivative of each coefficient
    """
    if h <= 0:
        raise ValueError("h must be positive")
    g0 = gammas(t_prime).coefficients
    dg = (gammas(t_prime + h).coefficients - gammas(t_prime - h).coefficients) / (2 * h)
    worst = 0.0
    for n in range(g0.size - 1):
        prev = g0[n - 1] * n / (2 * n - 1) if n > 0 else 0.0
        rhs = (2 * n + 3) / (n + 1) * (dg[n] + prev)
        worst = max(worst, abs(g0[n + 1] - rhs))
    return worst


def derivative_series(spectrum, n, t_prime, terms=60):
    """n-th derivative of ``g`` at ``t_prime`` from its Maclaurin series."""
    if terms < 1:
        raise ValueError("terms must be positive")
    total = 0j
    fact = 1.0
    for m in range(terms):
        if m > 0:
            fact *= t_prime / m
        total += fact * 1j ** (n + m) * moment(spectrum, n + m)
    return total / math.sqrt(2 * math.pi)
