"""Energy content of bandlimited functions and the fractional-energy bound."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import basis
from .errors import InvalidIntervalError, NodeError
from .shift import NODE_THRESHOLD, series_from_spectrum, shift_coefficients
from .spectrum import evaluate

__all__ = [
    "EnergyReport",
    "total_energy",
    "half_line_overlap",
    "cumulative_energy",
    "interval_energy",
    "interval_energy_quadrature",
    "log_derivative_profile",
    "min_log_derivative",
    "energy_bound",
    "energy_report",
]


@dataclass(frozen=True)
class EnergyReport:
    total: float
    interval: tuple[float, float]
    delta_e: float
    fraction: float
    r_min: float
    bound: float

    @property
    def holds(self):
        return self.fraction <= self.bound + 1e-9

    def to_dict(self):
        return {
            "total": self.total,
            "interval": list(self.interval),
            "delta_e": self.delta_e,
            "fraction": self.fraction,
            "r_min": self.r_min,
            "bound": self.bound,
        }


def total_energy(spectrum):
    """``sum 2 |c_n|^2 / (2n + 1)``, the integral of ``|g|^2`` over the line."""
    n = np.arange(len(spectrum))
    return float(np.sum(2 * np.abs(spectrum.coefficients) ** 2 / (2 * n + 1)))


def half_line_overlap(n, p):
    """``int_0^inf j_n j_{n+2p+1} dt = (-1)^p / (2 (2p+1) (n+p+1))``."""
    return (-1) ** p / (2 * (2 * p + 1) * (n + p + 1))


def _cumulative_from_series(E, gam):
    N = gam.size
    acc = 0.0
    for p in range(N // 2):
        n = np.arange(N - 2 * p - 1)
        cross = (gam[n] * np.conj(gam[n + 2 * p + 1])).real
        acc += np.sum(cross * (-1) ** p / (2 * (2 * p + 1) * (n + p + 1)))
    return float(E / 2 - 4 / math.pi * acc)


def cumulative_energy(spectrum, T, n_trunc=40):
    """Energy of ``g`` on ``(-inf, T]`` from coefficients about ``T``.

    The double sum is truncated to coefficients ``gamma_0 .. gamma_{n_trunc-1}``;
    ``n_trunc`` has to grow roughly like ``|T|`` for the sum to converge.
    """
    if n_trunc < len(spectrum):
        raise ValueError("n_trunc must be at least the number of coefficients")
    gam = shift_coefficients(series_from_spectrum(spectrum), T, n_trunc).coefficients
    return _cumulative_from_series(total_energy(spectrum), gam)


def interval_energy(spectrum, t_i, t_f, n_trunc=40):
    """Energy on ``[t_i, t_f]`` as a difference of cumulative energies.

    Both cumulative energies are near ``E / 2``, so the difference loses
    about ``eps * E`` in absolute terms. Superoscillatory fits put almost
    all of ``E`` outside the interval; when that loss exceeds 1e-9 of the
    result the direct quadrature of :func:`interval_energy_quadrature` is
    returned instead.
    """
    if t_f < t_i:
        raise InvalidIntervalError(f"invalid interval [{t_i}, {t_f}]")
    if t_f == t_i:
        return 0.0
    dE = cumulative_energy(spectrum, t_f, n_trunc) - cumulative_energy(spectrum, t_i, n_trunc)
    rounding = 16 * n_trunc * np.finfo(float).eps * total_energy(spectrum)
    if rounding > 1e-9 * abs(dE):
        return interval_energy_quadrature(spectrum, t_i, t_f)
    return dE


def interval_energy_quadrature(spectrum, t_i, t_f):
    """Energy on ``[t_i, t_f]`` by direct Gauss-Legendre quadrature."""
    if t_f < t_i:
        raise InvalidIntervalError(f"invalid interval [{t_i}, {t_f}]")
    if t_f == t_i:
        return 0.0
    x, w = basis.interval_rule(t_i, t_f, 2 * len(spectrum), 2.0)
    return float(np.sum(w * np.abs(evaluate(spectrum, x)) ** 2))


def log_derivative_profile(spectrum, t_i, t_f, grid=200):
    """Grid points and ``|gamma_1(t') / (3 gamma_0(t'))|`` at each of them."""
    if grid < 2:
        raise ValueError("grid needs at least two points")
    ts = np.linspace(t_i, t_f, grid)
    series = series_from_spectrum(spectrum)
    rates = np.empty(grid)
    for i, t in enumerate(ts):
        g0, g1 = shift_coefficients(series, t, 2).coefficients
        if abs(g0) < NODE_THRESHOLD:
            raise NodeError(f"g vanishes at t = {t}")
        rates[i] = abs(g1 / (3 * g0))
    return ts, rates


def min_log_derivative(spectrum, t_i, t_f, grid=200):
    """Smallest ``|g'/g|`` on a uniform grid over ``[t_i, t_f]``.

    A grid estimate, not a certified minimum.
    """
    return float(log_derivative_profile(spectrum, t_i, t_f, grid)[1].min())


def energy_bound(delta_t, r):
    """Upper bound ``delta_t / (2 (1 + 3 r^2))`` on the fractional energy."""
    if delta_t < 0 or r < 0:
        raise ValueError("delta_t and r must be nonnegative")
    return delta_t / (2 * (1 + 3 * r * r))


def energy_report(spectrum, t_i, t_f, grid=200, n_trunc=None):
    """Fractional energy on an interval together with its rate bound."""
    if t_f < t_i:
        raise InvalidIntervalError(f"invalid interval [{t_i}, {t_f}]")
    if n_trunc is None:
        # gamma_n(T) stays significant up to n ~ |T|
        n_trunc = max(40, len(spectrum), int(1.1 * max(abs(t_i), abs(t_f))) + 40)
    E = total_energy(spectrum)
    dE = interval_energy(spectrum, t_i, t_f, n_trunc)
    r = min_log_derivative(spectrum, t_i, t_f, grid) if t_f > t_i else 0.0
    delta_t = t_f - t_i
    bound = energy_bound(delta_t, r) if delta_t > 0 else 0.0
    return EnergyReport(E, (float(t_i), float(t_f)), float(dE), float(dE / E), r, bound)
