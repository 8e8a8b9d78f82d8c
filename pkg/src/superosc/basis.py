"""Special functions and quadrature rules.

Everything else in the package is built on the functions here: Legendre
polynomials, spherical Bessel functions and their derivatives, integer-order
Bessel functions, the cylindrically symmetric Zernike radial polynomials,
exact moment integrals of Legendre polynomials, and Gauss-Legendre rules.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.polynomial import legendre as npleg
from scipy import special

from .errors import DomainError, InvalidIntervalError

__all__ = [
    "QuadratureRule",
    "legendre",
    "legendre_table",
    "spherical_bessel",
    "spherical_bessel_table",
    "spherical_bessel_deriv",
    "derivative_combination",
    "bessel_j",
    "zernike_radial",
    "k_integral",
    "gauss_legendre",
    "default_order",
    "interval_rule",
]

_X_TOL = 1e-12
_SERIES_RADIUS = 0.5
_SERIES_TERMS = 30


# ---------------------------------------------------------------------------
# Legendre polynomials


def legendre_table(nmax, x):
    """Legendre polynomials ``P_0 .. P_nmax`` at ``x``.

    Parameters
    ----------
    nmax : int
        highest order
    x : array_like
        points in [-1, 1]

    Returns
    -------
    ndarray
        shape ``(nmax + 1, *x.shape)``
    """
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1 + _X_TOL):
        raise DomainError("Legendre argument outside [-1, 1]")
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = x
    for n in range(1, nmax):
        out[n + 1] = ((2 * n + 1) * x * out[n] - n * out[n - 1]) / (n + 1)
    return out


def legendre(n, x):
    """Legendre polynomial ``P_n(x)`` from the three-term recurrence.

    Raises
    ------
    DomainError
        if ``|x| > 1 + 1e-12`` or ``n < 0``
    """
    if n < 0:
        raise DomainError("Legendre order must be nonnegative")
    out = legendre_table(n, x)[n]
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Spherical Bessel functions


def _series_table(nmax, t):
    # ascending series, |t| < 0.5
    out = np.empty((nmax + 1,) + t.shape)
    lead = np.ones_like(t)  # t**n / (2n+1)!!
    x = -0.5 * t * t
    for n in range(nmax + 1):
        if n > 0:
            lead = lead * t / (2 * n + 1)
        term = np.ones_like(t)
        total = np.ones_like(t)
        for q in range(1, _SERIES_TERMS):
            term = term * x / (q * (2 * n + 2 * q + 1))
            total = total + term
        out[n] = lead * total
    return out


def _upward_table(nmax, t):
    out = np.empty((nmax + 1,) + t.shape)
    s, c = np.sin(t), np.cos(t)
    out[0] = s / t
    if nmax >= 1:
        out[1] = s / t**2 - c / t
    for k in range(1, nmax):
        out[k + 1] = (2 * k + 1) / t * out[k] - out[k - 1]
    return out


def _miller_table(nmax, t):
    # downward recurrence; stable for orders beyond |t|
    start = nmax + 20 + int(math.sqrt(40.0 * (nmax + 1)))
    out = np.zeros((nmax + 1,) + t.shape)
    upper = np.zeros_like(t)
    cur = np.full_like(t, 1e-280)
    for k in range(start, 0, -1):
        if k <= nmax:
            out[k] = cur
        lower = (2 * k + 1) / t * cur - upper
        upper, cur = cur, lower
        big = np.abs(cur) > 1e250
        if np.any(big):
            scale = np.where(big, 1e-250, 1.0)
            cur = cur * scale
            upper = upper * scale
            out[: k + 1] = out[: k + 1] * scale
    out[0] = cur
    # only reached with nmax > |t| >= 0.5, so out[1] exists
    s, c = np.sin(t), np.cos(t)
    j0 = s / t
    j1 = s / t**2 - c / t
    use_j0 = np.abs(j0) >= np.abs(j1)
    norm = np.where(use_j0, j0, j1) / np.where(use_j0, out[0], out[1])
    return out * norm


def spherical_bessel_table(nmax, t):
    """Spherical Bessel functions ``j_0 .. j_nmax`` at ``t``.

    Uses the ascending series for ``|t| < 0.5``, upward recurrence where
    every requested order is below ``|t|``, and Miller's downward
    recurrence otherwise.

    Parameters
    ----------
    nmax : int
        highest order
    t : array_like
        real arguments

    Returns
    -------
    ndarray
        shape ``(nmax + 1, *t.shape)``
    """
    t = np.asarray(t, dtype=float)
    shape = t.shape
    flat = t.ravel()
    a = np.abs(flat)
    out = np.empty((nmax + 1, flat.size))

    small = a < _SERIES_RADIUS
    up = ~small & (a >= nmax)
    down = ~small & ~up
    if np.any(small):
        out[:, small] = _series_table(nmax, a[small])
    if np.any(up):
        out[:, up] = _upward_table(nmax, a[up])
    if np.any(down):
        out[:, down] = _miller_table(nmax, a[down])

    neg = flat < 0
    if np.any(neg):
        odd = (np.arange(nmax + 1) % 2 == 1)[:, None]
        out[:, neg] = np.where(odd, -out[:, neg], out[:, neg])
    return out.reshape((nmax + 1,) + shape)


def spherical_bessel(n, t):
    """Spherical Bessel function of the first kind ``j_n(t)``.

    >>> spherical_bessel(0, 0.0)
    1.0
    """
    if n < 0:
        raise DomainError("spherical Bessel order must be nonnegative")
    out = spherical_bessel_table(n, t)[n]
    return float(out) if out.ndim == 0 else out


@lru_cache(maxsize=None)
def derivative_combination(n, m):
    """Exact expansion of the m-th derivative of ``j_n`` over ``j_k``.

    Repeatedly applies ``(2k+1) j_k' = k j_{k-1} - (k+1) j_{k+1}``.

    Returns
    -------
    tuple of (int, Fraction)
        ``(k, coefficient)`` pairs with nonzero coefficients, sorted by k
    """
    if m == 0:
        return ((n, Fraction(1)),)
    acc: dict[int, Fraction] = {}
    for k, c in derivative_combination(n, m - 1):
        if k > 0:
            acc[k - 1] = acc.get(k - 1, Fraction(0)) + c * Fraction(k, 2 * k + 1)
        acc[k + 1] = acc.get(k + 1, Fraction(0)) - c * Fraction(k + 1, 2 * k + 1)
    return tuple(sorted((k, c) for k, c in acc.items() if c != 0))


def spherical_bessel_deriv(n, m, t):
    """m-th derivative of ``j_n`` at ``t``."""
    if n < 0 or m < 0:
        raise DomainError("orders must be nonnegative")
    combo = derivative_combination(n, m)
    kmax = combo[-1][0] if combo else 0
    table = spherical_bessel_table(kmax, t)
    out = sum(float(c) * table[k] for k, c in combo)
    if not combo:
        out = np.zeros_like(np.asarray(t, dtype=float))
    out = np.asarray(out)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Cylindrical functions


def bessel_j(n, x):
    """Integer-order Bessel function of the first kind ``J_n(x)``."""
    out = special.jv(n, x)
    return float(out) if np.ndim(out) == 0 else out


@lru_cache(maxsize=None)
def _zernike_coefficients(order):
    half = order // 2
    return tuple(
        (-1) ** p * math.factorial(order - p)
        // (math.factorial(p) * math.factorial(half - p) ** 2)
        for p in range(half + 1)
    )


def _zernike_exact(order, nu):
    # integer arithmetic on the binary expansion of nu; exact before rounding
    num, den = float(nu).as_integer_ratio()
    total = 0
    for p, coef in enumerate(_zernike_coefficients(order)):
        power = order - 2 * p
        total += coef * num**power * den ** (2 * p)
    return float(Fraction(total, den**order))


def zernike_radial(order, nu):
    """Zernike radial polynomial ``R_order^0(nu)`` for even ``order``.

    The finite sum is evaluated exactly in rational arithmetic and rounded
    once, so high orders do not suffer from cancellation between its
    large alternating terms.
    """
    if order < 0 or order % 2:
        raise DomainError("order must be an even nonnegative integer")
    nu = np.asarray(nu, dtype=float)
    if np.any(nu < 0) or np.any(nu > 1 + _X_TOL):
        raise DomainError("Zernike argument outside [0, 1]")
    if nu.ndim == 0:
        return _zernike_exact(order, float(nu))
    flat = [_zernike_exact(order, v) for v in nu.ravel()]
    return np.array(flat).reshape(nu.shape)


# ---------------------------------------------------------------------------
# Legendre moments


def _double_factorial(k):
    return math.prod(range(k, 0, -2)) if k > 0 else 1


@lru_cache(maxsize=None)
def k_integral(m, n):
    """Exact value of the integral of ``w**m * P_n(w)`` over [-1, 1]."""
    if n > m or (m - n) % 2:
        return Fraction(0)
    half = (m - n) // 2
    return Fraction(
        2 * math.factorial(m),
        2**half * math.factorial(half) * _double_factorial(m + n + 1),
    )


# ---------------------------------------------------------------------------
# Quadrature


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def mapped(self, a, b):
        """Nodes and weights for the interval [a, b]."""
        half = 0.5 * (b - a)
        return half * self.nodes + 0.5 * (a + b), half * self.weights

    def integrate(self, f, a=-1.0, b=1.0):
        x, w = self.mapped(a, b)
        return np.sum(w * f(x), axis=-1)


_rule_lock = threading.Lock()


@lru_cache(maxsize=64)
def _cached_rule(order):
    if order <= 150:
        x, w = npleg.leggauss(order)
    else:
        x, w = special.roots_legendre(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return QuadratureRule(x, w, order)


def gauss_legendre(order):
    """Gauss-Legendre rule with ``order`` nodes, exact to degree 2*order-1."""
    if order < 1:
        raise DomainError("quadrature order must be positive")
    with _rule_lock:
        return _cached_rule(int(order))


def default_order(max_index, length, max_freq=1.0):
    """Node-count heuristic for integrands of the form poly * oscillation."""
    return int(math.ceil(50 + 10 * max_index + 4 * length * max_freq))


_PANEL_ORDER = 64
_SINGLE_RULE_LIMIT = 256


def interval_rule(a, b, max_index=0, max_freq=1.0, order=None, breakpoints=()):
    """Nodes and weights for integrating over [a, b].

    Long intervals get a composite rule of 64-point panels with roughly
    the same total node count as the heuristic asks for. Interior
    ``breakpoints`` always fall on panel edges.

    Returns
    -------
    x, w : ndarray
    """
    if not b > a:
        raise InvalidIntervalError(f"empty interval [{a}, {b}]")
    cuts = [a] + sorted(p for p in breakpoints if a < p < b) + [b]
    xs, ws = [], []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        n = order if order is not None else default_order(max_index, hi - lo, max_freq)
        if n <= _SINGLE_RULE_LIMIT:
            x, w = gauss_legendre(n).mapped(lo, hi)
            xs.append(x)
            ws.append(w)
            continue
        panels = int(math.ceil(n / _PANEL_ORDER))
        rule = gauss_legendre(_PANEL_ORDER)
        edges = np.linspace(lo, hi, panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        xs.append((mid[:, None] + half[:, None] * rule.nodes).ravel())
        ws.append((half[:, None] * rule.weights).ravel())
    return np.concatenate(xs), np.concatenate(ws)
