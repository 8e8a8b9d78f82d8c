"""Legendre spectra of bandlimited functions on the unit band.

A bandlimited function is stored through the Legendre coefficients of its
Fourier transform on [-1, 1]. Its time-domain values follow from a finite
spherical Bessel sum, its moments from exact Legendre integrals, and its
cumulants (local rates) from those moments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import basis
from .errors import DegenerateSpectrumError, InvalidBandError

__all__ = [
    "LegendreSpectrum",
    "rescale_to_unit_band",
    "evaluate",
    "evaluate_derivative",
    "evaluate_taylor",
    "spectral_density",
    "moment",
    "moments",
    "cumulant",
    "cumulants",
    "local_rate",
    "prescribe_rate",
    "superoscillate_everywhere",
    "DEGENERATE_C0",
    "MAX_CUMULANT_ORDER",
]

DEGENERATE_C0 = 1e-14
MAX_CUMULANT_ORDER = 8
_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


@dataclass(frozen=True)
class LegendreSpectrum:
    """Legendre coefficients ``c_n`` of a spectrum on [-1, 1].

    Parameters
    ----------
    coefficients : array_like of complex
        ``c_0 .. c_{M-1}``
    band : tuple of float, optional
        physical band ``(omega_min, omega_max)`` that was rescaled to [-1, 1]
    """

    coefficients: np.ndarray
    band: tuple[float, float] | None = field(default=None)

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("a spectrum needs at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)
        if self.band is not None:
            lo, hi = (float(v) for v in self.band)
            if not hi > lo:
                raise InvalidBandError(f"band [{lo}, {hi}] is empty")
            object.__setattr__(self, "band", (lo, hi))

    def __len__(self):
        return self.coefficients.size

    @property
    def bandwidth(self):
        return None if self.band is None else self.band[1] - self.band[0]

    @property
    def center(self):
        return None if self.band is None else 0.5 * (self.band[0] + self.band[1])

    def to_dict(self):
        return {
            "band": None if self.band is None else list(self.band),
            "coefficients": [[c.real, c.imag] for c in self.coefficients],
        }

    @classmethod
    def from_dict(cls, d):
        coefs = [complex(re, im) for re, im in d["coefficients"]]
        band = d.get("band")
        return cls(coefs, None if band is None else tuple(band))


def rescale_to_unit_band(omega_min, omega_max, t):
    """Map physical time onto the unit-band time ``t'``.

    Returns
    -------
    t_prime : float
        ``bandwidth * t / 2``
    phase : complex
        carrier ``exp(i (2 center / bandwidth) t')`` relating the physical
        signal to its unit-band counterpart
    """
    if not omega_max > omega_min:
        raise InvalidBandError(f"band [{omega_min}, {omega_max}] is empty")
    width = omega_max - omega_min
    center = 0.5 * (omega_max + omega_min)
    t_prime = width * t / 2
    return t_prime, np.exp(1j * (2 * center / width) * t_prime)


def _phased(spectrum):
    n = np.arange(len(spectrum))
    return (1j**n) * spectrum.coefficients


def evaluate(spectrum, t):
    """Time-domain value ``g(t)`` as a spherical Bessel sum."""
    t = np.asarray(t, dtype=float)
    table = basis.spherical_bessel_table(len(spectrum) - 1, t)
    out = _SQRT_2_OVER_PI * np.tensordot(_phased(spectrum), table, axes=1)
    return complex(out) if out.ndim == 0 else out


def evaluate_derivative(spectrum, m, t):
    """m-th time derivative of ``g`` from analytic Bessel derivatives."""
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape, dtype=complex)
    for n, c in enumerate(_phased(spectrum)):
        if c != 0:
            out = out + c * basis.spherical_bessel_deriv(n, m, t)
    out = _SQRT_2_OVER_PI * out
    return complex(out) if out.ndim == 0 else out


def evaluate_taylor(spectrum, t, q_max):
    """Power-series value of ``g(t)`` truncated at ``q_max`` inner terms."""
    if q_max < 1:
        raise ValueError("q_max must be positive")
    t = np.asarray(t, dtype=float)
    x = -0.5 * t * t
    out = np.zeros(t.shape, dtype=complex)
    lead = np.ones(t.shape, dtype=complex)  # (it)^n / (2n+1)!!
    for n, c in enumerate(spectrum.coefficients):
        if n > 0:
            lead = lead * (1j * t) / (2 * n + 1)
        term = np.ones(t.shape)
        inner = np.ones(t.shape)
        for q in range(1, q_max + 1):
            term = term * x / (q * (2 * n + 2 * q + 1))
            inner = inner + term
        out = out + c * lead * inner
    out = _SQRT_2_OVER_PI * out
    return complex(out) if out.ndim == 0 else out


def spectral_density(spectrum, omega):
    """Pseudodistribution value ``sum c_n P_n(omega)`` on [-1, 1]."""
    table = basis.legendre_table(len(spectrum) - 1, omega)
    out = np.tensordot(spectrum.coefficients, table, axes=1)
    return complex(out) if np.ndim(out) == 0 else out


def moment(spectrum, m):
    """Unnormalized moment of order ``m`` of the pseudodistribution."""
    total = 0j
    for n in range(m % 2, min(m, len(spectrum) - 1) + 1, 2):
        total += spectrum.coefficients[n] * float(basis.k_integral(m, n))
    return total


def moments(spectrum, m_max):
    """Moments of orders ``0 .. m_max``."""
    return np.array([moment(spectrum, m) for m in range(m_max + 1)])


def _check_c0(spectrum):
    if abs(2 * spectrum.coefficients[0]) < DEGENERATE_C0:
        raise DegenerateSpectrumError("zeroth Legendre coefficient vanishes")


def cumulants(spectrum, n_max=4, max_order=MAX_CUMULANT_ORDER):
    """Cumulants of orders ``1 .. n_max`` of the pseudodistribution."""
    _check_c0(spectrum)
    if n_max > max_order:
        raise ValueError(f"cumulant order {n_max} exceeds the limit {max_order}")
    raw = moments(spectrum, n_max)
    m = raw / raw[0]
    kappa = [0j] * (n_max + 1)
    for n in range(1, n_max + 1):
        acc = m[n]
        for k in range(1, n):
            acc -= math.comb(n - 1, k - 1) * kappa[k] * m[n - k]
        kappa[n] = acc
    return np.array(kappa[1:])


def cumulant(spectrum, n, max_order=MAX_CUMULANT_ORDER):
    """The n-th cumulant; ``cumulant(s, 1) * 1j`` is the local rate."""
    if n < 1:
        raise ValueError("cumulant order must be positive")
    return complex(cumulants(spectrum, n, max_order)[-1])


def local_rate(spectrum):
    """Complex rate ``g'(0) / g(0)`` at the origin."""
    _check_c0(spectrum)
    c = spectrum.coefficients
    c1 = c[1] if len(c) > 1 else 0j
    return complex(1j * c1 / (3 * c[0]))


def prescribe_rate(z, higher=(), c0=1.0, band=None):
    """Spectrum whose rate at the origin is ``z`` whatever the tail.

    Parameters
    ----------
    z : complex
        target rate ``g'(0) / g(0)``
    higher : sequence of complex
        coefficients ``c_2, c_3, ...``
    c0 : complex
        nonzero zeroth coefficient
    """
    if abs(c0) < DEGENERATE_C0:
        raise DegenerateSpectrumError("c0 must be nonzero")
    c1 = -3j * z * c0
    return LegendreSpectrum([c0, c1, *higher], band)


def superoscillate_everywhere(s, M):
    """First ``M`` coefficients whose series matches ``exp(i s t)`` at 0.

    Each derivative order N adds one equation; since ``j_n^(N)(0)`` is zero
    for ``n > N`` the system is lower triangular and solved in order.
    No convergence of the resulting series is implied.
    """
    if M < 1:
        raise ValueError("M must be positive")
    c = np.zeros(M, dtype=complex)
    for N in range(M):
        rhs = (1j * s) ** N / _SQRT_2_OVER_PI
        for n in range(N):
            rhs -= 1j**n * c[n] * basis.spherical_bessel_deriv(n, N, 0.0)
        c[N] = rhs / (1j**N * basis.spherical_bessel_deriv(N, N, 0.0))
    return LegendreSpectrum(c)
