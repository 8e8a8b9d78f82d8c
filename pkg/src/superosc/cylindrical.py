"""Cylindrically symmetric bandlimited fields.

A field ``h(rho)`` bandlimited to the unit disk has a Hankel transform
``h~(nu) = sum a_2n R_2n^0(nu)`` on ``[0, 1]``. In real space the same
field is ``sum (-1)^n a_2n J_{2n+1}(rho) / rho``. Local behaviour is
measured by the rates ``kappa`` and ``k`` with ``(kappa + i k)^2`` equal to
``laplacian(h) / h``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from . import basis
from .approx import radial_basis
from .errors import DomainError, NodeError

__all__ = [
    "RadialSpectrum",
    "GeneralizedRate",
    "hankel_transform",
    "radial_hankel",
    "radial_signal",
    "zernike_spectrum_value",
    "radial_laplacian",
    "rates_from_laplacian",
    "generalized_rates",
    "generalized_rates_series",
    "zernike_norms",
    "radial_spectrum_from_fit",
]

NODE_THRESHOLD = 1e-12


@dataclass(frozen=True)
class RadialSpectrum:
    """Zernike coefficients ``a_0, a_2, a_4, ...`` on the unit disk."""

    coefficients: np.ndarray

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("a radial spectrum needs at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    def __len__(self):
        return self.coefficients.size

    def to_dict(self):
        return {"coefficients": [[c.real, c.imag] for c in self.coefficients]}

    @classmethod
    def from_dict(cls, d):
        return cls([complex(re, im) for re, im in d["coefficients"]])


@dataclass(frozen=True)
class GeneralizedRate:
    """Local growth rate ``kappa`` and wave number ``k``.

    ``ratio`` keeps ``laplacian(h) / h = A + iB`` they were derived from.
    """

    kappa: float
    k: float
    ratio: complex


def radial_spectrum_from_fit(fit):
    if fit.geometry != "radial":
        raise ValueError("fit is not radial")
    return RadialSpectrum(fit.coefficients)


def _asymptotic_tail(edge, nu, rho_max):
    # h ~ edge sqrt(2/pi) rho^(-3/2) cos(rho - 3 pi/4) for disk-bandlimited h
    nu = np.asarray(nu, dtype=float)
    safe = np.where(nu > 0, nu, 1.0)
    a = (1 - safe) * rho_max
    b = (1 + safe) * rho_max
    si_a, _ = special.sici(a)
    _, ci_b = special.sici(b)
    tail = edge / (math.pi * np.sqrt(safe)) * (np.sign(a) * math.pi / 2 - si_a + ci_b)
    return np.where(nu * rho_max >= 10, tail, 0.0)


def hankel_transform(h, nu, rho_max=2000.0, edge=None, panel=math.pi, order=24):
    """``int_0^rho_max rho h(rho) J_0(nu rho) d rho`` by panel quadrature.

    Parameters
    ----------
    h : callable
        vectorized radial function
    nu : float or array_like
        transform variable(s)
    edge : complex, optional
        spectrum value ``h~(1)`` at the disk edge. When given, the leading
        asymptotic contribution of ``rho > rho_max`` is added, which is
        otherwise an O(1 / ((1 - nu) rho_max)) truncation error. Only
        applied where ``nu * rho_max >= 10``.
    panel : float
        panel width; the default spans half an oscillation of ``J_0(rho)``
    """
    if rho_max <= 0:
        raise ValueError("rho_max must be positive")
    nu = np.asarray(nu, dtype=float)
    panels = int(math.ceil(rho_max / panel))
    edges = np.linspace(0.0, rho_max, panels + 1)
    rule = basis.gauss_legendre(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * rule.nodes).ravel()
    w = (half[:, None] * rule.weights).ravel()
    f = w * x * np.asarray(h(x), dtype=complex)
    out = special.j0(np.multiply.outer(nu, x)) @ f
    if edge is not None:
        out = out + _asymptotic_tail(edge, nu, rho_max)
    return complex(out) if out.ndim == 0 else out


def radial_hankel(spectrum, nu, rho_max=2000.0):
    """Numerical Hankel transform of :func:`radial_signal` with tail term."""
    edge = complex(np.sum(spectrum.coefficients))
    return hankel_transform(lambda r: radial_signal(spectrum, r), nu, rho_max, edge=edge)


def radial_signal(spectrum, rho):
    """``h(rho) = sum (-1)^n a_2n J_{2n+1}(rho) / rho``."""
    rho = np.asarray(rho, dtype=float)
    out = np.tensordot(spectrum.coefficients, radial_basis(len(spectrum), rho), axes=1)
    return complex(out) if out.ndim == 0 else out


def zernike_spectrum_value(spectrum, nu):
    """``h~(nu) = sum a_2n R_2n^0(nu)`` for ``nu`` in [0, 1]."""
    nu = np.asarray(nu, dtype=float)
    if np.any(nu < 0) or np.any(nu > 1 + 1e-12):
        raise DomainError("nu outside [0, 1]; the spectrum vanishes there")
    out = sum(a * basis.zernike_radial(2 * n, nu) for n, a in enumerate(spectrum.coefficients))
    out = np.asarray(out, dtype=complex)
    return complex(out) if out.ndim == 0 else out


def zernike_norms(n_max, order=64):
    """Gram matrix ``int_0^1 nu R_2n R_2m d nu`` for n, m <= n_max."""
    x, w = basis.gauss_legendre(order).mapped(0.0, 1.0)
    R = np.array([basis.zernike_radial(2 * n, x) for n in range(n_max + 1)])
    return (R * (w * x)) @ R.T


def radial_laplacian(h, rho, step=None):
    """``h'' + h'/rho`` by central differences."""
    if rho <= 0:
        raise DomainError("rho must be positive")
    s = 1e-4 * max(1.0, rho) if step is None else step
    if s <= 0:
        raise ValueError("step must be positive")
    hp, h0, hm = h(rho + s), h(rho), h(rho - s)
    return (hp - 2 * h0 + hm) / s**2 + (hp - hm) / (2 * s * rho)


def rates_from_laplacian(h_value, laplacian_value):
    """``(kappa, k)`` from ``h`` and its Laplacian at one point."""
    hr, hi = h_value.real, h_value.imag
    lr, li = laplacian_value.real, laplacian_value.imag
    mag2 = hr * hr + hi * hi
    if mag2 < NODE_THRESHOLD**2:
        raise NodeError("h vanishes at the evaluation point")
    A = (hr * lr + hi * li) / mag2
    B = (hr * li - hi * lr) / mag2
    root = math.hypot(A, B)
    kappa = math.sqrt(max(0.0, 0.5 * (A + root)))
    k = math.sqrt(max(0.0, 0.5 * (-A + root)))
    return GeneralizedRate(kappa, k, complex(A, B))


def generalized_rates(h_re, h_im, rho, step=None):
    """Local rates of ``h = h_re + i h_im`` at ``rho`` by finite differences."""
    h = complex(h_re(rho), h_im(rho))
    lap = complex(radial_laplacian(h_re, rho, step), radial_laplacian(h_im, rho, step))
    return rates_from_laplacian(h, lap)


def generalized_rates_series(spectrum, rho):
    """Local rates of a radial Bessel series from exact derivatives.

    For ``f = J_v(rho) / rho`` the Laplacian reduces through Bessel's
    equation to ``-2 J_v' / rho^2 - J_v / rho + (v^2 + 1) J_v / rho^3``.
    """
    if rho <= 0:
        raise DomainError("rho must be positive")
    h = 0j
    lap = 0j
    for n, a in enumerate(spectrum.coefficients):
        v = 2 * n + 1
        J = special.jv(v, rho)
        dJ = 0.5 * (special.jv(v - 1, rho) - special.jv(v + 1, rho))
        sign = (-1) ** n
        h += sign * a * J / rho
        lap += sign * a * (-2 * dJ / rho**2 - J / rho + (v * v + 1) * J / rho**3)
    return rates_from_laplacian(h, lap)
