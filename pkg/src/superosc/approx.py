"""Least-squares bandlimited approximation on a finite interval.

Three bases are supported:

``line``
    spherical Bessel functions ``sqrt(2/pi) j_n(t)``
``periodic``
    exponentials ``exp(i w_n t)`` with ``w_n = (1 - 2n/D) 2 pi``
``radial``
    ``(-1)^n J_{2n+1}(rho) / rho`` for cylindrically symmetric fields,
    with the error measured against ``rho d rho``

In each case the fit solves the normal equations of the squared error
integral, Gram matrix times coefficients equals load vector, with a
truncated-SVD pseudo-inverse.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from . import basis
from .errors import CoverageError, DomainError, InvalidIntervalError, NumericalError

__all__ = [
    "TargetFunction",
    "FitResult",
    "SolveDiagnostics",
    "DEFAULT_RCOND",
    "gram_bessel",
    "load_vector",
    "solve_pseudo_inverse",
    "approximate_line",
    "periodic_frequencies",
    "periodic_gram",
    "periodic_load",
    "approximate_periodic",
    "radial_basis",
    "radial_gram",
    "radial_load",
    "approximate_radial",
    "reconstruct",
    "error_functional",
    "fit_values",
]

DEFAULT_RCOND = 1e-12
_SQRT_PI_OVER_2 = math.sqrt(math.pi / 2.0)
_GEOMETRIES = ("line", "periodic", "radial")


@dataclass(frozen=True)
class TargetFunction:
    """A function to approximate.

    Use the named constructors rather than building one by hand::

        TargetFunction.cosine(10)          # cos(10 t)
        TargetFunction.unit_step(0.0)      # Theta(t)
        TargetFunction.radial_cosine(10)   # cos(10 rho) / sqrt(rho)
    """

    kind: str
    parameter: float = 0.0
    coordinates: np.ndarray | None = field(default=None, repr=False)
    values: np.ndarray | None = field(default=None, repr=False)

    _KINDS = (
        "cosine",
        "exponential",
        "complex_exponential",
        "unit_step",
        "radial_cosine",
        "radial_exponential",
        "tabulated",
    )

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown target kind {self.kind!r}")
        if self.kind == "tabulated":
            x = np.array(self.coordinates, dtype=float)
            y = np.array(self.values, dtype=complex)
            if x.ndim != 1 or x.size < 2 or x.shape != y.shape:
                raise ValueError("tabulated target needs >= 2 matching samples")
            if np.any(np.diff(x) <= 0):
                raise ValueError("sample coordinates must be strictly increasing")
            x.setflags(write=False)
            y.setflags(write=False)
            object.__setattr__(self, "coordinates", x)
            object.__setattr__(self, "values", y)

    @classmethod
    def cosine(cls, a):
        return cls("cosine", float(a))

    @classmethod
    def exponential(cls, a):
        return cls("exponential", float(a))

    @classmethod
    def complex_exponential(cls, s):
        return cls("complex_exponential", float(s))

    @classmethod
    def unit_step(cls, threshold=0.0):
        return cls("unit_step", float(threshold))

    @classmethod
    def radial_cosine(cls, a):
        return cls("radial_cosine", float(a))

    @classmethod
    def radial_exponential(cls, a):
        return cls("radial_exponential", float(a))

    @classmethod
    def tabulated(cls, coordinates, values):
        return cls("tabulated", 0.0, coordinates, values)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        a = self.parameter
        if self.kind == "cosine":
            out = np.cos(a * t)
        elif self.kind == "exponential":
            out = np.exp(a * t)
        elif self.kind == "complex_exponential":
            out = np.exp(1j * a * t)
        elif self.kind == "unit_step":
            out = np.heaviside(t - a, 0.5)
        elif self.kind == "radial_cosine":
            out = np.cos(a * t) / np.sqrt(t)
        elif self.kind == "radial_exponential":
            out = np.exp(a * t) / np.sqrt(t)
        else:
            x = self.coordinates
            out = np.interp(t, x, self.values.real) + 1j * np.interp(t, x, self.values.imag)
        return np.asarray(out, dtype=complex)

    def breakpoints(self):
        """Points where the target is not smooth."""
        if self.kind == "unit_step":
            return (self.parameter,)
        if self.kind == "tabulated" and self.coordinates.size <= 64:
            return tuple(self.coordinates)
        return ()

    def max_frequency(self):
        if self.kind in ("unit_step", "tabulated"):
            return 1.0
        return max(1.0, abs(self.parameter))

    def check_coverage(self, a, b):
        if self.kind == "tabulated":
            x = self.coordinates
            if x[0] > a or x[-1] < b:
                raise CoverageError(
                    f"samples span [{x[0]}, {x[-1]}], interval is [{a}, {b}]"
                )


@dataclass(frozen=True)
class SolveDiagnostics:
    condition: float
    rank: int
    singular_values: np.ndarray


@dataclass(frozen=True)
class FitResult:
    """Solved coefficients and fit diagnostics.

    ``coefficients`` are ``gamma_n`` for the line geometry, ``C_n`` for the
    periodic one and ``a_2n`` for the radial one. ``frequencies`` is only
    set for the periodic geometry.
    """

    coefficients: np.ndarray
    geometry: str
    residual_l2: float
    gram_condition: float
    svd_rank: int
    interval: tuple[float, float]
    frequencies: np.ndarray | None = None

    def __post_init__(self):
        if self.geometry not in _GEOMETRIES:
            raise ValueError(f"unknown geometry {self.geometry!r}")

    def to_dict(self):
        d = {
            "geometry": self.geometry,
            "interval": list(self.interval),
            "coefficients": [[c.real, c.imag] for c in self.coefficients],
            "residual_l2": self.residual_l2,
            "gram_condition": self.gram_condition,
            "svd_rank": self.svd_rank,
        }
        if self.frequencies is not None:
            d["frequencies"] = list(self.frequencies)
        return d

    @classmethod
    def from_dict(cls, d):
        freqs = d.get("frequencies")
        return cls(
            coefficients=np.array([complex(re, im) for re, im in d["coefficients"]]),
            geometry=d["geometry"],
            residual_l2=float(d["residual_l2"]),
            gram_condition=float(d["gram_condition"]),
            svd_rank=int(d["svd_rank"]),
            interval=tuple(d["interval"]),
            frequencies=None if freqs is None else np.array(freqs, dtype=float),
        )


def _check_interval(a, b):
    if not (np.isfinite(a) and np.isfinite(b) and b > a):
        raise InvalidIntervalError(f"invalid interval [{a}, {b}]")


def _rule(a, b, max_index, target=None, order=None):
    freq = 1.0 if target is None else target.max_frequency()
    brk = () if target is None else target.breakpoints()
    return basis.interval_rule(a, b, max_index, freq, order=order, breakpoints=brk)


# ---------------------------------------------------------------------------
# Solver


def solve_pseudo_inverse(A, B, rcond=DEFAULT_RCOND):
    """Minimum-norm least-squares solution of ``A x = B`` via SVD.

    Singular values below ``rcond * max(s)`` are discarded.

    Returns
    -------
    x : ndarray
    diagnostics : SolveDiagnostics
        condition number over the kept singular values and the kept rank
    """
    A = np.asarray(A)
    B = np.asarray(B)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("A must be square")
    if not 0 < rcond < 1:
        raise ValueError("rcond must lie in (0, 1)")
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(B))):
        raise NumericalError("non-finite entries in the linear system")
    u, s, vh = np.linalg.svd(A)
    if s.size == 0 or s[0] == 0:
        return np.zeros(A.shape[1], dtype=np.result_type(A, B, complex)), SolveDiagnostics(
            math.inf, 0, s
        )
    keep = s > rcond * s[0]
    rank = int(np.count_nonzero(keep))
    proj = (u[:, keep].conj().T @ B) / s[keep]
    x = vh[keep].conj().T @ proj
    return x, SolveDiagnostics(float(s[0] / s[keep][-1]), rank, s)


def _factored_gram_solve(design, weights, values, rcond):
    """Apply the pseudo-inverse of a quadrature Gram matrix to its load.

    With ``W = diag(weights)`` the Gram matrix is ``A = P^H W P`` and the
    load is ``P^H W f``. ``A`` is first equilibrated by its diagonal, then
    its singular values are taken as the squares of those of the factor
    ``R`` in ``sqrt(W) P = Q R``. This is the same pseudo-inverse solve as
    :func:`solve_pseudo_inverse` on the explicit matrix but keeps full
    precision when ``A`` is nearly singular, which short fit intervals make
    it. Singular values of the equilibrated ``A`` below ``rcond`` times
    the largest are discarded.
    """
    sw = np.sqrt(weights)
    P = sw[:, None] * design
    scale = np.linalg.norm(P, axis=0)
    scale[scale == 0] = 1.0
    if not (np.all(np.isfinite(P)) and np.all(np.isfinite(values))):
        raise NumericalError("non-finite entries in the linear system")
    q, r = np.linalg.qr(P / scale)
    u, s, vh = np.linalg.svd(r)
    s2 = s**2
    keep = s2 > rcond * s2[0]
    rank = int(np.count_nonzero(keep))
    proj = (u[:, keep].conj().T @ (q.conj().T @ (sw * values))) / s[keep]
    x = (vh[keep].conj().T @ proj) / scale
    return x, SolveDiagnostics(float(s2[0] / s2[keep][-1]), rank, s2)


# ---------------------------------------------------------------------------
# Spherical Bessel basis on the line


def gram_bessel(t_i, t_f, M, order=None):
    """Overlap matrix of ``j_0 .. j_{M-1}`` on ``[t_i, t_f]``."""
    _check_interval(t_i, t_f)
    x, w = _rule(t_i, t_f, M - 1, order=order)
    J = basis.spherical_bessel_table(M - 1, x)
    A = (J * w) @ J.T
    return 0.5 * (A + A.T)


def load_vector(target, t_i, t_f, M, order=None):
    """Projections ``sqrt(pi/2) * int f j_n dt`` over ``[t_i, t_f]``."""
    _check_interval(t_i, t_f)
    target.check_coverage(t_i, t_f)
    x, w = _rule(t_i, t_f, M - 1, target, order)
    J = basis.spherical_bessel_table(M - 1, x)
    return _SQRT_PI_OVER_2 * (J * w) @ target(x)


def _line_values(coefficients, t):
    J = basis.spherical_bessel_table(len(coefficients) - 1, t)
    return math.sqrt(2 / math.pi) * np.tensordot(coefficients, J, axes=1)


def approximate_line(target, t_i, t_f, M, rcond=DEFAULT_RCOND, order=None):
    """Fit ``sqrt(2/pi) sum gamma_n j_n(t)`` to ``target`` on ``[t_i, t_f]``.

    The Gram matrix and load vector are those of :func:`gram_bessel` and
    :func:`load_vector`; see :func:`_factored_gram_solve` for how the
    pseudo-inverse is applied.
    """
    _check_interval(t_i, t_f)
    target.check_coverage(t_i, t_f)
    x, w = _rule(t_i, t_f, M - 1, target, order)
    design = math.sqrt(2 / math.pi) * basis.spherical_bessel_table(M - 1, x).T
    gamma, diag = _factored_gram_solve(design, w, target(x), rcond)
    eps = error_functional("line", gamma, target, t_i, t_f, order=order)
    return FitResult(gamma, "line", math.sqrt(eps), diag.condition, diag.rank, (t_i, t_f))


# ---------------------------------------------------------------------------
# Periodic exponential basis


def periodic_frequencies(N, spacing=None):
    """``w_n = (1 - 2n/D) 2 pi`` for n = 0..N with ``D = spacing or N``."""
    if N < 1:
        raise DomainError("N must be at least 1")
    D = N if spacing is None else spacing
    n = np.arange(N + 1)
    return (1 - 2 * n / D) * 2 * np.pi


def periodic_gram(t_1, t_2, N, spacing=None):
    """Closed-form overlap matrix of the periodic exponentials."""
    _check_interval(t_1, t_2)
    D = N if spacing is None else spacing
    dt = t_2 - t_1
    mid = 0.5 * (t_1 + t_2)
    n = np.arange(N + 1)
    diff = n[:, None] - n[None, :]
    arg = 2 * np.pi * diff * dt / D
    phase = np.exp(1j * 4 * np.pi * diff / D * mid)
    return dt * phase * np.sinc(arg / np.pi)


def periodic_load(target, t_1, t_2, N, spacing=None, order=None):
    """Projections ``int Phi(t) exp(-i w_n t) dt``."""
    _check_interval(t_1, t_2)
    target.check_coverage(t_1, t_2)
    omega = periodic_frequencies(N, spacing)
    freq = max(np.max(np.abs(omega)), target.max_frequency())
    brk = target.breakpoints()
    x, w = basis.interval_rule(t_1, t_2, N, freq, order=order, breakpoints=brk)
    return np.exp(-1j * np.outer(omega, x)) @ (w * target(x))


def approximate_periodic(target, t_1, t_2, N, spacing=None, rcond=DEFAULT_RCOND, order=None):
    """Fit ``sum_{n=0}^{N} C_n exp(i w_n t)`` to ``target`` on ``[t_1, t_2]``."""
    alpha = periodic_gram(t_1, t_2, N, spacing)
    b = periodic_load(target, t_1, t_2, N, spacing, order)
    C, diag = solve_pseudo_inverse(alpha, b, rcond)
    omega = periodic_frequencies(N, spacing)
    eps = error_functional("periodic", C, target, t_1, t_2, frequencies=omega, order=order)
    return FitResult(
        C, "periodic", math.sqrt(eps), diag.condition, diag.rank, (t_1, t_2), omega
    )


# ---------------------------------------------------------------------------
# Radial basis


def radial_basis(M, rho):
    """``(-1)^n J_{2n+1}(rho) / rho`` for n < M; the limit is used at 0."""
    rho = np.asarray(rho, dtype=float)
    n = np.arange(M).reshape((M,) + (1,) * rho.ndim)
    J = special.jv(2 * n + 1, rho)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (-1.0) ** n * J / rho
    zero = rho == 0
    if np.any(zero):
        out = np.where(zero, np.where(n == 0, 0.5, 0.0), out)
    return out


def radial_gram(rho_i, rho_f, M, order=None):
    """Overlap matrix ``int phi_n phi_m rho d rho`` of the radial basis."""
    _check_interval(rho_i, rho_f)
    if rho_i < 0:
        raise InvalidIntervalError("radial interval must start at rho >= 0")
    x, w = _rule(rho_i, rho_f, 2 * M - 1, order=order)
    phi = radial_basis(M, x)
    A = (phi * (w * x)) @ phi.T
    return 0.5 * (A + A.T)


def radial_load(target, rho_i, rho_f, M, order=None):
    """Projections ``int H(rho) (-1)^n J_{2n+1}(rho) d rho``."""
    _check_interval(rho_i, rho_f)
    target.check_coverage(rho_i, rho_f)
    x, w = _rule(rho_i, rho_f, 2 * M - 1, target, order)
    phi = radial_basis(M, x)
    return (phi * (w * x)) @ target(x)


def approximate_radial(target, rho_i, rho_f, M, rcond=DEFAULT_RCOND, order=None):
    """Fit ``sum (-1)^n a_2n J_{2n+1}(rho)/rho`` on ``[rho_i, rho_f]``.

    Solves ``radial_gram @ a = radial_load`` with the pseudo-inverse, via
    the factor of the Gram matrix as in :func:`approximate_line`.
    """
    _check_interval(rho_i, rho_f)
    if rho_i < 0:
        raise InvalidIntervalError("radial interval must start at rho >= 0")
    target.check_coverage(rho_i, rho_f)
    x, w = _rule(rho_i, rho_f, 2 * M - 1, target, order)
    a, diag = _factored_gram_solve(radial_basis(M, x).T, w * x, target(x), rcond)
    eps = error_functional("radial", a, target, rho_i, rho_f, order=order)
    return FitResult(a, "radial", math.sqrt(eps), diag.condition, diag.rank, (rho_i, rho_f))


# ---------------------------------------------------------------------------
# Shared


def reconstruct(geometry, coefficients, x, frequencies=None):
    """Evaluate the approximant for a geometry and coefficient vector."""
    coefficients = np.asarray(coefficients, dtype=complex)
    x = np.asarray(x, dtype=float)
    if geometry == "line":
        return _line_values(coefficients, x)
    if geometry == "periodic":
        if frequencies is None:
            raise ValueError("periodic reconstruction needs the frequencies")
        return np.tensordot(coefficients, np.exp(1j * np.multiply.outer(frequencies, x)), axes=1)
    if geometry == "radial":
        return np.tensordot(coefficients, radial_basis(coefficients.size, x), axes=1)
    raise ValueError(f"unknown geometry {geometry!r}")


def error_functional(geometry, coefficients, target, a, b, frequencies=None, order=None):
    """Quadrature value of the squared fit error over ``[a, b]``."""
    n = len(coefficients)
    if geometry == "periodic":
        freq = max(np.max(np.abs(frequencies)), target.max_frequency())
        x, w = basis.interval_rule(a, b, n, freq, order=order, breakpoints=target.breakpoints())
    else:
        x, w = _rule(a, b, 2 * n if geometry == "radial" else n, target, order)
    diff = target(x) - reconstruct(geometry, coefficients, x, frequencies)
    weight = w * x if geometry == "radial" else w
    return float(np.sum(weight * np.abs(diff) ** 2))


def fit_values(fit, x):
    """Evaluate a fitted approximant at ``x``."""
    return reconstruct(fit.geometry, fit.coefficients, x, fit.frequencies)

