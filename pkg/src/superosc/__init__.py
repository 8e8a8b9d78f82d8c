"""Superoscillating and supergrowing bandlimited functions.

Bandlimited functions are represented by the Legendre coefficients of their
spectrum on the unit band (:mod:`superosc.spectrum`) or by spherical Bessel
series about any origin (:mod:`superosc.shift`). :mod:`superosc.approx` fits
targets on finite intervals, :mod:`superosc.energy` bounds the energy cost of
fast local rates and :mod:`superosc.cylindrical` covers radial fields.
"""
from . import approx, basis, cylindrical, energy, shift, spectrum
from .approx import (
    FitResult,
    TargetFunction,
    approximate_line,
    approximate_periodic,
    approximate_radial,
    solve_pseudo_inverse,
)
from .cylindrical import GeneralizedRate, RadialSpectrum
from .energy import EnergyReport, energy_report
from .errors import (
    CoverageError,
    DegenerateSpectrumError,
    DomainError,
    InvalidBandError,
    InvalidIntervalError,
    NodeError,
    NumericalError,
    SuperoscError,
)
from .shift import BesselSeries, shift_coefficients, unshift_coefficients
from .spectrum import (
    LegendreSpectrum,
    cumulants,
    evaluate,
    local_rate,
    prescribe_rate,
    superoscillate_everywhere,
)

__version__ = "0.1.0"

__all__ = [
    "approx",
    "basis",
    "cylindrical",
    "energy",
    "shift",
    "spectrum",
    "BesselSeries",
    "CoverageError",
    "DegenerateSpectrumError",
    "DomainError",
    "EnergyReport",
    "FitResult",
    "GeneralizedRate",
    "InvalidBandError",
    "InvalidIntervalError",
    "LegendreSpectrum",
    "NodeError",
    "NumericalError",
    "RadialSpectrum",
    "SuperoscError",
    "TargetFunction",
    "approximate_line",
    "approximate_periodic",
    "approximate_radial",
    "cumulants",
    "energy_report",
    "evaluate",
    "local_rate",
    "prescribe_rate",
    "shift_coefficients",
    "solve_pseudo_inverse",
    "superoscillate_everywhere",
    "unshift_coefficients",
]
