"""
Expansions about other points
=============================

The spherical Bessel series of g can be re-expanded about any t'. The
leading two coefficients there give g(t') and g'(t'), so the local rate
can be read off anywhere. Integrating |g|^2 in the same frames gives the
energy to the left of a point and the bound on the energy of a
superoscillating stretch.
"""
import math

import numpy as np

from superosc import basis, energy, shift, spectrum
from superosc.spectrum import LegendreSpectrum

rng = np.random.default_rng(7)
s = LegendreSpectrum(rng.normal(size=6) + 1j * rng.normal(size=6))
series = shift.series_from_spectrum(s)

for tp in (-1.0, 0.5, 2.0):
    moved = shift.shift_coefficients(series, tp)
    same = abs(shift.evaluate_series(moved, 0.3) - spectrum.evaluate(s, 0.3))
    print(f"t' = {tp:4.1f}: rate {shift.local_rate_at(moved):.5f}, |g(0.3) mismatch| {same:.1e}")

# frames obey a recurrence in t'; the residual is at finite-difference level
print("recurrence residual:", shift.check_recurrence(lambda tp: shift.shift_coefficients(series, tp), 0.9))

# the exact correlation tables behind the frame change
print("I_{2,3}(t) / pi =", shift.correlation_combination(2, 3))
print("I_{2,3}(0.7) =", shift.correlation(2, 3, 0.7))

# cumulative energy: E(T) from -inf to T
E = energy.total_energy(s)
for T in (-2.0, 0.0, 2.0):
    print(f"E({T:+.0f}) / E = {energy.cumulative_energy(s, T) / E:.4f}")

# the bound on a superoscillating stretch
fast = spectrum.prescribe_rate(10j)
rep = energy.energy_report(fast, -0.01, 0.01)
print(f"r = {rep.r_min:.3f}, fraction {rep.fraction:.2e} <= bound {rep.bound:.2e}: {rep.holds}")

# the sinc frame: gamma_n = (2n+1) (-1)^n j_n(t') rebuilds j_0
n = np.arange(61)
sinc = shift.BesselSeries(0.8, (2 * n + 1) * (-1.0) ** n * basis.spherical_bessel_table(60, 0.8))
print("sinc frame error:", abs(shift.evaluate_series(sinc, 2.0) - math.sqrt(2 / math.pi) * basis.spherical_bessel(0, 2.0)))
